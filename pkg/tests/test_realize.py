"""State realization by exact coefficient matching, with the structure
identity checks."""

import dataclasses
import random
from fractions import Fraction

import pytest

from boundary_forge import (
    NoneFoundError,
    NonUniqueSolutionError,
    Poly,
    PolyMatrix,
    RatMatrix,
    UnsolvableError,
    boundary_structure,
    lagrange_boundary,
    partition_search,
    realize,
    skew_adjoint_structure,
    validate_dirac_pair,
    validate_lagrange_pair,
    verify_realization_structure,
)

from instances import pm

s = Poly.variable()
z = Poly.variable()


def apply_const(mat: RatMatrix, polys):
    return tuple(
        sum((c * p for c, p in zip(row, polys)), Poly.zero())
        for row in mat.entries)


def trajectory_consistent(r, latent):
    """Both defining equations, evaluated along one latent trajectory."""
    b = r.Z.apply(latent)
    u = r.U.apply(latent)
    y = r.Y.apply(latent)
    db = tuple(p.deriv() for p in b)
    state_rhs = tuple(x + y_ for x, y_ in zip(apply_const(r.A, b),
                                              apply_const(r.B, u)))
    out_rhs = tuple(x + y_ for x, y_ in zip(apply_const(r.C, b),
                                            apply_const(r.D, u)))
    return db == state_rhs and y == out_rhs


def random_latent_polys(rng, m, degree):
    return tuple(Poly([Fraction(rng.randint(-4, 4))
                       for _ in range(degree + 1)]) for _ in range(m))


def test_worked_example_realization_frozen():
    structure = skew_adjoint_structure(pm([[0, s], [s, 0]]))
    r = realize(structure)
    assert r.A == RatMatrix.zero(2, 2)
    assert r.B == RatMatrix.from_rows([[0, 1], [1, 0]])
    assert r.C == RatMatrix.identity(2)
    assert r.D == RatMatrix.zero(2, 2)
    assert r.Sigma == RatMatrix.from_rows([[0, 1], [1, 0]])
    assert r.swap == ()
    assert r.kind == "dirac"
    assert r.n == 2 and r.m == 2


def test_worked_example_identities():
    structure = skew_adjoint_structure(pm([[0, s], [s, 0]]))
    report = verify_realization_structure(realize(structure))
    assert report.all_pass
    names = [c.name for c in report.checks]
    assert any(n.startswith("pairing_invariance") for n in names)
    assert any(n.startswith("output_adjointness") for n in names)
    assert any(n.startswith("feedthrough_skew") for n in names)
    assert all(c.residual == 0 for c in report.checks)


def test_scalar_derivative_needs_swap():
    structure = boundary_structure(validate_dirac_pair(pm([[s]]), pm([[1]])))
    with pytest.raises(UnsolvableError):
        realize(structure)
    r = realize(structure, swap=(1,))
    assert r.A == RatMatrix.from_rows([[0]])
    assert r.B == RatMatrix.from_rows([[-1]])
    assert r.C == RatMatrix.from_rows([[1]])
    assert r.D == RatMatrix.from_rows([[0]])
    assert r.Sigma == RatMatrix.from_rows([[-1]])
    assert verify_realization_structure(r).all_pass


def test_partition_search_orders_by_size_then_lex():
    direct = skew_adjoint_structure(pm([[0, s], [s, 0]]))
    assert partition_search(direct) == ()
    swapped = boundary_structure(validate_dirac_pair(pm([[s]]), pm([[1]])))
    assert partition_search(swapped) == (1,)


def test_partition_search_exhausts_and_reports():
    boundary = lagrange_boundary(validate_lagrange_pair(
        pm([[1, 0], [0, s ** 2]]), pm([[s ** 2, 0], [0, 1]])))
    with pytest.raises(NoneFoundError) as err:
        partition_search(boundary)
    tried = [subset for subset, _ in err.value.witnesses]
    assert tried == [(), (1,), (2,), (1, 2)]


def test_static_pair_gives_empty_state():
    structure = boundary_structure(validate_dirac_pair(pm([[0]]), pm([[1]])))
    r = realize(structure)
    assert r.n == 0
    assert r.A.shape == (0, 0)
    assert r.B.shape == (0, 1)
    assert r.D == RatMatrix.from_rows([[0]])
    assert verify_realization_structure(r).all_pass
    assert partition_search(structure) == ()


def test_degenerate_port_row_is_nonunique():
    structure = skew_adjoint_structure(pm([[0, 0], [0, s]]))
    with pytest.raises(NonUniqueSolutionError) as err:
        realize(structure)
    assert err.value.dof == 1
    r = realize(structure, swap=(1,))
    assert r.A == RatMatrix.from_rows([[0]])
    assert r.B == RatMatrix.from_rows([[0, 1]])
    assert verify_realization_structure(r).all_pass


def test_worked_example_other_partitions_unsolvable():
    structure = skew_adjoint_structure(pm([[0, s], [s, 0]]))
    for sw in [(1,), (2,), (1, 2)]:
        with pytest.raises(UnsolvableError):
            realize(structure, swap=sw)


def test_swap_validation():
    structure = skew_adjoint_structure(pm([[0, s], [s, 0]]))
    with pytest.raises(ValueError):
        realize(structure, swap=(0,))
    with pytest.raises(ValueError):
        realize(structure, swap=(3,))
    # duplicates and order are normalized
    with pytest.raises(UnsolvableError):
        realize(structure, swap=(2, 1, 1))


def test_storage_realization_direct():
    boundary = lagrange_boundary(validate_lagrange_pair(pm([[1]]),
                                                        pm([[s ** 2]])))
    r = realize(boundary)
    assert r.kind == "lagrange"
    assert r.n == 2
    assert r.D == RatMatrix.from_rows([[0]])
    assert r.Sigma == RatMatrix.from_rows([[0, -1], [1, 0]])
    report = verify_realization_structure(r)
    assert report.all_pass
    names = [c.name for c in report.checks]
    assert any(n.startswith("feedthrough_symmetric") for n in names)
    assert any(n.startswith("aggregate_symmetric") for n in names)


def test_storage_realization_full_swap():
    boundary = lagrange_boundary(validate_lagrange_pair(pm([[s ** 2]]),
                                                        pm([[1]])))
    with pytest.raises(UnsolvableError):
        realize(boundary)
    r = realize(boundary, swap=(1,))
    assert r.A == RatMatrix.from_rows([[0, 1], [0, 0]])
    assert r.B == RatMatrix.from_rows([[0], [-1]])
    assert r.C == RatMatrix.from_rows([[1, 0]])
    assert r.D == RatMatrix.from_rows([[0]])
    # exchanged roles flip the middle matrix sign
    assert r.Sigma == RatMatrix.from_rows([[0, 1], [-1, 0]])
    assert verify_realization_structure(r).all_pass


def test_partial_swap_of_symplectic_pairing_unsolvable():
    boundary = lagrange_boundary(validate_lagrange_pair(
        pm([[1, 0], [0, s ** 2]]), pm([[s ** 2, 0], [0, 1]])))
    with pytest.raises(UnsolvableError) as err:
        realize(boundary, swap=(2,))
    assert "middle" in str(err.value)


def test_static_storage_feedthrough_only():
    boundary = lagrange_boundary(validate_lagrange_pair(
        PolyMatrix.identity(2), PolyMatrix.identity(2)))
    r = realize(boundary)
    assert r.n == 0
    assert r.D == -RatMatrix.identity(2)
    assert verify_realization_structure(r).all_pass


def test_trajectory_consistency_dirac():
    rng = random.Random(41)
    structure = skew_adjoint_structure(pm([[0, s], [s, 0]]))
    r = realize(structure)
    for _ in range(50):
        latent = random_latent_polys(rng, 2, rng.choice([0, 2, 5]))
        assert trajectory_consistent(r, latent)


def test_trajectory_consistency_lagrange():
    rng = random.Random(43)
    boundary = lagrange_boundary(validate_lagrange_pair(pm([[1]]),
                                                        pm([[s ** 2]])))
    r = realize(boundary)
    for _ in range(50):
        latent = random_latent_polys(rng, 1, rng.choice([1, 3, 6]))
        assert trajectory_consistent(r, latent)


def test_tampered_feedthrough_detected():
    structure = skew_adjoint_structure(pm([[0, s], [s, 0]]))
    r = realize(structure)
    tampered = dataclasses.replace(
        r, D=RatMatrix.from_rows([[1, 0], [0, 0]]))
    report = verify_realization_structure(tampered)
    assert not report.all_pass
    failing = [c for c in report.checks if not c.passed]
    assert any(c.name.startswith("feedthrough_skew") for c in failing)


def test_tampered_output_map_detected():
    structure = skew_adjoint_structure(pm([[0, s], [s, 0]]))
    r = realize(structure)
    tampered = dataclasses.replace(r, C=2 * r.C)
    report = verify_realization_structure(tampered)
    assert any(c.name.startswith("output_adjointness") and not c.passed
               for c in report.checks)


def test_describe():
    structure = skew_adjoint_structure(pm([[0, s], [s, 0]]))
    text = realize(structure).describe()
    assert "n=2" in text and "m=2" in text
