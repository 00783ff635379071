"""Skew-adjoint relations with effort constraints and their mixed
boundary balance."""

from fractions import Fraction

import pytest

from boundary_forge import (
    EmptyKernelError,
    NotSkewAdjointError,
    Poly,
    PolyMatrix,
    RatMatrix,
    TwoVarPolyMatrix,
    constrained_boundary,
    constrained_sample,
    constrained_balance_form,
    validate_skew_adjoint,
)

from instances import CONSTRAINED_INSTANCES, pm

s = Poly.variable()


def test_validate_skew_adjoint():
    ok, witness = validate_skew_adjoint(pm([[0, s], [s, 0]]))
    assert ok and witness is None
    bad, witness = validate_skew_adjoint(pm([[1]]))
    assert not bad
    assert witness


def test_rejects_non_skew_adjoint_operator():
    with pytest.raises(NotSkewAdjointError):
        constrained_boundary(pm([[1]]), pm([[s]]))


def test_rejects_constraint_width_mismatch():
    with pytest.raises(ValueError):
        constrained_boundary(pm([[0, s], [s, 0]]), pm([[s]]))


def test_derivative_pair_frozen():
    """J = G = d/dz: both boundary operators are scalar constants."""
    structure = constrained_boundary(pm([[s]]), pm([[s]]))
    assert structure.Z_J == PolyMatrix.identity(1)
    assert structure.Sigma_J == RatMatrix.from_rows([[1]])
    assert structure.Z_G == pm([[-1]])
    assert structure.V_G == pm([[1]])
    assert structure.Pi_G == RatMatrix.identity(1)
    assert structure.n_j == 1
    assert structure.n_g == 1
    assert structure.constraint_rows == 1


def test_constraint_quotient_reconstructs():
    for inst in CONSTRAINED_INSTANCES:
        structure = constrained_boundary(inst["J"], inst["G"])
        rebuilt = TwoVarPolyMatrix.outer(structure.Z_G, structure.V_G)
        assert rebuilt == structure.xi, inst["label"]


def test_zero_constraint_rows():
    j = pm([[0, s], [s, 0]])
    g = PolyMatrix.zero(0, 2)
    structure = constrained_boundary(j, g)
    assert structure.constraint_rows == 0
    assert structure.n_g == 0
    sample = constrained_sample(structure, degree=3, seed=5)
    assert len(sample.multiplier) == 0
    # without constraints the balance is the plain skew-adjoint one
    residual = constrained_balance_form(structure, sample,
                          constrained_sample(structure, 3, 6),
                          (Fraction(0), Fraction(1)))
    assert residual == 0


def test_sample_satisfies_relations_exactly():
    for inst in CONSTRAINED_INSTANCES:
        structure = constrained_boundary(inst["J"], inst["G"])
        for seed in (1, 2, 3):
            sample = constrained_sample(structure, degree=4, seed=seed)
            constraint = inst["G"].apply(sample.effort)
            assert all(p.is_zero for p in constraint), inst["label"]
            lhs = inst["J"].apply(sample.effort)
            lift = inst["G"].transpose().para().apply(sample.multiplier)
            assert tuple(a + b for a, b in zip(lhs, lift)) == sample.flow


def test_mixed_balance_vanishes():
    interval = (Fraction(0), Fraction(1))
    for inst in CONSTRAINED_INSTANCES:
        structure = constrained_boundary(inst["J"], inst["G"])
        for seed in range(6):
            s1 = constrained_sample(structure, degree=4, seed=2 * seed)
            s2 = constrained_sample(structure, degree=4, seed=2 * seed + 1)
            assert constrained_balance_form(structure, s1, s2, interval) == 0, inst["label"]


def test_mixed_balance_vanishes_on_even_degree_operator():
    # degree two entries distinguish the two possible operator-side
    # orientations; only the implemented one balances
    structure = constrained_boundary(pm([[0, s ** 2], [-s ** 2, 0]]),
                                     pm([[1, 0]]))
    for seed in range(8):
        s1 = constrained_sample(structure, degree=5, seed=3 * seed)
        s2 = constrained_sample(structure, degree=5, seed=3 * seed + 1)
        assert constrained_balance_form(structure, s1, s2,
                          (Fraction(-1, 2), Fraction(2))) == 0


def test_empty_kernel_flag_and_error():
    # G = identity forces e = 0 on polynomials
    structure = constrained_boundary(pm([[s]]), pm([[1]]))
    sample = constrained_sample(structure, degree=3, seed=1)
    assert sample.kernel_empty
    assert all(p.is_zero for p in sample.effort)
    with pytest.raises(EmptyKernelError):
        constrained_sample(structure, degree=3, seed=1,
                           require_nonzero_e=True)


def test_sample_reproducibility():
    structure = constrained_boundary(pm([[s ** 3]]), pm([[s ** 2]]))
    a = constrained_sample(structure, degree=4, seed=42)
    b = constrained_sample(structure, degree=4, seed=42)
    assert a.effort == b.effort
    assert a.multiplier == b.multiplier
    assert a.flow == b.flow
    c = constrained_sample(structure, degree=4, seed=43)
    assert (a.effort, a.multiplier) != (c.effort, c.multiplier)


def test_nonzero_effort_when_kernel_allows():
    structure = constrained_boundary(pm([[s ** 3]]), pm([[s ** 2]]))
    for seed in range(10):
        sample = constrained_sample(structure, degree=4, seed=seed,
                                    require_nonzero_e=True)
        assert any(not p.is_zero for p in sample.effort)


def test_describe_mentions_port_counts():
    structure = constrained_boundary(pm([[s]]), pm([[s]]))
    text = structure.describe()
    assert "n_j=1" in text
    assert "n_g=1" in text
