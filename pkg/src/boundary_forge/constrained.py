"""Boundary structures for constrained port relations.

The relation couples flows f and efforts e through a formally skew-adjoint
operator J and a constraint operator G with a free multiplier vector lam:

    f = J(d/dz) e + G(-d/dz)^T lam,    G(d/dz) e = 0.

Two boundary pairings appear.  The operator part reuses the skew-adjoint
pipeline: Phi_J(zeta, eta) = J(zeta)^T + J(eta) divides by (zeta + eta)
into Pi_J = Z_J^T Sigma_J Z_J.  The constraint part pairs efforts with
multipliers through

    Xi(zeta, eta) = (G(-eta)^T - G(zeta)^T) / (zeta + eta),

factored as Xi = Z_G(zeta)^T V_G(eta) with identity middle matrix Pi_G, so
that exactly on constrained solutions

    d/dz [ b_G^T Pi_G c_G ] = e^T G(-d/dz)^T lam,
    b_G = Z_G(d/dz) e,  c_G = V_G(d/dz) lam.

Together these give the exact bilinear balance evaluated by
:func:`constrained_balance_form`, which vanishes identically on pairs of constrained
solutions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Poly, PolyMatrix, RatMatrix, polynomial_kernel_basis
from .dirac import BoundaryStructure, skew_adjoint_residual, skew_adjoint_structure
from .twovar import TwoVarPolyMatrix, div_zeta_plus_eta, factor_general

__all__ = [
    "NotSkewAdjointError",
    "EmptyKernelError",
    "ConstrainedStructure",
    "ConstrainedSample",
    "validate_skew_adjoint",
    "constrained_boundary",
    "constrained_sample",
    "constrained_balance_form",
]


class NotSkewAdjointError(ValueError):
    """The operator part must equal minus its formal adjoint."""

    def __init__(self, witness: str):
        super().__init__(f"operator is not formally skew-adjoint: {witness}")
        self.witness = witness


class EmptyKernelError(ValueError):
    """No nonzero constrained effort exists at the requested degree."""


def validate_skew_adjoint(J: PolyMatrix) -> tuple[bool, str | None]:
    """Check J(s) + J(-s)^T = 0; on failure the witness prints the residual."""
    residual = skew_adjoint_residual(J)
    if residual.is_zero():
        return True, None
    return False, f"J(s) + J(-s)^T = {residual}"


@dataclass(frozen=True)
class ConstrainedStructure:
    """Boundary data of a constrained relation: the operator-part pairing
    (Z_J, Sigma_J) and the constraint-part pairing (Z_G, V_G, Pi_G)."""

    J: PolyMatrix
    G: PolyMatrix
    j_structure: BoundaryStructure
    xi: TwoVarPolyMatrix
    Z_G: PolyMatrix
    V_G: PolyMatrix
    Pi_G: RatMatrix

    @property
    def m(self) -> int:
        return self.J.rows

    @property
    def constraint_rows(self) -> int:
        return self.G.rows

    @property
    def Z_J(self) -> PolyMatrix:
        return self.j_structure.Z

    @property
    def Sigma_J(self) -> RatMatrix:
        return self.j_structure.Sigma

    @property
    def n_j(self) -> int:
        return self.Z_J.rows

    @property
    def n_g(self) -> int:
        return self.Z_G.rows

    def describe(self) -> str:
        return (f"constrained m={self.m} constraints={self.constraint_rows} "
                f"n_j={self.n_j} n_g={self.n_g}")


def constrained_boundary(J: PolyMatrix, G: PolyMatrix) -> ConstrainedStructure:
    """Synthesize both boundary pairings for the relation (J, G).

    Raises :class:`NotSkewAdjointError` unless J equals minus its formal
    adjoint; G only needs matching width.
    """
    ok, witness = validate_skew_adjoint(J)
    if not ok:
        raise NotSkewAdjointError(witness)
    if G.cols != J.rows:
        raise ValueError(f"constraint operator width {G.cols} does not match "
                         f"effort dimension {J.rows}")
    j_structure = skew_adjoint_structure(J)
    g_adj = G.transpose().para()  # G(-s)^T, the formal adjoint acting on lam
    delta = (TwoVarPolyMatrix.from_eta(g_adj)
             - TwoVarPolyMatrix.from_zeta(G.transpose()))
    xi = div_zeta_plus_eta(delta)
    z_g, v_g = factor_general(xi)
    pi_g = RatMatrix.identity(z_g.rows)
    return ConstrainedStructure(J, G, j_structure, xi, z_g, v_g, pi_g)


@dataclass(frozen=True)
class ConstrainedSample:
    """One exact polynomial solution of the constrained relation."""

    effort: tuple[Poly, ...]
    multiplier: tuple[Poly, ...]
    flow: tuple[Poly, ...]
    kernel_empty: bool
    degree: int
    seed: int


def _random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def _random_poly(rng: random.Random, degree: int) -> Poly:
    return Poly([_random_fraction(rng) for _ in range(degree + 1)])


def constrained_sample(structure: ConstrainedStructure, degree: int, seed: int,
                       require_nonzero_e: bool = False) -> ConstrainedSample:
    """Draw a random exact solution with polynomial data of the given degree.

    The effort is a random rational combination of a basis of the kernel of
    G(d/dz) at that degree; the multiplier is a free random polynomial
    vector.  When the kernel is trivial the sample carries e = 0 and sets
    ``kernel_empty`` (or raises :class:`EmptyKernelError` when a nonzero
    effort was required).
    """
    rng = random.Random(seed)
    basis = polynomial_kernel_basis(structure.G, degree)
    m = structure.m
    if not basis:
        if require_nonzero_e:
            raise EmptyKernelError(
                f"G(d/dz) e = 0 has no nonzero polynomial solution of degree "
                f"<= {degree}")
        effort = tuple(Poly.zero() for _ in range(m))
        kernel_empty = True
    else:
        kernel_empty = False
        while True:
            weights = [_random_fraction(rng) for _ in basis]
            effort = tuple(
                sum((w * vec[j] for w, vec in zip(weights, basis)), Poly.zero())
                for j in range(m))
            if any(not c.is_zero for c in effort):
                break
    multiplier = tuple(_random_poly(rng, degree)
                       for _ in range(structure.constraint_rows))
    j_part = structure.J.apply(effort)
    g_part = structure.G.transpose().para().apply(multiplier)
    flow = tuple(a + b for a, b in zip(j_part, g_part))
    # defensive: the constraint must hold exactly
    for r in structure.G.apply(effort):
        if not r.is_zero:
            raise AssertionError("internal error: sampled effort violates constraint")
    return ConstrainedSample(effort, multiplier, flow, kernel_empty, degree, seed)


def constrained_balance_form(structure: ConstrainedStructure,
               sample1: ConstrainedSample, sample2: ConstrainedSample,
               interval: tuple) -> Fraction:
    """Exact residual of the constrained power balance over an interval.

    Returns

        int_a^b (e1^T f2 + e2^T f1) dz
          - [b_J1^T Sigma_J b_J2]_a^b
          - [b_G2^T Pi_G c_G1]_a^b  - [b_G1^T Pi_G c_G2]_a^b

    computed in rational arithmetic; zero for every pair of constrained
    solutions.
    """
    a, b = Fraction(interval[0]), Fraction(interval[1])

    def pairing(u, v) -> Poly:
        return sum((x * y for x, y in zip(u, v)), Poly.zero())

    integrand = (pairing(sample1.effort, sample2.flow)
                 + pairing(sample2.effort, sample1.flow))
    total = integrand.integral(a, b)

    b_j1 = structure.Z_J.apply(sample1.effort)
    b_j2 = structure.Z_J.apply(sample2.effort)
    sigma_bj2 = [sum((structure.Sigma_J.entries[i][j] * b_j2[j]
                      for j in range(len(b_j2))), Poly.zero())
                 for i in range(structure.Sigma_J.rows)]
    j_bracket = pairing(b_j1, sigma_bj2)

    b_g1 = structure.Z_G.apply(sample1.effort)
    b_g2 = structure.Z_G.apply(sample2.effort)
    c_g1 = structure.V_G.apply(sample1.multiplier)
    c_g2 = structure.V_G.apply(sample2.multiplier)
    g_bracket = pairing(b_g2, c_g1) + pairing(b_g1, c_g2)

    boundary = (j_bracket(b) - j_bracket(a)) + (g_bracket(b) - g_bracket(a))
    return total - boundary
