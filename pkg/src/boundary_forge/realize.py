"""Finite-dimensional realizations of boundary maps.

The boundary vector b = Z(d/dz) l of a synthesized structure obeys a linear
relation in the spatial variable.  Writing U(s) and Y(s) for the input and
output rows of the image representation (flow rows in, effort rows out by
default; a swap set exchanges the roles port by port), the realization
(A, B, C, D) is defined by the exact polynomial identities

    s Z(s) = A Z(s) + B U(s),
    Y(s)   = C Z(s) + D U(s),

solved by coefficient matching over the rationals.  No rational transfer
matrix is ever formed; properness of the hidden transfer behavior shows up
as solvability of the two linear systems, and non-properness is repaired by
searching swap sets (:func:`partition_search`).

A unique solution automatically satisfies the structure identities

    A^T Sigma + Sigma A = 0,   B^T Sigma = C,
    D = -D^T (pairing middle symmetric) or D = D^T (middle skew),

with Sigma the symmetric pairing matrix in the first case and the skew
middle matrix in the second; :func:`verify_realization_structure` reports
the exact residuals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .algebra import (
    NEG_INF,
    InconsistentSystemError,
    Poly,
    PolyMatrix,
    RatMatrix,
    UnderdeterminedSystemError,
    solve_linear,
)
from .dirac import BoundaryStructure
from .lagrange import LagrangeBoundary

__all__ = [
    "UnsolvableError",
    "NonUniqueSolutionError",
    "NoneFoundError",
    "Realization",
    "IdentityCheck",
    "StructureIdentityReport",
    "realize",
    "partition_search",
    "verify_realization_structure",
]


class UnsolvableError(ValueError):
    """The coefficient-matching systems have no solution for this swap."""

    def __init__(self, message: str, witness: str = ""):
        super().__init__(message if not witness else f"{message}: {witness}")
        self.witness = witness


class NonUniqueSolutionError(ValueError):
    """The systems are solvable but not uniquely; surfaced, never resolved
    by an arbitrary pick."""

    def __init__(self, message: str, dof: int = 0):
        super().__init__(message)
        self.dof = dof


class NoneFoundError(ValueError):
    """No swap set realizes the structure; carries all per-subset witnesses."""

    def __init__(self, witnesses: tuple[tuple[tuple[int, ...], str], ...]):
        lines = "; ".join(f"swap {list(s)}: {w}" for s, w in witnesses)
        super().__init__(f"no input/output partition admits a realization ({lines})")
        self.witnesses = witnesses


@dataclass(frozen=True)
class Realization:
    """State realization of a boundary map with its structure data.

    `Sigma` is the constant middle matrix of the boundary pairing: the
    symmetric pairing matrix for a flow/effort structure, the skew middle
    matrix for a state/effort structure.  `swap` lists 1-based port indices
    whose input/output roles were exchanged.
    """

    A: RatMatrix
    B: RatMatrix
    C: RatMatrix
    D: RatMatrix
    Sigma: RatMatrix
    swap: tuple[int, ...]
    kind: str
    Z: PolyMatrix
    U: PolyMatrix
    Y: PolyMatrix

    @property
    def n(self) -> int:
        return self.A.rows

    @property
    def m(self) -> int:
        return self.U.rows

    def describe(self) -> str:
        return f"{self.kind} realization n={self.n} m={self.m} swap={list(self.swap)}"


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    residual: Fraction
    passed: bool

    def __str__(self):
        tag = "pass" if self.passed else "FAIL"
        return f"[{tag}] {self.name} (max residual {self.residual})"


@dataclass(frozen=True)
class StructureIdentityReport:
    kind: str
    checks: tuple[IdentityCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def __str__(self):
        return "\n".join(str(c) for c in self.checks)


def _io_rows(first: PolyMatrix, second: PolyMatrix,
             swap: tuple[int, ...]) -> tuple[PolyMatrix, PolyMatrix]:
    """Input/output matrices: row i comes from `first`/`second` unless the
    1-based index i is swapped."""
    m = first.rows
    swapped = set(swap)
    in_rows = []
    out_rows = []
    for i in range(m):
        if i + 1 in swapped:
            in_rows.append(second.entries[i])
            out_rows.append(first.entries[i])
        else:
            in_rows.append(first.entries[i])
            out_rows.append(second.entries[i])
    return PolyMatrix.from_rows(in_rows), PolyMatrix.from_rows(out_rows)


def _coeff_span(*mats: PolyMatrix) -> int:
    top = 0
    for mat in mats:
        d = mat.degree
        if d != NEG_INF:
            top = max(top, int(d))
    return top


def _validate_swap(swap, m: int) -> tuple[int, ...]:
    swap = tuple(sorted(set(int(i) for i in swap)))
    for i in swap:
        if not 1 <= i <= m:
            raise ValueError(f"swap index {i} outside 1..{m}")
    return swap


def realize(structure, swap=()) -> Realization:
    """Realize a boundary structure as (A, B, C, D) by exact coefficient
    matching, with the given set of role-swapped ports.

    Accepts the output of the flow/effort pipeline or the state/effort
    pipeline.  Raises :class:`UnsolvableError` or
    :class:`NonUniqueSolutionError` with witnesses; a returned realization
    has had all of its structure identities verified exactly.
    """
    if isinstance(structure, BoundaryStructure):
        kind = "dirac"
        z = structure.Z
        u, y = _io_rows(structure.rep.N_f, structure.rep.N_e,
                        _validate_swap(swap, structure.m))
        middles = [structure.Sigma]
    elif isinstance(structure, LagrangeBoundary):
        kind = "lagrange"
        z = structure.W
        u, y = _io_rows(structure.rep.N_x, structure.rep.N_e,
                        _validate_swap(swap, structure.m))
        p = structure.p
        if p == 0:
            middles = [RatMatrix.zero(0, 0)]
        else:
            upper = RatMatrix.hstack([RatMatrix.zero(p, p), RatMatrix.identity(p)])
            lower = RatMatrix.hstack([-RatMatrix.identity(p), RatMatrix.zero(p, p)])
            j_p = RatMatrix.vstack([upper, lower])
            # middle candidates: -J_p (direct roles) and +J_p (fully exchanged)
            middles = [-j_p, j_p]
    else:
        raise TypeError(f"cannot realize {type(structure).__name__}")

    swap = _validate_swap(swap, u.rows)
    n, m = z.rows, u.rows
    s = Poly.variable()
    sz = s * z
    stack = PolyMatrix.vstack([z, u])
    span = max(_coeff_span(stack, sz, y), 0)
    coeff_cols = RatMatrix.hstack([stack.coeff(k) for k in range(span + 1)])

    def match(rhs: PolyMatrix, label: str) -> RatMatrix:
        rhs_cols = RatMatrix.hstack([rhs.coeff(k) for k in range(span + 1)])
        try:
            solution = solve_linear(coeff_cols.transpose(), rhs_cols.transpose())
        except InconsistentSystemError as exc:
            raise UnsolvableError(
                f"coefficient matching for {label} has no solution "
                f"with swap {list(swap)}", witness=exc.witness) from exc
        except UnderdeterminedSystemError as exc:
            raise NonUniqueSolutionError(
                f"coefficient matching for {label} has {exc.dof} degrees of "
                f"freedom with swap {list(swap)}", dof=exc.dof) from exc
        return solution.transpose()

    if n == 0:
        a = RatMatrix.zero(0, 0)
        b = RatMatrix.zero(0, m)
    else:
        ab = match(sz, "the state equation")
        a = ab.submatrix(range(n), range(n))
        b = ab.submatrix(range(n), range(n, n + m))
    cd = match(y, "the output equation")
    c = cd.submatrix(range(m), range(n))
    d = cd.submatrix(range(m), range(n, n + m))

    # the defining identities must hold as exact polynomial identities
    a_pm, b_pm = PolyMatrix.from_const(a), PolyMatrix.from_const(b)
    c_pm, d_pm = PolyMatrix.from_const(c), PolyMatrix.from_const(d)
    if not ((a_pm * z + b_pm * u) - sz).is_zero():
        raise AssertionError("internal error: state identity fails after solve")
    if not ((c_pm * z + d_pm * u) - y).is_zero():
        raise AssertionError("internal error: output identity fails after solve")

    last_report = None
    for middle in middles:
        candidate = Realization(a, b, c, d, middle, swap, kind, z, u, y)
        report = verify_realization_structure(candidate)
        if report.all_pass:
            return candidate
        last_report = report
    if kind == "dirac":
        # unique coefficient matching forces these identities; reaching this
        # point means an upstream factorization bug
        raise AssertionError(
            f"internal error: structure identities fail for a unique "
            f"realization:\n{last_report}")
    raise UnsolvableError(
        f"no constant skew middle matrix validates the structure identities "
        f"with swap {list(swap)}; exchanging only part of a symplectic port "
        f"pairing has no realization in this form")


def partition_search(structure) -> tuple[int, ...]:
    """Smallest swap set (ties broken lexicographically) for which
    :func:`realize` succeeds with a unique solution.

    Exhaustive over all subsets of ports; desk-scale port counts keep this
    cheap.  Raises :class:`NoneFoundError` carrying every witness when no
    subset works, which would contradict the existence claim for these
    structures and is worth surfacing loudly.
    """
    if isinstance(structure, BoundaryStructure):
        m = structure.m
    elif isinstance(structure, LagrangeBoundary):
        m = structure.m
    else:
        raise TypeError(f"cannot realize {type(structure).__name__}")
    witnesses = []
    for size in range(m + 1):
        for subset in combinations(range(1, m + 1), size):
            try:
                realize(structure, swap=subset)
            except (UnsolvableError, NonUniqueSolutionError) as exc:
                witnesses.append((subset, str(exc)))
                continue
            return subset
    raise NoneFoundError(tuple(witnesses))


def verify_realization_structure(r: Realization) -> StructureIdentityReport:
    """Exact residuals of the port-Hamiltonian structure identities.

    Checks A^T Sigma + Sigma A = 0 and B^T Sigma = C always; the feedthrough
    must be skew (D + D^T = 0) when Sigma is symmetric and symmetric
    (D - D^T = 0) when Sigma is skew, and the aggregated operator
    A Sigma^{-1} must be skew respectively symmetric.  All arithmetic is
    rational; every residual reported is exact.
    """
    sym_middle = r.kind == "dirac"
    checks = []

    res_a = (r.A.transpose() * r.Sigma + r.Sigma * r.A).max_abs()
    checks.append(IdentityCheck("pairing_invariance (A^T Sigma + Sigma A)",
                                res_a, res_a == 0))
    res_b = (r.B.transpose() * r.Sigma - r.C).max_abs()
    checks.append(IdentityCheck("output_adjointness (B^T Sigma - C)",
                                res_b, res_b == 0))
    if sym_middle:
        res_d = (r.D + r.D.transpose()).max_abs()
        checks.append(IdentityCheck("feedthrough_skew (D + D^T)", res_d, res_d == 0))
    else:
        res_d = (r.D - r.D.transpose()).max_abs()
        checks.append(IdentityCheck("feedthrough_symmetric (D - D^T)",
                                    res_d, res_d == 0))
    if r.n > 0:
        j = r.A * r.Sigma.inverse()
        if sym_middle:
            res_j = (j + j.transpose()).max_abs()
            checks.append(IdentityCheck("aggregate_skew (A Sigma^-1 + transpose)",
                                        res_j, res_j == 0))
        else:
            res_j = (j - j.transpose()).max_abs()
            checks.append(IdentityCheck(
                "aggregate_symmetric (A Sigma^-1 - transpose)", res_j, res_j == 0))
    else:
        checks.append(IdentityCheck("aggregate (empty state)", Fraction(0), True))
    return StructureIdentityReport(r.kind, tuple(checks))
