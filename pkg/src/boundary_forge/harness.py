"""Exact verification engine.

Every check here runs on random polynomial trajectories with rational
coefficients, so definite integrals are evaluated through antiderivatives
and all balance residuals are exact rationals.  A residual that should
vanish must come out as literal zero; no tolerances enter except for the
single floating-point power-split stage, whose deviation is reported
separately against its own tolerance.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Poly
from .constrained import ConstrainedStructure, constrained_sample, constrained_balance_form
from .dirac import (
    DEFAULT_SPLIT_TOLERANCE,
    BoundaryStructure,
    PowerSplit,
    UnbalancedSignatureError,
    canonical_power_split,
)
from .lagrange import LagrangeBoundary, storage_balance_form
from .twovar import TwoVarPolyMatrix, bdf_apply, mul_zeta_plus_eta

__all__ = [
    "Trajectory",
    "VerificationReport",
    "random_latent",
    "integrate_pairing",
    "check_dirac_form",
    "check_power_balance",
    "derivative_rule_check",
    "dirac_suite",
    "constrained_suite",
    "lagrange_suite",
    "DEFAULT_DEGREES",
    "DEFAULT_TRIALS",
]

DEFAULT_DEGREES = (0, 2, 6)
DEFAULT_TRIALS = 100


@dataclass(frozen=True)
class Trajectory:
    """Polynomial latent trajectory on a rational interval."""

    l: tuple[Poly, ...]
    alpha: Fraction
    beta: Fraction

    @property
    def dim(self) -> int:
        return len(self.l)


@dataclass(frozen=True)
class VerificationReport:
    """Aggregated outcome of one check over a number of trials.

    `residuals` are exact rationals and must all be zero; when a power
    split participates, `split_deviations` carries the float deviations to
    be compared against `split_tolerance`.
    """

    check: str
    instance: str
    trials: int
    residuals: tuple[Fraction, ...]
    elapsed: float
    split_deviations: tuple[float, ...] = ()
    split_tolerance: float | None = None

    def __post_init__(self):
        if len(self.residuals) != self.trials:
            raise ValueError("residual list length must equal the trial count")

    @property
    def all_zero(self) -> bool:
        return all(r == 0 for r in self.residuals)

    @property
    def all_pass(self) -> bool:
        if not self.all_zero:
            return False
        if self.split_tolerance is None:
            return True
        return all(d <= self.split_tolerance for d in self.split_deviations)

    def __str__(self):
        tag = "pass" if self.all_pass else "FAIL"
        extra = ""
        if self.split_deviations:
            extra = f", max split deviation {max(self.split_deviations):.3e}"
        return (f"[{tag}] {self.check} on {self.instance}: "
                f"{self.trials} trials{extra} ({self.elapsed:.3f}s)")


def _random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def _random_interval(rng: random.Random) -> tuple[Fraction, Fraction]:
    while True:
        a, b = _random_fraction(rng), _random_fraction(rng)
        if a != b:
            return (a, b) if a < b else (b, a)


def random_latent(seed, dim: int, degree: int) -> Trajectory:
    """Deterministic random trajectory: coefficients with numerators in
    [-9, 9] and denominators in [1, 9], plus a random rational interval."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    rng = random.Random(seed)
    l = tuple(Poly([_random_fraction(rng) for _ in range(degree + 1)])
              for _ in range(dim))
    alpha, beta = _random_interval(rng)
    return Trajectory(l, alpha, beta)


def _dot(u, v) -> Poly:
    return sum((x * y for x, y in zip(u, v)), Poly.zero())


def integrate_pairing(f1, e1, f2, e2, alpha, beta) -> Fraction:
    """Exact integral of the symmetric pairing e1^T f2 + e2^T f1."""
    integrand = _dot(e1, f2) + _dot(e2, f1)
    return integrand.integral(Fraction(alpha), Fraction(beta))


# per-trial residuals ---------------------------------------------------------


def _pairing_bracket(structure: BoundaryStructure, l1, l2) -> Poly:
    b1 = structure.boundary(l1)
    b2 = structure.boundary(l2)
    sigma_b2 = [_dot((Poly.const(c) for c in row), b2)
                for row in structure.Sigma.entries]
    return _dot(b1, sigma_b2)


def _dirac_form_residual(structure: BoundaryStructure, l1, l2, alpha, beta) -> Fraction:
    total = integrate_pairing(structure.flows(l1), structure.efforts(l1),
                              structure.flows(l2), structure.efforts(l2),
                              alpha, beta)
    bracket = _pairing_bracket(structure, l1, l2)
    return total - (bracket(beta) - bracket(alpha))


def _power_balance_residual(structure: BoundaryStructure, l, alpha, beta) -> Fraction:
    f, e = structure.flows(l), structure.efforts(l)
    total = _dot(e, f).integral(Fraction(alpha), Fraction(beta))
    bracket = _pairing_bracket(structure, l, l)
    return total - (bracket(beta) - bracket(alpha)) / 2


def _power_split_deviation(structure: BoundaryStructure, split: PowerSplit,
                           l, alpha, beta) -> float:
    """Relative disagreement between the exact interior power and the split
    boundary power difference.

    The split lives in floating point, so its roundoff grows with the size
    of the boundary values; dividing by the magnitude of the compared terms
    makes the tolerance meaningful across trajectory scales.
    """
    f, e = structure.flows(l), structure.efforts(l)
    total = _dot(e, f).integral(Fraction(alpha), Fraction(beta))
    b = structure.boundary(l)

    def boundary_power(point) -> float:
        f_delta, e_delta = split.apply([p(point) for p in b])
        return sum(x * y for x, y in zip(e_delta, f_delta))

    at_beta = boundary_power(beta)
    at_alpha = boundary_power(alpha)
    scale = max(1.0, abs(float(total)), abs(at_beta), abs(at_alpha))
    return abs(float(total) - (at_beta - at_alpha)) / scale


def check_dirac_form(structure: BoundaryStructure, l1, l2, alpha, beta
                     ) -> VerificationReport:
    """Residual of the full bilinear balance for one trajectory pair:
    interior pairing integral minus the boundary bracket difference."""
    start = time.perf_counter()
    residual = _dirac_form_residual(structure, l1, l2, alpha, beta)
    return VerificationReport("dirac_form", structure.describe(), 1,
                              (residual,), time.perf_counter() - start)


def check_power_balance(structure: BoundaryStructure, l, alpha, beta,
                        split_tolerance: float = DEFAULT_SPLIT_TOLERANCE
                        ) -> VerificationReport:
    """Residual of int e^T f = half the bracket difference of b^T Sigma b;
    when the signature is balanced the float split deviation is reported
    against the split tolerance as well."""
    start = time.perf_counter()
    residual = _power_balance_residual(structure, l, alpha, beta)
    deviations: tuple[float, ...] = ()
    tolerance = None
    try:
        split = canonical_power_split(structure.Sigma, split_tolerance)
    except UnbalancedSignatureError:
        split = None
    if split is not None:
        deviations = (_power_split_deviation(structure, split, l, alpha, beta),)
        tolerance = split_tolerance
    return VerificationReport("power_balance", structure.describe(), 1,
                              (residual,), time.perf_counter() - start,
                              deviations, tolerance)


def derivative_rule_check(phi: TwoVarPolyMatrix, v, w) -> VerificationReport:
    """Exact product-rule identity: differentiating the bilinear form of phi
    along trajectories equals the bilinear form of (zeta + eta) phi."""
    start = time.perf_counter()
    lhs = bdf_apply(phi, v, w).deriv()
    rhs = bdf_apply(mul_zeta_plus_eta(phi), v, w)
    diff = lhs - rhs
    residual = max((abs(c) for c in diff.coeffs), default=Fraction(0))
    return VerificationReport("derivative_rule", f"form {phi.p}x{phi.q}", 1,
                              (residual,), time.perf_counter() - start)


# suites -----------------------------------------------------------------------


def _trial_degrees(trials: int, degrees) -> list[int]:
    degrees = tuple(degrees)
    if not degrees:
        raise ValueError("need at least one degree")
    return [degrees[t % len(degrees)] for t in range(trials)]


def _sub_seed(seed: int, trial: int, salt: int) -> int:
    # arithmetic derivation keeps trials independent of each other while
    # staying reproducible across processes (no string hashing)
    return (int(seed) * 1_000_003 + trial) * 3 + salt


def dirac_suite(structure: BoundaryStructure, trials: int = DEFAULT_TRIALS,
                degrees=DEFAULT_DEGREES, seed: int = 0, interval=None,
                split_tolerance: float = DEFAULT_SPLIT_TOLERANCE
                ) -> tuple[VerificationReport, ...]:
    """Bilinear-balance and power-balance checks over random trajectories.

    Returns one aggregated report per check.  With a balanced signature the
    power-balance report also carries one split deviation per trial.
    """
    start = time.perf_counter()
    m = structure.rep.m
    form_residuals = []
    balance_residuals = []
    deviations = []
    try:
        split = canonical_power_split(structure.Sigma, split_tolerance)
    except UnbalancedSignatureError:
        split = None
    for t, degree in enumerate(_trial_degrees(trials, degrees)):
        t1 = random_latent(_sub_seed(seed, t, 0), m, degree)
        t2 = random_latent(_sub_seed(seed, t, 1), m, degree)
        a, b = (t1.alpha, t1.beta) if interval is None else \
            (Fraction(interval[0]), Fraction(interval[1]))
        form_residuals.append(_dirac_form_residual(structure, t1.l, t2.l, a, b))
        balance_residuals.append(_power_balance_residual(structure, t1.l, a, b))
        if split is not None:
            deviations.append(_power_split_deviation(structure, split, t1.l, a, b))
    mid = time.perf_counter()
    form = VerificationReport("dirac_form", structure.describe(), trials,
                              tuple(form_residuals), mid - start)
    balance = VerificationReport(
        "power_balance", structure.describe(), trials,
        tuple(balance_residuals), time.perf_counter() - mid,
        tuple(deviations), split_tolerance if split is not None else None)
    return form, balance


def constrained_suite(structure: ConstrainedStructure,
                      trials: int = DEFAULT_TRIALS, degrees=DEFAULT_DEGREES,
                      seed: int = 0, interval=None) -> tuple[VerificationReport, ...]:
    """Constrained balance residuals over pairs of random exact solutions."""
    start = time.perf_counter()
    residuals = []
    for t, degree in enumerate(_trial_degrees(trials, degrees)):
        s1 = constrained_sample(structure, degree, _sub_seed(seed, t, 0))
        s2 = constrained_sample(structure, degree, _sub_seed(seed, t, 1))
        if interval is None:
            rng = random.Random(_sub_seed(seed, t, 2))
            a, b = _random_interval(rng)
        else:
            a, b = Fraction(interval[0]), Fraction(interval[1])
        residuals.append(constrained_balance_form(structure, s1, s2, (a, b)))
    return (VerificationReport("constrained_balance", structure.describe(),
                               trials, tuple(residuals),
                               time.perf_counter() - start),)


def lagrange_suite(boundary: LagrangeBoundary, trials: int = DEFAULT_TRIALS,
                   degrees=DEFAULT_DEGREES, seed: int = 0, interval=None
                   ) -> tuple[VerificationReport, ...]:
    """Symplectic balance residuals over random trajectory pairs."""
    start = time.perf_counter()
    m = boundary.m
    residuals = []
    for t, degree in enumerate(_trial_degrees(trials, degrees)):
        t1 = random_latent(_sub_seed(seed, t, 0), m, degree)
        t2 = random_latent(_sub_seed(seed, t, 1), m, degree)
        a, b = (t1.alpha, t1.beta) if interval is None else \
            (Fraction(interval[0]), Fraction(interval[1]))
        residuals.append(storage_balance_form(boundary, t1.l, t2.l, a, b))
    return (VerificationReport("symplectic_balance", boundary.describe(),
                               trials, tuple(residuals),
                               time.perf_counter() - start),)
