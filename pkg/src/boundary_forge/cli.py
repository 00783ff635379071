"""Command line interface.

Problems are JSON files: a `kind` selecting the pipeline, the operator
matrices for that kind, and optional settings.  Polynomial entries are
arrays of rational strings indexed by the power of the differentiation
symbol, so the file format carries exact rationals and no expression
grammar.  Example (first-order transmission-line coupling):

    {"kind": "skew_adjoint",
     "J": [[["0"], ["0", "1"]],
           [["0", "1"], ["0"]]]}

Subcommands build on each other: `check` validates, `boundary` adds the
synthesized boundary maps, `split` adds the power split (or the doubled
two-point form with --two-point), `realize` adds the state realization,
`verify` runs the exact verification suites, and `report` runs everything.

Exit status: 0 when everything requested passed, 1 when a validation
condition, verification residual, split, or realization failed, 2 on usage
or problem-file errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Poly, PolyMatrix, RatMatrix
from .constrained import (
    ConstrainedStructure,
    constrained_boundary,
    validate_skew_adjoint,
)
from .dirac import (
    DEFAULT_SPLIT_TOLERANCE,
    BoundaryStructure,
    ConditionReport,
    DiracPair,
    UnbalancedSignatureError,
    boundary_structure,
    canonical_power_split,
    dirac_condition_reports,
    skew_adjoint_structure,
    two_point_form,
)
from .harness import (
    DEFAULT_DEGREES,
    DEFAULT_TRIALS,
    constrained_suite,
    dirac_suite,
    lagrange_suite,
)
from .lagrange import (
    LagrangeBoundary,
    LagrangePair,
    lagrange_boundary,
    lagrange_condition_reports,
)
from .realize import (
    NoneFoundError,
    NonUniqueSolutionError,
    UnsolvableError,
    partition_search,
    realize,
    verify_realization_structure,
)
from .twovar import TwoVarPolyMatrix, mul_zeta_plus_eta

__all__ = [
    "ParseError",
    "ShapeError",
    "ProblemFile",
    "RunOptions",
    "parse_problem",
    "parse_problem_data",
    "run",
    "main",
    "console_main",
]

SCHEMA_VERSION = "1.0.0"
SUBCOMMANDS = ("check", "boundary", "split", "realize", "verify", "report")
KIND_MATRICES = {
    "dirac": ("F", "E"),
    "skew_adjoint": ("J",),
    "constrained": ("J", "G"),
    "lagrange": ("P", "S"),
}
CONVENTION_NOTE = (
    "Boundary forms are oriented so that d/dz [b1^T Sigma b2] = "
    "e1^T f2 + e2^T f1 holds on image-representation solutions; relative to "
    "the quotient of the operator-side form F(zeta)E(eta)^T + E(zeta)F(eta)^T "
    "this flips signs: Pi(zeta,eta) = -Pi_op(-zeta,-eta).")


class ParseError(ValueError):
    """Malformed problem file; the message names the offending field."""


class ShapeError(ParseError):
    """Structurally valid file whose matrix shapes do not fit its kind."""


@dataclass(frozen=True)
class ProblemFile:
    kind: str
    matrices: dict
    settings: dict


@dataclass(frozen=True)
class RunOptions:
    interval: tuple | None = None
    trials: int | None = None
    degree: int | None = None
    seed: int | None = None
    swap: tuple[int, ...] | None = None
    two_point: bool = False
    tolerance: float | None = None


# problem parsing ---------------------------------------------------------------


def _parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ParseError(f"{where}: expected a rational string, got {value!r}")
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: not a rational number: {value!r} ({exc})") from exc


def _parse_poly(value, where: str) -> Poly:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected an array of coefficients, got {value!r}")
    return Poly([_parse_rational(c, f"{where}[{k}]") for k, c in enumerate(value)])


def _parse_matrix(value, where: str) -> PolyMatrix:
    if not isinstance(value, list) or not value:
        raise ParseError(f"{where}: expected a non-empty array of rows")
    rows = []
    width = None
    for i, row in enumerate(value):
        if not isinstance(row, list) or not row:
            raise ParseError(f"{where}[{i}]: expected a non-empty array of entries")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ShapeError(f"{where}[{i}]: row has {len(row)} entries, "
                             f"expected {width}")
        rows.append([_parse_poly(e, f"{where}[{i}][{j}]")
                     for j, e in enumerate(row)])
    return PolyMatrix.from_rows(rows)


def _parse_settings(data: dict) -> dict:
    settings = {}
    raw = data.get("settings", {})
    if not isinstance(raw, dict):
        raise ParseError("settings: expected an object")
    allowed = {"interval", "degree", "trials", "seed", "tolerance"}
    for key in raw:
        if key not in allowed:
            raise ParseError(f"settings.{key}: unknown setting")
    if "interval" in raw:
        iv = raw["interval"]
        if not isinstance(iv, list) or len(iv) != 2:
            raise ParseError("settings.interval: expected [alpha, beta]")
        a = _parse_rational(iv[0], "settings.interval[0]")
        b = _parse_rational(iv[1], "settings.interval[1]")
        if not a < b:
            raise ParseError("settings.interval: alpha must be less than beta")
        settings["interval"] = (a, b)
    for key, minimum in (("degree", 0), ("trials", 1), ("seed", None)):
        if key in raw:
            v = raw[key]
            if isinstance(v, bool) or not isinstance(v, int):
                raise ParseError(f"settings.{key}: expected an integer")
            if minimum is not None and v < minimum:
                raise ParseError(f"settings.{key}: must be at least {minimum}")
            settings[key] = v
    if "tolerance" in raw:
        v = raw["tolerance"]
        if not isinstance(v, (int, float)) or isinstance(v, bool) or v <= 0:
            raise ParseError("settings.tolerance: expected a positive number")
        settings["tolerance"] = float(v)
    return settings


def parse_problem_data(data, where: str = "problem") -> ProblemFile:
    """Validate an already-decoded problem object."""
    if not isinstance(data, dict):
        raise ParseError(f"{where}: expected an object at the top level")
    kind = data.get("kind")
    if kind not in KIND_MATRICES:
        raise ParseError(f"{where}.kind: expected one of "
                         f"{sorted(KIND_MATRICES)}, got {kind!r}")
    required = KIND_MATRICES[kind]
    known = set(required) | {"kind", "settings"}
    for key in data:
        if key not in known:
            raise ParseError(f"{where}.{key}: unexpected field for kind {kind}")
    matrices = {}
    for name in required:
        if name not in data:
            raise ParseError(f"{where}.{name}: required for kind {kind}")
        matrices[name] = _parse_matrix(data[name], name)
    _check_shapes(kind, matrices)
    return ProblemFile(kind, matrices, _parse_settings(data))


def _check_shapes(kind: str, matrices: dict) -> None:
    def square(name):
        m = matrices[name]
        if m.rows != m.cols:
            raise ShapeError(f"{name}: must be square, got {m.rows}x{m.cols}")

    if kind == "dirac":
        square("F")
        square("E")
        if matrices["F"].shape != matrices["E"].shape:
            raise ShapeError(f"F and E must have equal size, got "
                             f"{matrices['F'].shape} and {matrices['E'].shape}")
    elif kind == "skew_adjoint":
        square("J")
    elif kind == "constrained":
        square("J")
        if matrices["G"].cols != matrices["J"].rows:
            raise ShapeError(f"G: width {matrices['G'].cols} does not match "
                             f"the effort dimension {matrices['J'].rows}")
    elif kind == "lagrange":
        square("P")
        square("S")
        if matrices["P"].shape != matrices["S"].shape:
            raise ShapeError(f"P and S must have equal size, got "
                             f"{matrices['P'].shape} and {matrices['S'].shape}")


def parse_problem(path: str) -> ProblemFile:
    """Load and validate a problem file, with field-precise diagnostics."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno} "
                         f"column {exc.colno}: {exc.msg}") from exc
    return parse_problem_data(data, where="problem")


# report serialization -----------------------------------------------------------


def _frac_str(value: Fraction) -> str:
    value = Fraction(value)
    return str(value)


def _poly_json(p: Poly) -> list:
    if p.is_zero:
        return ["0"]
    return [_frac_str(c) for c in p.coeffs]


def _poly_matrix_json(pm: PolyMatrix) -> list:
    return [[_poly_json(e) for e in row] for row in pm.entries]


def _rat_matrix_json(rm: RatMatrix) -> list:
    return [[_frac_str(v) for v in row] for row in rm.entries]


def _two_var_json(tv: TwoVarPolyMatrix) -> list:
    out = []
    for (k, l) in sorted(tv.blocks):
        out.append({"zeta_power": k, "eta_power": l,
                    "matrix": _rat_matrix_json(tv.blocks[(k, l)])})
    return out


def _condition_json(report: ConditionReport) -> dict:
    entry = {"name": report.name, "passed": report.passed}
    if report.witness:
        entry["witness"] = report.witness
    return entry


def _float_matrix_json(rows) -> list:
    return [[float(v) for v in row] for row in rows]


# structure assembly -------------------------------------------------------------


@dataclass
class _Built:
    """Validated pipeline objects for one problem, plus condition verdicts."""

    conditions: list
    structure: BoundaryStructure | None = None
    constrained: ConstrainedStructure | None = None
    lagrange: LagrangeBoundary | None = None

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.conditions)


def _build(problem: ProblemFile) -> _Built:
    kind = problem.kind
    if kind == "dirac":
        reports = dirac_condition_reports(problem.matrices["F"],
                                          problem.matrices["E"])
        built = _Built(list(reports))
        if built.ok:
            pair = DiracPair(problem.matrices["F"], problem.matrices["E"])
            built.structure = boundary_structure(pair)
        return built
    if kind == "skew_adjoint":
        ok, witness = validate_skew_adjoint(problem.matrices["J"])
        built = _Built([ConditionReport("skew_adjoint", ok, witness)])
        if ok:
            built.structure = skew_adjoint_structure(problem.matrices["J"])
        return built
    if kind == "constrained":
        ok, witness = validate_skew_adjoint(problem.matrices["J"])
        built = _Built([ConditionReport("skew_adjoint", ok, witness)])
        if ok:
            built.constrained = constrained_boundary(problem.matrices["J"],
                                                     problem.matrices["G"])
            built.structure = built.constrained.j_structure
        return built
    if kind == "lagrange":
        reports = lagrange_condition_reports(problem.matrices["P"],
                                             problem.matrices["S"])
        built = _Built(list(reports))
        if built.ok:
            pair = LagrangePair(problem.matrices["P"], problem.matrices["S"])
            built.lagrange = lagrange_boundary(pair)
        return built
    raise ValueError(f"unknown kind {kind!r}")


def _boundary_section(problem: ProblemFile, built: _Built) -> dict:
    kind = problem.kind
    if kind in ("dirac", "skew_adjoint"):
        s = built.structure
        recon = TwoVarPolyMatrix.outer(s.Z, PolyMatrix.from_const(s.Sigma) * s.Z)
        if recon != s.pi:
            raise AssertionError("internal error: factorization reconstruction "
                                 "failed at emission")
        return {
            "n": s.n,
            "pi": _two_var_json(s.pi),
            "Z": _poly_matrix_json(s.Z),
            "Sigma": _rat_matrix_json(s.Sigma),
            "inertia": list(s.inertia.as_tuple()),
            "reconstruction_verified": True,
        }
    if kind == "constrained":
        c = built.constrained
        j = c.j_structure
        recon_j = TwoVarPolyMatrix.outer(j.Z, PolyMatrix.from_const(j.Sigma) * j.Z)
        recon_g = TwoVarPolyMatrix.outer(c.Z_G, c.V_G)
        if recon_j != j.pi or recon_g != c.xi:
            raise AssertionError("internal error: factorization reconstruction "
                                 "failed at emission")
        return {
            "n_j": c.n_j,
            "n_g": c.n_g,
            "Z_J": _poly_matrix_json(c.Z_J),
            "Sigma_J": _rat_matrix_json(c.Sigma_J),
            "Z_G": _poly_matrix_json(c.Z_G),
            "V_G": _poly_matrix_json(c.V_G),
            "Pi_G": _rat_matrix_json(c.Pi_G),
            "inertia_J": list(j.inertia.as_tuple()),
            "reconstruction_verified": True,
        }
    if kind == "lagrange":
        b = built.lagrange
        p = b.p
        if p:
            upper = RatMatrix.hstack([RatMatrix.zero(p, p), RatMatrix.identity(p)])
            lower = RatMatrix.hstack([-RatMatrix.identity(p), RatMatrix.zero(p, p)])
            j_p = RatMatrix.vstack([upper, lower])
        else:
            j_p = RatMatrix.zero(0, 0)
        recon = TwoVarPolyMatrix.outer(b.W, PolyMatrix.from_const(j_p) * b.W)
        if recon != b.Lambda or mul_zeta_plus_eta(b.Lambda) != b.Theta:
            raise AssertionError("internal error: factorization reconstruction "
                                 "failed at emission")
        return {
            "p": p,
            "Theta": _two_var_json(b.Theta),
            "W": _poly_matrix_json(b.W),
            "reconstruction_verified": True,
        }
    raise ValueError(f"unknown kind {kind!r}")


def _split_section(built: _Built, tolerance: float, two_point: bool,
                   documenting: bool) -> tuple[dict, bool]:
    """Split data plus a pass verdict.  With `documenting` an unbalanced
    one-point split is described rather than failed."""
    sigma = built.structure.Sigma
    section: dict = {"tolerance": tolerance}
    if two_point:
        sigma2, split = two_point_form(built.structure, tolerance)
        section["two_point"] = True
        section["Sigma2"] = _rat_matrix_json(sigma2)
        section["p"] = split.p
        section["residual"] = split.residual
        section["T"] = _float_matrix_json(split.T)
        return section, True
    section["two_point"] = False
    try:
        split = canonical_power_split(sigma, tolerance)
    except UnbalancedSignatureError as exc:
        section["balanced"] = False
        section["inertia"] = list(exc.inertia.as_tuple())
        section["witness"] = str(exc)
        if documenting:
            sigma2, split2 = two_point_form(built.structure, tolerance)
            section["two_point_fallback"] = {
                "Sigma2": _rat_matrix_json(sigma2),
                "p": split2.p,
                "residual": split2.residual,
                "T": _float_matrix_json(split2.T),
            }
            return section, True
        return section, False
    section["balanced"] = True
    section["p"] = split.p
    section["residual"] = split.residual
    section["T"] = _float_matrix_json(split.T)
    return section, True


def _realize_target(problem: ProblemFile, built: _Built):
    if problem.kind == "lagrange":
        return built.lagrange
    return built.structure


def _realization_section(target, swap: tuple[int, ...] | None
                         ) -> tuple[dict, bool]:
    section: dict = {}
    try:
        if swap is None:
            found = partition_search(target)
            section["swap_searched"] = True
            realization = realize(target, swap=found)
        else:
            realization = realize(target, swap=swap)
    except (UnsolvableError, NonUniqueSolutionError, NoneFoundError) as exc:
        section["failed"] = True
        section["witness"] = str(exc)
        if swap is not None:
            section["swap"] = list(swap)
        return section, False
    report = verify_realization_structure(realization)
    section.update({
        "kind": realization.kind,
        "swap": list(realization.swap),
        "n": realization.n,
        "m": realization.m,
        "A": _rat_matrix_json(realization.A),
        "B": _rat_matrix_json(realization.B),
        "C": _rat_matrix_json(realization.C),
        "D": _rat_matrix_json(realization.D),
        "Sigma": _rat_matrix_json(realization.Sigma),
        "identities": [{"name": c.name, "residual": _frac_str(c.residual),
                        "passed": c.passed} for c in report.checks],
        "identities_pass": report.all_pass,
    })
    return section, report.all_pass


def _verification_section(problem: ProblemFile, built: _Built,
                          options: RunOptions) -> tuple[dict, bool]:
    settings = problem.settings
    trials = options.trials or settings.get("trials") or DEFAULT_TRIALS
    seed = options.seed if options.seed is not None else settings.get("seed", 0)
    degree = options.degree if options.degree is not None else settings.get("degree")
    degrees = (degree,) if degree is not None else DEFAULT_DEGREES
    interval = options.interval or settings.get("interval")
    tolerance = (options.tolerance or settings.get("tolerance")
                 or DEFAULT_SPLIT_TOLERANCE)
    if problem.kind in ("dirac", "skew_adjoint"):
        reports = dirac_suite(built.structure, trials, degrees, seed,
                              interval, tolerance)
    elif problem.kind == "constrained":
        reports = constrained_suite(built.constrained, trials, degrees, seed,
                                    interval)
    else:
        reports = lagrange_suite(built.lagrange, trials, degrees, seed, interval)
    entries = []
    ok = True
    for r in reports:
        entry = {
            "check": r.check,
            "instance": r.instance,
            "trials": r.trials,
            "max_residual": _frac_str(max((abs(x) for x in r.residuals),
                                          default=Fraction(0))),
            "all_zero": r.all_zero,
            "elapsed": r.elapsed,
            "passed": r.all_pass,
        }
        if r.split_tolerance is not None:
            entry["max_split_deviation"] = max(r.split_deviations, default=0.0)
            entry["split_tolerance"] = r.split_tolerance
        entries.append(entry)
        ok = ok and r.all_pass
    return {"trials": trials, "seed": seed, "degrees": list(degrees),
            "checks": entries}, ok


# dispatch -----------------------------------------------------------------------


def run(subcommand: str, problem: ProblemFile, options: RunOptions) -> dict:
    """Execute a subcommand and return the report dictionary.

    The report always carries `schema_version`, the convention note, the
    condition verdicts, and an `exit_status` field implementing the 0/1
    contract (2 never appears here; usage errors are raised before run).
    """
    if subcommand not in SUBCOMMANDS:
        raise ValueError(f"unknown subcommand {subcommand!r}")
    started = time.perf_counter()
    built = _build(problem)
    report: dict = {
        "schema_version": SCHEMA_VERSION,
        "subcommand": subcommand,
        "kind": problem.kind,
        "convention_note": CONVENTION_NOTE,
        "conditions": [_condition_json(c) for c in built.conditions],
    }
    passed = built.ok
    tolerance = (options.tolerance or problem.settings.get("tolerance")
                 or DEFAULT_SPLIT_TOLERANCE)

    if built.ok and subcommand in ("boundary", "split", "realize", "verify",
                                   "report"):
        report["boundary"] = _boundary_section(problem, built)

    if built.ok and subcommand in ("split", "report"):
        if problem.kind == "lagrange":
            if subcommand == "split":
                raise ValueError(
                    "split applies to symmetric boundary pairings; this kind "
                    "carries a symplectic pairing (always in canonical form)")
        else:
            section, ok = _split_section(built, tolerance, options.two_point,
                                         documenting=subcommand == "report")
            report["split"] = section
            passed = passed and ok

    if built.ok and subcommand in ("realize", "report"):
        section, ok = _realization_section(_realize_target(problem, built),
                                           options.swap)
        report["realization"] = section
        passed = passed and ok

    if built.ok and subcommand in ("verify", "report"):
        section, ok = _verification_section(problem, built, options)
        report["verification"] = section
        passed = passed and ok

    report["elapsed"] = time.perf_counter() - started
    report["exit_status"] = 0 if passed else 1
    return report


# rendering ----------------------------------------------------------------------


def _render_matrix_lines(name: str, rows: list) -> list[str]:
    out = [f"  {name} ="]
    for row in rows:
        cells = []
        for entry in row:
            if isinstance(entry, list):
                cells.append(str(Poly([Fraction(c) for c in entry])))
            else:
                cells.append(str(entry))
        out.append("      [" + ", ".join(cells) + "]")
    return out


def render_text(report: dict) -> str:
    lines = [f"boundary-forge {report['subcommand']} (kind {report['kind']})"]
    lines.append("conditions:")
    for c in report["conditions"]:
        tag = "pass" if c["passed"] else "FAIL"
        witness = f" — {c['witness']}" if c.get("witness") else ""
        lines.append(f"  [{tag}] {c['name']}{witness}")
    boundary = report.get("boundary")
    if boundary:
        if "n" in boundary:
            lines.append(f"boundary: n={boundary['n']} "
                         f"inertia={tuple(boundary['inertia'])}")
            lines.extend(_render_matrix_lines("Z", boundary["Z"]))
            lines.extend(_render_matrix_lines("Sigma", boundary["Sigma"]))
        elif "n_j" in boundary:
            lines.append(f"boundary: n_j={boundary['n_j']} n_g={boundary['n_g']} "
                         f"inertia_J={tuple(boundary['inertia_J'])}")
            lines.extend(_render_matrix_lines("Z_J", boundary["Z_J"]))
            lines.extend(_render_matrix_lines("Sigma_J", boundary["Sigma_J"]))
            lines.extend(_render_matrix_lines("Z_G", boundary["Z_G"]))
            lines.extend(_render_matrix_lines("V_G", boundary["V_G"]))
        else:
            lines.append(f"boundary: p={boundary['p']}")
            lines.extend(_render_matrix_lines("W", boundary["W"]))
    split = report.get("split")
    if split:
        if split.get("two_point"):
            lines.append(f"split (two-point): p={split['p']} "
                         f"residual={split['residual']:.3e}")
        elif split.get("balanced"):
            lines.append(f"split: p={split['p']} residual={split['residual']:.3e}")
        else:
            lines.append(f"split: unbalanced signature "
                         f"{tuple(split['inertia'])}"
                         + (" (two-point form included)"
                            if "two_point_fallback" in split else ""))
    realization = report.get("realization")
    if realization:
        if realization.get("failed"):
            lines.append(f"realization: FAILED — {realization['witness']}")
        else:
            lines.append(f"realization: n={realization['n']} m={realization['m']} "
                         f"swap={realization['swap']}")
            for name in ("A", "B", "C", "D"):
                lines.extend(_render_matrix_lines(name, realization[name]))
            for ident in realization["identities"]:
                tag = "pass" if ident["passed"] else "FAIL"
                lines.append(f"  [{tag}] {ident['name']} "
                             f"(residual {ident['residual']})")
    verification = report.get("verification")
    if verification:
        lines.append(f"verification: {verification['trials']} trials, "
                     f"degrees {verification['degrees']}, "
                     f"seed {verification['seed']}")
        for entry in verification["checks"]:
            tag = "pass" if entry["passed"] else "FAIL"
            extra = ""
            if "max_split_deviation" in entry:
                extra = (f", max split deviation "
                         f"{entry['max_split_deviation']:.3e}")
            lines.append(f"  [{tag}] {entry['check']}: "
                         f"max residual {entry['max_residual']}{extra}")
    lines.append(f"note: {report['convention_note']}")
    lines.append(f"exit status {report['exit_status']}")
    return "\n".join(lines)


# entry points -------------------------------------------------------------------


def _parse_swap(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(sorted({int(part) for part in text.split(",")}))
    except ValueError as exc:
        raise ParseError(f"--swap: expected comma-separated integers, "
                         f"got {text!r}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boundary-forge",
        description="Exact boundary-structure synthesis and verification "
                    "for differential operator pairs on an interval.")
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("problem", help="path to a JSON problem file")
    parser.add_argument("--interval", nargs=2, metavar=("A", "B"),
                        help="integration interval endpoints (rationals)")
    parser.add_argument("--trials", type=int)
    parser.add_argument("--degree", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--swap", type=str, default=None,
                        help="comma-separated 1-based ports to role-swap "
                             "(empty string forces the direct roles)")
    parser.add_argument("--two-point", action="store_true")
    parser.add_argument("--tolerance", type=float)
    parser.add_argument("--format", choices=("text", "structured"),
                        default="text")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        problem = parse_problem(args.problem)
        interval = None
        if args.interval is not None:
            a = _parse_rational(args.interval[0], "--interval A")
            b = _parse_rational(args.interval[1], "--interval B")
            if not a < b:
                raise ParseError("--interval: A must be less than B")
            interval = (a, b)
        if args.trials is not None and args.trials < 1:
            raise ParseError("--trials: must be at least 1")
        if args.degree is not None and args.degree < 0:
            raise ParseError("--degree: must be nonnegative")
        if args.tolerance is not None and args.tolerance <= 0:
            raise ParseError("--tolerance: must be positive")
        options = RunOptions(
            interval=interval,
            trials=args.trials,
            degree=args.degree,
            seed=args.seed,
            swap=_parse_swap(args.swap) if args.swap is not None else None,
            two_point=args.two_point,
            tolerance=args.tolerance,
        )
        report = run(args.subcommand, problem, options)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "structured":
        print(json.dumps(report, indent=2))
    else:
        print(render_text(report))
    return report["exit_status"]


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
