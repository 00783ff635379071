"""Exact scalar, polynomial, and matrix algebra over the rationals.

Everything in this module is computed with arbitrary-precision rational
arithmetic (`fractions.Fraction`); no floating point enters anywhere.  All
types are immutable after construction and all operations are pure
functions, so values can be shared freely.

The linear-algebra routines are written for "desk scale" inputs (matrices of
a few dozen rows at most) and favour exactness and deterministic pivoting
over asymptotic speed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "NEG_INF",
    "Poly",
    "PolyMatrix",
    "RatMatrix",
    "Inertia",
    "AllZeroError",
    "NotSymmetricError",
    "NotSkewError",
    "InconsistentSystemError",
    "UnderdeterminedSystemError",
    "as_rat",
    "para_conjugate",
    "poly_gcd",
    "full_rank_everywhere",
    "solve_linear",
    "inertia_congruence",
    "rank_factorization",
    "skew_canonical_congruence",
    "polynomial_kernel_basis",
]

NEG_INF = float("-inf")
"""Degree of the zero polynomial.

A deliberate non-integer sentinel: comparisons against real degrees work
(``NEG_INF < 0``) but accidental arithmetic can never produce a plausible
integer degree.
"""


class AllZeroError(ValueError):
    """Raised when an operation needs at least one nonzero polynomial."""


class NotSymmetricError(ValueError):
    """Raised when a symmetric matrix was required."""


class NotSkewError(ValueError):
    """Raised when a skew-symmetric matrix was required."""


class InconsistentSystemError(ValueError):
    """Linear system has no solution.  `witness` names an offending row."""

    def __init__(self, message: str, witness: str = ""):
        super().__init__(message)
        self.witness = witness


class UnderdeterminedSystemError(ValueError):
    """Linear system is solvable but not uniquely.  `dof` counts the freedom."""

    def __init__(self, message: str, dof: int = 0):
        super().__init__(message)
        self.dof = dof


def as_rat(value) -> Fraction:
    """Coerce an int, a string like ``"3/4"``, or a Fraction to a Fraction.

    Floats are rejected: exactness is the whole point of this package.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot coerce {value!r} of type {type(value).__name__} to an exact rational")


_ZERO = Fraction(0)
_ONE = Fraction(1)


class Poly:
    """Univariate polynomial with exact rational coefficients.

    Coefficients are stored low degree first with no trailing zeros; the
    zero polynomial is the empty coefficient tuple and reports degree
    ``NEG_INF``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((as_rat(c),))

    @classmethod
    def variable(cls) -> "Poly":
        """The polynomial ``s``."""
        return cls((0, 1))

    @classmethod
    def monomial(cls, power: int, coeff=1) -> "Poly":
        if power < 0:
            raise ValueError("monomial power must be nonnegative")
        return cls((0,) * power + (as_rat(coeff),))

    # -- inspection --------------------------------------------------------

    @property
    def degree(self):
        """Degree of the polynomial; ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        """Coefficient of ``s**k`` (zero when ``k`` exceeds the degree)."""
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _ZERO

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise AllZeroError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly((other,))
        return None

    def __add__(self, other):
        other = Poly._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = Poly._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = Poly._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = Poly._coerce(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly(())
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Poly.one()
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other):
        other = Poly._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        quot = [_ZERO] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = c / lead
            quot[i - d] = q
            for j, b in enumerate(other.coeffs):
                rem[i - d + j] -= q * b
        return Poly(quot), Poly(rem)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    # -- calculus and substitution ----------------------------------------

    def __call__(self, x) -> Fraction:
        """Evaluate at an exact rational point (Horner)."""
        x = as_rat(x)
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def deriv(self, order: int = 1) -> "Poly":
        if order < 0:
            raise ValueError("negative derivative order")
        cs = self.coeffs
        for _ in range(order):
            cs = tuple(Fraction(k) * cs[k] for k in range(1, len(cs)))
        return Poly(cs)

    def antideriv(self) -> "Poly":
        """Antiderivative with zero constant term."""
        return Poly((_ZERO,) + tuple(c / (k + 1) for k, c in enumerate(self.coeffs)))

    def integral(self, a, b) -> Fraction:
        """Exact definite integral over [a, b]."""
        anti = self.antideriv()
        return anti(b) - anti(a)

    def para(self) -> "Poly":
        """Substitute ``s -> -s``."""
        return Poly(tuple(-c if k % 2 else c for k, c in enumerate(self.coeffs)))

    def monic(self) -> "Poly":
        if self.is_zero:
            raise AllZeroError("cannot normalize the zero polynomial")
        lead = self.coeffs[-1]
        return Poly(tuple(c / lead for c in self.coeffs))

    # -- protocol ----------------------------------------------------------

    def __eq__(self, other):
        other = Poly._coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                term = str(c)
            else:
                var = "s" if k == 1 else f"s^{k}"
                if c == 1:
                    term = var
                elif c == -1:
                    term = f"-{var}"
                else:
                    term = f"{c}*{var}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    def __repr__(self):
        return f"Poly({self})"


def _as_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction, str)):
        return Poly((as_rat(value),))
    raise TypeError(f"cannot coerce {value!r} to a polynomial entry")


class RatMatrix:
    """Immutable matrix of exact rationals.  Zero-sized dimensions are legal."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Sequence]):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        ents = tuple(tuple(as_rat(v) for v in row) for row in entries)
        if len(ents) != rows or any(len(r) != cols for r in ents):
            raise ValueError(f"entry grid does not match shape {rows}x{cols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ents)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("RatMatrix is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence) -> "RatMatrix":
        vals = [as_rat(v) for v in values]
        n = len(vals)
        return cls(n, n, [[vals[i] if i == j else 0 for j in range(n)] for i in range(n)])

    # -- structure ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    @property
    def T(self) -> "RatMatrix":
        return self.transpose()

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows) for j in range(i + 1, self.cols))

    def is_skew(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == -self.entries[j][i]
            for i in range(self.rows) for j in range(i, self.cols))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "RatMatrix":
        return RatMatrix(len(row_idx), len(col_idx),
                         [[self.entries[i][j] for j in col_idx] for i in row_idx])

    def take_rows(self, row_idx: Sequence[int]) -> "RatMatrix":
        return self.submatrix(row_idx, range(self.cols))

    def max_abs(self) -> Fraction:
        """Largest absolute entry (zero for empty matrices)."""
        return max((abs(v) for row in self.entries for v in row), default=_ZERO)

    def to_float(self) -> list[list[float]]:
        return [[float(v) for v in row] for row in self.entries]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return RatMatrix(self.rows, self.cols,
                         [[a + b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return RatMatrix(self.rows, self.cols, [[-v for v in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            bt = other.transpose().entries
            return RatMatrix(self.rows, other.cols,
                             [[sum((a * b for a, b in zip(row, col)), _ZERO) for col in bt]
                              for row in self.entries])
        if isinstance(other, (int, Fraction)):
            c = as_rat(other)
            return RatMatrix(self.rows, self.cols, [[v * c for v in row] for row in self.entries])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def apply_vec(self, vec: Sequence) -> tuple[Fraction, ...]:
        vals = [as_rat(v) for v in vec]
        if len(vals) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum((a * b for a, b in zip(row, vals)), _ZERO) for row in self.entries)

    # -- stacking ----------------------------------------------------------

    @classmethod
    def hstack(cls, mats: Sequence["RatMatrix"]) -> "RatMatrix":
        mats = list(mats)
        if not mats:
            raise ValueError("hstack of nothing")
        rows = mats[0].rows
        if any(m.rows != rows for m in mats):
            raise ValueError("hstack needs equal row counts")
        return cls(rows, sum(m.cols for m in mats),
                   [[v for m in mats for v in m.entries[i]] for i in range(rows)])

    @classmethod
    def vstack(cls, mats: Sequence["RatMatrix"]) -> "RatMatrix":
        mats = list(mats)
        if not mats:
            raise ValueError("vstack of nothing")
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise ValueError("vstack needs equal column counts")
        return cls(sum(m.rows for m in mats), cols,
                   [row for m in mats for row in m.entries])

    @classmethod
    def block_diag(cls, mats: Sequence["RatMatrix"]) -> "RatMatrix":
        mats = list(mats)
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        grid = [[_ZERO] * cols for _ in range(rows)]
        r0 = c0 = 0
        for m in mats:
            for i in range(m.rows):
                for j in range(m.cols):
                    grid[r0 + i][c0 + j] = m.entries[i][j]
            r0 += m.rows
            c0 += m.cols
        return cls(rows, cols, grid)

    # -- exact linear algebra ----------------------------------------------

    def rank(self) -> int:
        _, pivots = _rref([list(r) for r in self.entries], self.cols)
        return len(pivots)

    def inverse(self) -> "RatMatrix":
        if self.rows != self.cols:
            raise ValueError("only square matrices invert")
        n = self.rows
        aug = [list(self.entries[i]) + [_ONE if i == j else _ZERO for j in range(n)]
               for i in range(n)]
        reduced, pivots = _rref(aug, n)
        if len(pivots) != n:
            raise ValueError("matrix is singular")
        return RatMatrix(n, n, [row[n:] for row in reduced])

    # -- protocol ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash(("RatMatrix", self.shape, self.entries))

    def __str__(self):
        return "[" + "; ".join("[" + ", ".join(str(v) for v in row) + "]"
                               for row in self.entries) + "]"

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols} {self})"


class PolyMatrix:
    """Immutable matrix with polynomial entries, used both as a plain matrix
    of polynomials in an indeterminate ``s`` and as a matrix differential
    operator via :meth:`apply`.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Sequence]):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        ents = tuple(tuple(_as_poly(v) for v in row) for row in entries)
        if len(ents) != rows or any(len(r) != cols for r in ents):
            raise ValueError(f"entry grid does not match shape {rows}x{cols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ents)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("PolyMatrix is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "PolyMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "PolyMatrix":
        return cls(rows, cols, [[Poly.zero()] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls(n, n, [[Poly.one() if i == j else Poly.zero() for j in range(n)]
                          for i in range(n)])

    @classmethod
    def from_const(cls, mat: RatMatrix) -> "PolyMatrix":
        return cls(mat.rows, mat.cols, [[Poly.const(v) for v in row] for row in mat.entries])

    # -- structure ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def degree(self):
        """Maximal entry degree; ``NEG_INF`` for a zero (or empty) matrix."""
        return max((e.degree for row in self.entries for e in row), default=NEG_INF)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.cols, self.rows,
                          [[self.entries[i][j] for i in range(self.rows)]
                           for j in range(self.cols)])

    @property
    def T(self) -> "PolyMatrix":
        return self.transpose()

    def para(self) -> "PolyMatrix":
        """Entrywise substitution ``s -> -s``."""
        return PolyMatrix(self.rows, self.cols,
                          [[e.para() for e in row] for row in self.entries])

    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.entries for e in row)

    def coeff(self, k: int) -> RatMatrix:
        """Matrix coefficient of ``s**k``."""
        return RatMatrix(self.rows, self.cols,
                         [[e.coeff(k) for e in row] for row in self.entries])

    def eval_at(self, x) -> RatMatrix:
        x = as_rat(x)
        return RatMatrix(self.rows, self.cols,
                         [[e(x) for e in row] for row in self.entries])

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(len(row_idx), len(col_idx),
                          [[self.entries[i][j] for j in col_idx] for i in row_idx])

    def take_rows(self, row_idx: Sequence[int]) -> "PolyMatrix":
        return self.submatrix(row_idx, range(self.cols))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return PolyMatrix(self.rows, self.cols,
                          [[a + b for a, b in zip(r1, r2)]
                           for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return PolyMatrix(self.rows, self.cols, [[-e for e in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            bt = other.transpose().entries
            zero = Poly.zero()
            return PolyMatrix(self.rows, other.cols,
                              [[sum((a * b for a, b in zip(row, col)), zero) for col in bt]
                               for row in self.entries])
        if isinstance(other, (Poly, int, Fraction)):
            p = _as_poly(other)
            return PolyMatrix(self.rows, self.cols,
                              [[e * p for e in row] for row in self.entries])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Poly, int, Fraction)):
            return self * other
        return NotImplemented

    # -- operator action ----------------------------------------------------

    def apply(self, vec: Sequence[Poly]) -> tuple[Poly, ...]:
        """Apply this matrix as the differential operator ``P(d/dz)`` to a
        vector of polynomial functions of ``z``.
        """
        vals = [_as_poly(v) for v in vec]
        if len(vals) != self.cols:
            raise ValueError("vector length does not match column count")
        # precompute derivatives of each component up to the needed order
        max_deg = int(self.degree) if self.entries and self.degree != NEG_INF else 0
        derivs = []
        for v in vals:
            ds = [v]
            for _ in range(max_deg):
                ds.append(ds[-1].deriv())
            derivs.append(ds)
        out = []
        for row in self.entries:
            acc = Poly.zero()
            for j, e in enumerate(row):
                for k, c in enumerate(e.coeffs):
                    if c != 0:
                        acc = acc + c * derivs[j][k]
            out.append(acc)
        return tuple(out)

    # -- determinants --------------------------------------------------------

    def det(self) -> Poly:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return Poly.one()
        if n == 1:
            return self.entries[0][0]
        # cofactor expansion along the first column; fine at desk scale
        total = Poly.zero()
        for i in range(n):
            a = self.entries[i][0]
            if a.is_zero:
                continue
            minor = self.submatrix([r for r in range(n) if r != i], range(1, n))
            term = a * minor.det()
            total = total + term if i % 2 == 0 else total - term
        return total

    # -- stacking ------------------------------------------------------------

    @classmethod
    def hstack(cls, mats: Sequence["PolyMatrix"]) -> "PolyMatrix":
        mats = list(mats)
        if not mats:
            raise ValueError("hstack of nothing")
        rows = mats[0].rows
        if any(m.rows != rows for m in mats):
            raise ValueError("hstack needs equal row counts")
        return cls(rows, sum(m.cols for m in mats),
                   [[v for m in mats for v in m.entries[i]] for i in range(rows)])

    @classmethod
    def vstack(cls, mats: Sequence["PolyMatrix"]) -> "PolyMatrix":
        mats = list(mats)
        if not mats:
            raise ValueError("vstack of nothing")
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise ValueError("vstack needs equal column counts")
        return cls(sum(m.rows for m in mats), cols,
                   [list(row) for m in mats for row in m.entries])

    # -- protocol -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash(("PolyMatrix", self.shape, self.entries))

    def __str__(self):
        return "[" + "; ".join("[" + ", ".join(str(e) for e in row) + "]"
                               for row in self.entries) + "]"

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols} {self})"


@dataclass(frozen=True)
class Inertia:
    """Signature of a symmetric rational matrix: counts of positive,
    negative, and zero eigenvalues (computed exactly by congruence, never
    by rooting)."""

    positive: int
    negative: int
    zero: int

    @property
    def dim(self) -> int:
        return self.positive + self.negative + self.zero

    @property
    def is_balanced(self) -> bool:
        """Equal positive and negative counts."""
        return self.positive == self.negative

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.positive, self.negative, self.zero)

    def __str__(self):
        return f"({self.positive}, {self.negative}, {self.zero})"


# ---------------------------------------------------------------------------
# module-level exact linear algebra
# ---------------------------------------------------------------------------


def para_conjugate(p: PolyMatrix) -> PolyMatrix:
    """Entrywise substitution ``s -> -s`` (an involution)."""
    return p.para()


def poly_gcd(polys: Iterable[Poly]) -> Poly:
    """Monic greatest common divisor of a collection of polynomials.

    Zero polynomials are ignored; if every input is zero an
    :class:`AllZeroError` is raised.
    """
    nonzero = [p for p in polys if not p.is_zero]
    if not nonzero:
        raise AllZeroError("gcd of all-zero polynomial collection")
    g = nonzero[0]
    for p in nonzero[1:]:
        a, b = g, p
        while not b.is_zero:
            a, b = b, a % b
        g = a
        if g.degree == 0:
            break
    return g.monic()


def full_rank_everywhere(p: PolyMatrix) -> bool:
    """Whether ``p`` (with rows <= cols) has full row rank at every complex
    point.

    Exact criterion: the gcd of all maximal minors is a nonzero constant.
    A common polynomial factor of all maximal minors would vanish at one of
    its complex roots, dropping the rank there; conversely a constant gcd
    leaves no such point.
    """
    if p.rows > p.cols:
        raise ValueError("full_rank_everywhere expects rows <= cols")
    if p.rows == 0:
        return True
    minors = []
    for cols in itertools.combinations(range(p.cols), p.rows):
        d = p.submatrix(range(p.rows), cols).det()
        if not d.is_zero:
            minors.append(d)
            if d.degree == 0:
                return True
    if not minors:
        return False
    return poly_gcd(minors).degree == 0


def _rref(grid: list[list[Fraction]], limit_cols: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form over Fraction.

    Eliminates on the first `limit_cols` columns only (anything beyond rides
    along, which is how augmented solves reuse this).  Returns the grid and
    the pivot column list.  Pivoting is deterministic: first nonzero entry
    scanning down each column in order.
    """
    nrows = len(grid)
    pivots: list[int] = []
    r = 0
    for c in range(limit_cols):
        piv = next((i for i in range(r, nrows) if grid[i][c] != 0), None)
        if piv is None:
            continue
        grid[r], grid[piv] = grid[piv], grid[r]
        inv = 1 / grid[r][c]
        grid[r] = [v * inv for v in grid[r]]
        for i in range(nrows):
            if i != r and grid[i][c] != 0:
                f = grid[i][c]
                grid[i] = [a - f * b for a, b in zip(grid[i], grid[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return grid, pivots


def solve_linear(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Solve ``a @ x = b`` exactly.

    Returns the unique solution, raises :class:`InconsistentSystemError`
    when none exists (the witness names an unsatisfiable equation), and
    :class:`UnderdeterminedSystemError` when the solution is not unique
    (``dof`` counts the free variables).
    """
    if a.rows != b.rows:
        raise ValueError("left-hand side and right-hand side row counts differ")
    aug = [list(ra) + list(rb) for ra, rb in zip(a.entries, b.entries)]
    if not aug:
        # zero equations: solvable iff there are no unknowns to pin down
        if a.cols == 0:
            return RatMatrix.zero(0, b.cols)
        raise UnderdeterminedSystemError(
            f"no equations constrain {a.cols} unknowns", dof=a.cols)
    reduced, pivots = _rref(aug, a.cols)
    rank = len(pivots)
    for i in range(rank, len(reduced)):
        tail = reduced[i][a.cols:]
        if any(v != 0 for v in tail):
            raise InconsistentSystemError(
                "system has no solution",
                witness=f"row reduces to 0 = {[str(v) for v in tail]}")
    if rank < a.cols:
        raise UnderdeterminedSystemError(
            f"solution space has dimension {a.cols - rank}", dof=a.cols - rank)
    x = [[_ZERO] * b.cols for _ in range(a.cols)]
    for r, c in enumerate(pivots):
        x[c] = reduced[r][a.cols:]
    return RatMatrix(a.cols, b.cols, x)


def inertia_congruence(s: RatMatrix) -> tuple[Inertia, RatMatrix]:
    """Exact congruence diagonalization of a symmetric rational matrix.

    Returns ``(inertia, t)`` with ``t`` invertible and ``t.T @ s @ t``
    block-diagonal consisting of nonzero 1x1 entries and 2x2 hyperbolic
    blocks ``[[0, c], [c, 0]]``, with the zero block trailing.  Hyperbolic
    blocks (one positive and one negative direction each) are kept as-is so
    that no square roots are needed; the signature is read off exactly.

    Pivot scan order is deterministic: first nonzero diagonal entry, else
    first nonzero off-diagonal pair in lexicographic order.
    """
    if not s.is_symmetric():
        raise NotSymmetricError("inertia_congruence requires a symmetric matrix")
    n = s.rows
    a = [list(row) for row in s.entries]
    t = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]

    def congruence_swap(i: int, j: int) -> None:
        if i == j:
            return
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]
            t[r][i], t[r][j] = t[r][j], t[r][i]
        a[i], a[j] = a[j], a[i]

    def congruence_addmul(dst: int, src: int, c: Fraction) -> None:
        # column then matching row update: a <- E^T a E with E adding c*col_src
        for r in range(n):
            a[r][dst] += c * a[r][src]
            t[r][dst] += c * t[r][src]
        for r in range(n):
            a[dst][r] += c * a[src][r]

    pos = neg = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is not None:
            congruence_swap(k, piv)
            d = a[k][k]
            for j in range(k + 1, n):
                if a[k][j] != 0:
                    congruence_addmul(j, k, -a[k][j] / d)
            if d > 0:
                pos += 1
            else:
                neg += 1
            k += 1
            continue
        pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n)
                     if a[i][j] != 0), None)
        if pair is None:
            break
        i, j = pair
        congruence_swap(k, i)
        if j == k:
            j = i  # the swap moved the partner
        congruence_swap(k + 1, j)
        c = a[k][k + 1]
        for col in range(k + 2, n):
            c1 = -a[k + 1][col] / c
            c2 = -a[k][col] / c
            if c1 != 0:
                congruence_addmul(col, k, c1)
            if c2 != 0:
                congruence_addmul(col, k + 1, c2)
        pos += 1
        neg += 1
        k += 2
    return Inertia(pos, neg, n - pos - neg), RatMatrix(n, n, t)


def rank_factorization(m: RatMatrix) -> tuple[RatMatrix, RatMatrix]:
    """Full-rank factorization ``m = x.T @ y`` with inner dimension rank(m).

    ``x`` stacks the pivot columns of ``m`` (transposed) and ``y`` the
    nonzero rows of the reduced row echelon form, so both have full row
    rank.
    """
    reduced, pivots = _rref([list(r) for r in m.entries], m.cols)
    k = len(pivots)
    x = RatMatrix(k, m.rows, [[m.entries[i][c] for i in range(m.rows)] for c in pivots])
    y = RatMatrix(k, m.cols, reduced[:k])
    return x, y


def skew_canonical_congruence(s: RatMatrix) -> tuple[int, RatMatrix]:
    """Exact congruence of a skew-symmetric rational matrix to the canonical
    form ``blockdiag([[0, I_p], [-I_p, 0]], 0)``.

    Returns ``(p, t)`` with ``t`` invertible and ``t.T @ s @ t`` in canonical
    form.  Works by symplectic Gram-Schmidt over the rationals, so no square
    roots appear.
    """
    if not s.is_skew():
        raise NotSkewError("skew_canonical_congruence requires a skew matrix")
    n = s.rows

    def form(x: list[Fraction], y: list[Fraction]) -> Fraction:
        return sum((x[i] * s.entries[i][j] * y[j]
                    for i in range(n) for j in range(n) if s.entries[i][j] != 0), _ZERO)

    remaining: list[list[Fraction]] = [
        [_ONE if i == j else _ZERO for i in range(n)] for j in range(n)]
    us: list[list[Fraction]] = []
    vs: list[list[Fraction]] = []
    while True:
        found = None
        for ii in range(len(remaining)):
            for jj in range(ii + 1, len(remaining)):
                if form(remaining[ii], remaining[jj]) != 0:
                    found = (ii, jj)
                    break
            if found:
                break
        if not found:
            break
        ii, jj = found
        v = remaining.pop(jj)
        u = remaining.pop(ii)
        c = form(u, v)
        v = [x / c for x in v]
        new_rest = []
        for w in remaining:
            bu = form(u, w)
            bv = form(v, w)
            new_rest.append([wx - bu * vx + bv * ux for wx, vx, ux in zip(w, v, u)])
        remaining = new_rest
        us.append(u)
        vs.append(v)
    p = len(us)
    cols = us + vs + remaining
    t = RatMatrix(n, n, [[cols[j][i] for j in range(n)] for i in range(n)])
    return p, t


def polynomial_kernel_basis(g: PolyMatrix, degree: int) -> tuple[tuple[Poly, ...], ...]:
    """Basis of the space of polynomial vector functions ``e(z)`` of degree
    at most ``degree`` with ``g(d/dz) e = 0``.

    Sets up the coefficient equations exactly and extracts the nullspace in
    the deterministic free-variable basis of the reduced echelon form.
    Returns a tuple of vectors, each a tuple of polynomials in ``z``.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    m = g.cols
    nvars = m * (degree + 1)  # unknown c[j][t]: coefficient of z^t in component j

    # falling-factorial table: d^k/dz^k z^t = t!/(t-k)! z^(t-k)
    def ff(t: int, k: int) -> Fraction:
        out = _ONE
        for i in range(k):
            out *= t - i
        return out

    rows = []
    for i in range(g.rows):
        # row i of g applied to e, collected by output power of z
        row_coeffs: dict[int, list[Fraction]] = {}
        for j in range(m):
            entry = g.entries[i][j]
            for k, c in enumerate(entry.coeffs):
                if c == 0:
                    continue
                for t in range(k, degree + 1):
                    u = t - k
                    row = row_coeffs.setdefault(u, [_ZERO] * nvars)
                    row[j * (degree + 1) + t] += c * ff(t, k)
        for u in sorted(row_coeffs):
            rows.append(row_coeffs[u])
    if not rows:
        rows = []
    reduced, pivots = _rref(rows, nvars) if rows else ([], [])
    pivot_set = set(pivots)
    free_cols = [c for c in range(nvars) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        vec = [_ZERO] * nvars
        vec[fc] = _ONE
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][fc]
        comps = tuple(Poly(vec[j * (degree + 1):(j + 1) * (degree + 1)]) for j in range(m))
        basis.append(comps)
    return tuple(basis)
