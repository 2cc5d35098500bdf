"""Exact arithmetic over Q and real biquadratic extensions Q(sqrt(d1), sqrt(d2)).

Every geometric coordinate in this project lives in one of these fields, so
all downstream predicates (orientation signs, containment, intersection) are
decided exactly, with no floating point on the decision path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Rational = Fraction


class ContextMismatchError(ValueError):
    """Raised when combining values from different field contexts."""


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or a decimal string like "2.8" as an exact rational."""
    return Fraction(text.strip())


def _is_square_free(n: int) -> bool:
    if n < 1:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class FieldContext:
    """The field Q(sqrt(d1), sqrt(d2)); d2 = 1 degenerates to Q(sqrt(d1))."""

    d1: int
    d2: int

    def __post_init__(self):
        if not _is_square_free(self.d1) or not _is_square_free(self.d2):
            raise ValueError(f"context radicands must be square-free positive: {self}")
        if self.d1 == self.d2 and self.d1 != 1:
            raise ValueError(f"context radicands must differ: {self}")

    @property
    def degenerate(self) -> bool:
        return self.d2 == 1


QQ = FieldContext(1, 1)
CTX_SQRT2_SQRT3 = FieldContext(2, 3)
CTX_SQRT5 = FieldContext(5, 1)


def _sgn(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _sign_quad(p: Fraction, q: Fraction, d: int) -> int:
    """Exact sign of p + q*sqrt(d)."""
    if d == 1:
        return _sgn(p + q)
    sp, sq = _sgn(p), _sgn(q)
    if sq == 0:
        return sp
    if sp == 0:
        return sq
    if sp == sq:
        return sp
    # opposite signs: compare p^2 against d*q^2
    return sp * _sgn(p * p - d * q * q)


class QuadExt:
    """An element a + b*sqrt(d1) + c*sqrt(d2) + e*sqrt(d1*d2) of a fixed context.

    Immutable; coefficients are arbitrary-precision rationals.  Degenerate
    contexts (d2 = 1, or d1 = 1) fold the redundant basis coefficients at
    construction time so equality and hashing stay canonical.
    """

    __slots__ = ("a", "b", "c", "e", "ctx")

    def __init__(self, a, b=0, c=0, e=0, ctx: FieldContext = QQ):
        a, b, c, e = Fraction(a), Fraction(b), Fraction(c), Fraction(e)
        if ctx.d2 == 1:
            a, c = a + c, Fraction(0)
            b, e = b + e, Fraction(0)
        if ctx.d1 == 1:
            a, b = a + b, Fraction(0)
            c, e = c + e, Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "ctx", ctx)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.ctx != self.ctx:
                raise ContextMismatchError(
                    f"cannot combine contexts {self.ctx} and {other.ctx}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, ctx=self.ctx)
        return NotImplemented

    # -- ring / field operations -----------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.c + o.c, self.e + o.e, self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, -self.c, -self.e, self.ctx)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.c - o.c, self.e - o.e, self.ctx)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d1, d2 = self.ctx.d1, self.ctx.d2
        a1, b1, c1, e1 = self.a, self.b, self.c, self.e
        a2, b2, c2, e2 = o.a, o.b, o.c, o.e
        return QuadExt(
            a1 * a2 + d1 * b1 * b2 + d2 * c1 * c2 + d1 * d2 * e1 * e2,
            a1 * b2 + b1 * a2 + d2 * (c1 * e2 + e1 * c2),
            a1 * c2 + c1 * a2 + d1 * (b1 * e2 + e1 * b2),
            a1 * e2 + e1 * a2 + b1 * c2 + c1 * b2,
            self.ctx,
        )

    __rmul__ = __mul__

    def conj_d2(self) -> "QuadExt":
        """Galois conjugate negating sqrt(d2)."""
        return QuadExt(self.a, self.b, -self.c, -self.e, self.ctx)

    def conj_d1(self) -> "QuadExt":
        """Galois conjugate negating sqrt(d1)."""
        return QuadExt(self.a, -self.b, self.c, -self.e, self.ctx)

    def inverse(self) -> "QuadExt":
        if self.is_zero():
            raise ZeroDivisionError("QuadExt division by zero")
        # push down the tower: x * conj_d2(x) lies in Q(sqrt(d1))
        n2 = self * self.conj_d2()
        p, q, d1 = n2.a, n2.b, self.ctx.d1
        norm = p * p - d1 * q * q  # rational, nonzero for nonzero x
        inv_n2 = QuadExt(p / norm, -q / norm, ctx=self.ctx)
        return self.conj_d2() * inv_n2

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.e)

    def sign(self) -> int:
        """Exact sign by recursive descent through the field tower."""
        d1, d2 = self.ctx.d1, self.ctx.d2
        s_x = _sign_quad(self.a, self.b, d1)
        s_y = _sign_quad(self.c, self.e, d1)
        if s_y == 0:
            return s_x
        if s_x == 0:
            return s_y
        if s_x == s_y:
            return s_x
        # x = X + Y*sqrt(d2) with sign(X) = -sign(Y): compare X^2 vs d2*Y^2
        x2a = self.a * self.a + d1 * self.b * self.b
        x2b = 2 * self.a * self.b
        y2a = self.c * self.c + d1 * self.e * self.e
        y2b = 2 * self.c * self.e
        return s_x * _sign_quad(x2a - d2 * y2a, x2b - d2 * y2b, d1)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadExt(other, ctx=self.ctx)
        if not isinstance(other, QuadExt):
            return NotImplemented
        return self.ctx == other.ctx and (
            self.a == other.a and self.b == other.b
            and self.c == other.c and self.e == other.e
        )

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.e, self.ctx))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return not self.is_zero()

    # -- conversion -------------------------------------------------------

    def __float__(self):
        d1, d2 = self.ctx.d1, self.ctx.d2
        return (
            float(self.a)
            + float(self.b) * math.sqrt(d1)
            + float(self.c) * math.sqrt(d2)
            + float(self.e) * math.sqrt(d1 * d2)
        )

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.e)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.a

    def __repr__(self):
        d1, d2 = self.ctx.d1, self.ctx.d2
        parts = [str(self.a)] if self.a or self.is_zero() else []
        for coef, rad in ((self.b, d1), (self.c, d2), (self.e, d1 * d2)):
            if coef:
                parts.append(f"{coef}√{rad}")
        return " + ".join(parts).replace("+ -", "- ")


def sqrt_d1(ctx: FieldContext) -> QuadExt:
    return QuadExt(0, 1, ctx=ctx)


def sqrt_d2(ctx: FieldContext) -> QuadExt:
    return QuadExt(0, 0, 1, ctx=ctx)


def sqrt_d1d2(ctx: FieldContext) -> QuadExt:
    return QuadExt(0, 0, 0, 1, ctx=ctx)


# -- exact linear algebra --------------------------------------------------

@dataclass
class LinearSolution:
    """Outcome of exact Gaussian elimination on A x = rhs.

    kind is "unique", "parametric" or "inconsistent".  For solvable systems,
    ``particular`` is one solution and ``nullspace`` spans the homogeneous
    solutions (empty for unique solutions).
    """

    kind: str
    rank: int
    particular: list | None = None
    nullspace: list | None = None


def solve_linear(matrix: Sequence[Sequence[QuadExt]], rhs: Sequence[QuadExt]) -> LinearSolution:
    """Exact Gaussian elimination over one QuadExt context."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    aug = [list(row) + [r] for row, r in zip(matrix, rhs)]

    pivot_cols = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, m) if not aug[r][col].is_zero()), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        inv = aug[row][col].inverse()
        aug[row] = [x * inv for x in aug[row]]
        for r in range(m):
            if r != row and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivot_cols.append(col)
        row += 1
        if row == m:
            break

    rank = len(pivot_cols)
    for r in range(rank, m):
        if not aug[r][n].is_zero():
            return LinearSolution("inconsistent", rank)

    zero = None
    if m:
        ctx = next(
            (x.ctx for r in aug for x in r if isinstance(x, QuadExt)), QQ
        )
        zero = QuadExt(0, ctx=ctx)
    particular = [zero] * n
    for i, col in enumerate(pivot_cols):
        particular[col] = aug[i][n]

    free_cols = [c for c in range(n) if c not in pivot_cols]
    if not free_cols:
        return LinearSolution("unique", rank, particular, [])

    nullspace = []
    one = QuadExt(1, ctx=zero.ctx) if zero is not None else None
    for fc in free_cols:
        vec = [zero] * n
        vec[fc] = one
        for i, col in enumerate(pivot_cols):
            vec[col] = -aug[i][fc]
        nullspace.append(vec)
    return LinearSolution("parametric", rank, particular, nullspace)
