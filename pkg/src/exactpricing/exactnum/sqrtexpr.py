"""Canonical linear combinations of square roots.

A :class:`SqrtExpr` stores q + sum(r_d * sqrt(d)) with every d square-free
and >= 2 and every r_d nonzero.  Square roots of distinct square-free
integers are linearly independent over the rationals, so this normal form
is canonical: two expressions are equal as real numbers exactly when they
are equal field by field.  In particular "is it zero?" is a purely
symbolic question, which is what makes exact sign determination possible:
a nonzero normal form can be separated from zero by refining dyadic
enclosures, and the refinement is guaranteed to terminate.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from math import gcd
from typing import Iterable, Union

from .factorint import DEFAULT_BUDGET, FactorBudget, square_free_decompose
from .intervals import sqrt_bounds
from .rational import Rational, RationalLike, ZERO, mpq, mpz, rat

_SCALARS = (int, type(mpq()), type(mpz()))

INITIAL_SIGN_BITS = 64


class Sign(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


class Comparison(Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"


@dataclass(frozen=True)
class SqrtTerm:
    """One addend coefficient * sqrt(radicand), prior to normalization."""

    coefficient: Rational
    radicand: int

    def __post_init__(self) -> None:
        if int(self.radicand) < 0:
            raise ValueError(f"radicand must be >= 0, got {self.radicand}")


@dataclass(frozen=True)
class SignStats:
    """Diagnostic record of one sign determination."""

    sign: Sign
    rounds: int
    bits: int


class SqrtExpr:
    """Immutable normal-form value q + sum(r_d * sqrt(d)).

    Supports +, -, * with other expressions, rationals and ints (products
    of square roots reduce by gcd, so multiplication never needs to
    factor), division by nonzero rationals, and exact comparisons.
    """

    __slots__ = ("rational_part", "terms", "_hash")

    rational_part: Rational
    terms: tuple[tuple[int, Rational], ...]

    def __init__(self, rational_part: RationalLike = 0,
                 terms: Iterable[tuple[int, RationalLike]] = ()) -> None:
        cleaned: dict[int, Rational] = {}
        for d, c in terms:
            c = mpq(c)
            if c == 0:
                continue
            d = int(d)
            if d < 2:
                raise ValueError(f"term radicand must be square-free >= 2, got {d}")
            if d in cleaned:
                raise ValueError(f"duplicate radicand {d}")
            cleaned[d] = c
        object.__setattr__(self, "rational_part", mpq(rational_part))
        object.__setattr__(self, "terms", tuple(sorted(cleaned.items())))
        object.__setattr__(self, "_hash", None)

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_rational(cls, q: RationalLike) -> "SqrtExpr":
        return cls(rat(q))

    @classmethod
    def sqrt(cls, n: int, budget: FactorBudget = DEFAULT_BUDGET) -> "SqrtExpr":
        """Exact sqrt(n) for integer n >= 0, in normal form."""
        return normalize([SqrtTerm(mpq(1), int(n))], budget)

    @classmethod
    def _raw(cls, rational_part: Rational,
             terms: dict[int, Rational]) -> "SqrtExpr":
        out = cls.__new__(cls)
        object.__setattr__(out, "rational_part", rational_part)
        object.__setattr__(
            out, "terms",
            tuple(sorted((d, c) for d, c in terms.items() if c != 0)),
        )
        object.__setattr__(out, "_hash", None)
        return out

    def __setattr__(self, name, value):  # pragma: no cover - safety net
        raise AttributeError("SqrtExpr is immutable")

    # -- queries ----------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return not self.terms

    def as_rational(self) -> Rational:
        if self.terms:
            raise ValueError(f"{self} is irrational")
        return self.rational_part

    def bounds(self, bits: int) -> tuple[Rational, Rational]:
        """Exact rational bounds lo <= value <= hi from dyadic sqrt
        enclosures at the given precision."""
        lo = hi = self.rational_part
        for d, c in self.terms:
            slo, shi = sqrt_bounds(d, bits)
            if c > 0:
                lo += c * slo
                hi += c * shi
            else:
                lo += c * shi
                hi += c * slo
        return lo, hi

    def approx(self, bits: int = 128) -> float:
        """Approximate float value (midpoint of a certified enclosure)."""
        lo, hi = self.bounds(bits)
        return float((lo + hi) / 2)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(value) -> "SqrtExpr | None":
        if isinstance(value, SqrtExpr):
            return value
        if isinstance(value, _SCALARS):
            return SqrtExpr._raw(mpq(value), {})
        return None

    def __add__(self, other) -> "SqrtExpr":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self.terms)
        for d, c in other.terms:
            s = acc.get(d, ZERO) + c
            if s == 0:
                acc.pop(d, None)
            else:
                acc[d] = s
        return SqrtExpr._raw(self.rational_part + other.rational_part, acc)

    __radd__ = __add__

    def __neg__(self) -> "SqrtExpr":
        return SqrtExpr._raw(-self.rational_part,
                             {d: -c for d, c in self.terms})

    def __sub__(self, other) -> "SqrtExpr":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "SqrtExpr":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "SqrtExpr":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        racc = self.rational_part * other.rational_part
        acc: dict[int, Rational] = {}
        if other.rational_part != 0:
            for d, c in self.terms:
                acc[d] = c * other.rational_part
        if self.rational_part != 0:
            for d, c in other.terms:
                acc[d] = acc.get(d, ZERO) + c * self.rational_part
        for d1, c1 in self.terms:
            for d2, c2 in other.terms:
                # sqrt(d1)*sqrt(d2) = g*sqrt((d1/g)*(d2/g)) with g = gcd:
                # the cofactors are coprime and square-free, so their
                # product is square-free and no factoring is needed.
                g = gcd(d1, d2)
                rest = (d1 // g) * (d2 // g)
                coef = c1 * c2 * g
                if rest == 1:
                    racc += coef
                else:
                    acc[rest] = acc.get(rest, ZERO) + coef
        return SqrtExpr._raw(racc, acc)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "SqrtExpr":
        if isinstance(other, SqrtExpr):
            if not other.is_rational:
                raise TypeError("division by an irrational SqrtExpr is not supported")
            other = other.rational_part
        if isinstance(other, _SCALARS):
            q = mpq(other)
            if q == 0:
                raise ZeroDivisionError("SqrtExpr division by zero")
            return self * (1 / q)
        return NotImplemented

    # -- ordering ---------------------------------------------------------

    def sign(self) -> Sign:
        return sign(self)

    def _cmp(self, other) -> "Sign | None":
        other = self._coerce(other)
        if other is None:
            return None
        return sign(self - other)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self.rational_part == other.rational_part
                and self.terms == other.terms)

    def __lt__(self, other) -> bool:
        s = self._cmp(other)
        if s is None:
            return NotImplemented
        return s is Sign.NEGATIVE

    def __le__(self, other) -> bool:
        s = self._cmp(other)
        if s is None:
            return NotImplemented
        return s is not Sign.POSITIVE

    def __gt__(self, other) -> bool:
        s = self._cmp(other)
        if s is None:
            return NotImplemented
        return s is Sign.POSITIVE

    def __ge__(self, other) -> bool:
        s = self._cmp(other)
        if s is None:
            return NotImplemented
        return s is not Sign.NEGATIVE

    def __bool__(self) -> bool:
        return bool(self.terms) or self.rational_part != 0

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            if not self.terms:
                h = hash(self.rational_part)
            else:
                h = hash((self.rational_part, self.terms))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"SqrtExpr({self})"

    def __str__(self) -> str:
        parts = []
        if self.rational_part != 0 or not self.terms:
            parts.append(str(self.rational_part))
        for d, c in self.terms:
            if c == 1:
                chunk = f"sqrt({d})"
            elif c == -1:
                chunk = f"-sqrt({d})"
            else:
                chunk = f"{c}*sqrt({d})"
            if parts and not chunk.startswith("-"):
                parts.append(f"+ {chunk}")
            elif parts:
                parts.append(f"- {chunk[1:]}")
            else:
                parts.append(chunk)
        return " ".join(parts)


SqrtExprLike = Union[SqrtExpr, Rational, int]


def as_sqrtexpr(value: SqrtExprLike) -> SqrtExpr:
    expr = SqrtExpr._coerce(value)
    if expr is None:
        raise TypeError(f"cannot interpret {type(value).__name__} as SqrtExpr")
    return expr


def normalize(
    terms: Iterable[SqrtTerm | tuple[RationalLike, int]],
    budget: FactorBudget = DEFAULT_BUDGET,
) -> SqrtExpr:
    """Normalize a sum of coefficient*sqrt(radicand) addends.

    Each radicand a is written as s^2 * d with d square-free; s joins the
    coefficient, and sqrt(1) folds into the rational part.  Coefficients
    on the same kernel d accumulate, and exact cancellations disappear.

    Raises:
        InstanceTooLarge: a radicand exceeded the factoring budget.
    """
    racc = ZERO
    acc: dict[int, Rational] = {}
    for term in terms:
        if isinstance(term, SqrtTerm):
            coef, radicand = term.coefficient, term.radicand
        else:
            coef, radicand = term
        coef = mpq(coef)
        radicand = int(radicand)
        if radicand < 0:
            raise ValueError(f"radicand must be >= 0, got {radicand}")
        if coef == 0 or radicand == 0:
            continue
        s, d = square_free_decompose(radicand, budget)
        if d == 1:
            racc += coef * s
        else:
            acc[d] = acc.get(d, ZERO) + coef * s
    return SqrtExpr._raw(racc, acc)


def sign_with_stats(expr: SqrtExprLike) -> SignStats:
    """Exact sign with refinement diagnostics.

    Zero is recognized symbolically (empty normal form), so the interval
    refinement below only ever runs on expressions that are provably
    nonzero as reals; doubling the precision therefore terminates.  The
    number of rounds is reported because instances exist that need many.
    """
    expr = as_sqrtexpr(expr)
    if expr.is_rational:
        q = expr.rational_part
        s = Sign.POSITIVE if q > 0 else Sign.NEGATIVE if q < 0 else Sign.ZERO
        return SignStats(s, rounds=0, bits=0)
    bits = INITIAL_SIGN_BITS
    rounds = 0
    while True:
        rounds += 1
        lo, hi = expr.bounds(bits)
        if lo > 0:
            return SignStats(Sign.POSITIVE, rounds, bits)
        if hi < 0:
            return SignStats(Sign.NEGATIVE, rounds, bits)
        bits *= 2


def sign(expr: SqrtExprLike) -> Sign:
    """Exact sign of a normal-form expression: -1, 0, or +1."""
    return sign_with_stats(expr).sign


def sqrtsum_compare(
    a: Iterable[int], k: int, budget: FactorBudget = DEFAULT_BUDGET
) -> Comparison:
    """Exact trichotomy of sum(sqrt(a_i)) versus the integer K.

    Equality holds exactly when the normal form of the difference is
    empty, i.e. when every a_i is a perfect square and the integer sum
    equals K.
    """
    terms = []
    for value in a:
        value = int(value)
        if value < 1:
            raise ValueError(f"sqrtsum_compare expects positive integers, got {value}")
        terms.append((mpq(1), value))
    if int(k) < 1:
        raise ValueError(f"K must be >= 1, got {k}")
    diff = normalize(terms, budget) - int(k)
    s = sign(diff)
    if s is Sign.ZERO:
        return Comparison.EQUAL
    return Comparison.GREATER if s is Sign.POSITIVE else Comparison.LESS


__all__ = [
    "Comparison",
    "Sign",
    "SignStats",
    "SqrtExpr",
    "SqrtExprLike",
    "SqrtTerm",
    "as_sqrtexpr",
    "normalize",
    "sign",
    "sign_with_stats",
    "sqrtsum_compare",
]
