"""Exact rational scalars.

Every probability, price, and revenue in this package is a ``gmpy2.mpq``:
an arbitrary-precision fraction kept in lowest terms with a positive
denominator.  This module pins the alias and provides the handful of
helpers (parsing, formatting, rounding) the rest of the package needs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from gmpy2 import mpq, mpz

Rational = mpq
RationalLike = Union[mpq, int, str, Fraction]

ZERO = mpq(0)
ONE = mpq(1)
HALF = mpq(1, 2)


def rat(numerator: RationalLike, denominator: int = 1) -> Rational:
    """Build an exact rational. Accepts ints, "num/den" strings, Fractions."""
    if denominator != 1:
        return mpq(numerator, denominator)
    if isinstance(numerator, Fraction):
        return mpq(numerator.numerator, numerator.denominator)
    return mpq(numerator)


def parse_rational(text: RationalLike) -> Rational:
    """Parse the wire format: "num/den" (or a bare integer string / int)."""
    if isinstance(text, (int, mpq)):
        return mpq(text)
    if isinstance(text, Fraction):
        return mpq(text.numerator, text.denominator)
    if isinstance(text, str):
        try:
            return mpq(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {text!r}") from exc
    raise TypeError(f"cannot parse rational from {type(text).__name__}")


def rational_str(q: RationalLike) -> str:
    """Serialize as "numerator/denominator", always with the slash."""
    q = mpq(q)
    return f"{q.numerator}/{q.denominator}"


def floor_div(q: Rational) -> int:
    """Exact floor of a rational."""
    return int(q.numerator // q.denominator)


def round_nearest(q: Rational) -> int:
    """Round to the nearest integer, halves toward +infinity."""
    return floor_div(q + HALF)


def is_integral(q: Rational) -> bool:
    return mpq(q).denominator == 1


def is_power_of_two(n: int) -> bool:
    n = int(n)
    return n >= 1 and (n & (n - 1)) == 0


__all__ = [
    "Rational",
    "RationalLike",
    "ZERO",
    "ONE",
    "HALF",
    "mpq",
    "mpz",
    "rat",
    "parse_rational",
    "rational_str",
    "floor_div",
    "round_nearest",
    "is_integral",
    "is_power_of_two",
]
