"""Dyadic enclosures of square roots.

An integer square root computed at k fractional bits gives an interval of
width at most 2^-k that certifiably contains sqrt(a).  Refining k bit by
bit is the "compute the i-th bit" primitive that makes a single square
root easy while sums of them stay hard.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import isqrt, mpz

from .rational import Rational, is_power_of_two, mpq


def sqrt_floor(n: int) -> int:
    """Exact floor(sqrt(n)) for n >= 0."""
    n = int(n)
    if n < 0:
        raise ValueError(f"sqrt_floor expects n >= 0, got {n}")
    return int(isqrt(mpz(n)))


@dataclass(frozen=True)
class DyadicInterval:
    """A closed interval [lo, hi] whose endpoints have power-of-two
    denominators. Instances produced here always contain the exact real
    they approximate."""

    lo: Rational
    hi: Rational

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval: [{self.lo}, {self.hi}]")
        for end in (self.lo, self.hi):
            if not is_power_of_two(mpq(end).denominator):
                raise ValueError(f"endpoint {end} is not dyadic")

    @property
    def width(self) -> Rational:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def midpoint(self) -> Rational:
        return (self.lo + self.hi) / 2


@lru_cache(maxsize=None)
def _isqrt_shifted(a: int, bits: int) -> int:
    """floor(2^bits * sqrt(a)), the workhorse shared by every enclosure."""
    return int(isqrt(mpz(a) << (2 * bits)))


def sqrt_interval(a: int, k: int) -> DyadicInterval:
    """An interval of width <= 2^-k containing sqrt(a), for a >= 1.

    Refinement is monotone: the interval at k+1 bits is contained in the
    interval at k bits (floor(2x) >= 2*floor(x) and floor(2x)+1 <= 2*(floor(x)+1)).
    Perfect squares collapse to a point.
    """
    a = int(a)
    if a < 1:
        raise ValueError(f"sqrt_interval expects a >= 1, got {a}")
    if k < 0:
        raise ValueError(f"precision must be >= 0, got {k}")
    m = _isqrt_shifted(a, k)
    scale = 1 << k
    if m * m == a << (2 * k):
        exact = mpq(m, scale)
        return DyadicInterval(exact, exact)
    return DyadicInterval(mpq(m, scale), mpq(m + 1, scale))


def sqrt_bounds(a: int, bits: int) -> tuple[Rational, Rational]:
    """Raw (lo, hi) rational bounds on sqrt(a), avoiding dataclass overhead
    in refinement loops. Same enclosure as :func:`sqrt_interval`."""
    m = _isqrt_shifted(int(a), bits)
    scale = 1 << bits
    return mpq(m, scale), mpq(m + 1, scale)


__all__ = ["DyadicInterval", "sqrt_floor", "sqrt_interval", "sqrt_bounds"]
