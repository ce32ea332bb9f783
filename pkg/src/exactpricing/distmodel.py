"""Sums of independent two-point random variables, exactly.

Each attribute takes one of two nonnegative integer values; the sum's
distribution is computed by sparse dynamic-programming convolution with
exact rational masses.  A brute-force enumerator over all 2^n outcomes is
provided as the independent oracle for the convolution.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetExceeded, InvalidInstance, TooManyAttributes
from .exactnum import Rational, RationalLike, rat
from .exactnum.rational import ONE, ZERO

# Sparse DP states allowed per convolution, not a byte count: instances
# whose sum support would exceed this fail loudly instead of thrashing.
DEFAULT_STATE_BUDGET = 10_000_000

ENUMERATION_CAP = 20


@dataclass(frozen=True)
class TwoPointAttribute:
    """Random variable equal to ``high`` with probability ``p_high`` and
    ``low`` otherwise. Both values are nonnegative integers; ``high`` is
    simply the value attached to ``p_high`` and need not exceed ``low``."""

    high: int
    low: int
    p_high: Rational

    def __post_init__(self) -> None:
        if int(self.high) < 0 or int(self.low) < 0:
            raise InvalidInstance(
                f"attribute values must be nonnegative, got ({self.high}, {self.low})"
            )
        p = rat(self.p_high)
        if not 0 <= p <= 1:
            raise InvalidInstance(f"p_high must lie in [0, 1], got {p}")
        object.__setattr__(self, "high", int(self.high))
        object.__setattr__(self, "low", int(self.low))
        object.__setattr__(self, "p_high", p)

    @property
    def max_value(self) -> int:
        return max(self.high, self.low)


def attribute(high: int, low: int, p_high: RationalLike) -> TwoPointAttribute:
    """Shorthand constructor accepting "num/den" strings for the probability."""
    return TwoPointAttribute(high, low, rat(p_high))


@dataclass(frozen=True)
class SoapInstance:
    """A nonempty collection of independent two-point attributes whose sum
    is the buyer's value."""

    attributes: tuple[TwoPointAttribute, ...]

    def __init__(self, attributes: Iterable[TwoPointAttribute]) -> None:
        attrs = tuple(attributes)
        if not attrs:
            raise InvalidInstance("instance needs at least one attribute")
        object.__setattr__(self, "attributes", attrs)

    def __len__(self) -> int:
        return len(self.attributes)

    @property
    def max_sum(self) -> int:
        return sum(a.max_value for a in self.attributes)


@dataclass(frozen=True)
class SupportPoint:
    """One atom of a sum distribution: its exact mass and upper tail."""

    sum: int
    mass: Rational
    tail: Rational


class SurvivalTable:
    """Sorted support of a sum of attributes with exact masses and tails.

    Masses are positive and add to exactly 1; tail(s) = P[sum >= s], so
    tails strictly decrease along the support and the smallest point has
    tail 1.
    """

    __slots__ = ("points", "_sums")

    def __init__(self, points: Sequence[SupportPoint]) -> None:
        self.points = tuple(points)
        self._sums = [p.sum for p in self.points]

    @classmethod
    def from_masses(cls, masses: dict[int, Rational]) -> "SurvivalTable":
        support = sorted(s for s, m in masses.items() if m != 0)
        points: list[SupportPoint] = []
        tail = ZERO
        for s in reversed(support):
            tail += masses[s]
            points.append(SupportPoint(s, masses[s], tail))
        points.reverse()
        if tail != 1:
            raise InvalidInstance(f"masses sum to {tail}, expected exactly 1")
        return cls(points)

    def survival(self, threshold) -> Rational:
        """Exact P[sum >= threshold]; threshold may be any rational."""
        idx = bisect_left(self._sums, threshold)
        if idx == len(self.points):
            return ZERO
        return self.points[idx].tail

    def masses(self) -> dict[int, Rational]:
        return {p.sum: p.mass for p in self.points}

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self._sums)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SurvivalTable):
            return NotImplemented
        return self.points == other.points

    def __repr__(self) -> str:
        inner = ", ".join(f"{p.sum}: {p.mass}" for p in self.points)
        return f"SurvivalTable({{{inner}}})"


def _convolve_masses(
    masses: dict[int, Rational],
    attr: TwoPointAttribute,
    budget: int,
) -> dict[int, Rational]:
    out: dict[int, Rational] = {}
    p = attr.p_high
    q = ONE - p
    for s, m in masses.items():
        if p != 0:
            key = s + attr.high
            out[key] = out.get(key, ZERO) + m * p
        if q != 0:
            key = s + attr.low
            out[key] = out.get(key, ZERO) + m * q
    if len(out) > budget:
        raise BudgetExceeded(
            f"{len(out)} DP states exceed the budget of {budget}"
        )
    return out


def sum_distribution(
    instance: SoapInstance, budget: int = DEFAULT_STATE_BUDGET
) -> SurvivalTable:
    """Exact distribution of the attribute sum, one convolution step per
    attribute over the sparse set of achievable sums."""
    if instance.max_sum + 1 > budget:
        raise BudgetExceeded(
            f"sum range 0..{instance.max_sum} exceeds the budget of {budget}"
        )
    masses: dict[int, Rational] = {0: ONE}
    for attr in instance.attributes:
        masses = _convolve_masses(masses, attr, budget)
    return SurvivalTable.from_masses(masses)


def convolve(
    table: SurvivalTable,
    attr: TwoPointAttribute,
    budget: int = DEFAULT_STATE_BUDGET,
) -> SurvivalTable:
    """Extend an existing sum distribution by one more independent
    attribute. Equivalent to recomputing from scratch with the attribute
    appended."""
    masses = _convolve_masses(table.masses(), attr, budget)
    return SurvivalTable.from_masses(masses)


def survival(
    instance: SoapInstance, threshold, budget: int = DEFAULT_STATE_BUDGET
) -> Rational:
    """Exact P[sum of attributes >= threshold]."""
    if threshold < 0:
        raise InvalidInstance(f"threshold must be nonnegative, got {threshold}")
    return sum_distribution(instance, budget).survival(threshold)


def enumerate_outcomes(
    instance: SoapInstance,
) -> list[tuple[int, Rational]]:
    """All 2^n (sum, probability) outcomes, unaggregated.

    The first attribute varies slowest and the high branch precedes the
    low branch. Probability-zero outcomes are kept; this is the oracle
    the convolution is tested against, so it stays maximally literal.
    """
    n = len(instance)
    if n > ENUMERATION_CAP:
        raise TooManyAttributes(
            f"{n} attributes exceed the enumeration cap of {ENUMERATION_CAP}"
        )
    branches = [
        ((a.high, a.p_high), (a.low, ONE - a.p_high))
        for a in instance.attributes
    ]
    outcomes = []
    for combo in itertools.product(*branches):
        total = 0
        prob = ONE
        for value, p in combo:
            total += value
            prob *= p
        outcomes.append((total, prob))
    return outcomes


def aggregate_outcomes(
    outcomes: Iterable[tuple[int, Rational]],
) -> dict[int, Rational]:
    """Collapse enumerated outcomes into masses, dropping zero-probability
    entries; aggregating and tabulating must reproduce sum_distribution."""
    masses: dict[int, Rational] = {}
    for total, prob in outcomes:
        if prob != 0:
            masses[total] = masses.get(total, ZERO) + prob
    return masses


__all__ = [
    "DEFAULT_STATE_BUDGET",
    "ENUMERATION_CAP",
    "SoapInstance",
    "SupportPoint",
    "SurvivalTable",
    "TwoPointAttribute",
    "aggregate_outcomes",
    "attribute",
    "convolve",
    "enumerate_outcomes",
    "sum_distribution",
    "survival",
]
