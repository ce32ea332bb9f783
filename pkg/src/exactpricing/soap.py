"""Optimal single-price selling of an attribute sum.

The seller posts one price P; the buyer pays it exactly when the sum of
attribute values reaches P.  Expected revenue P * P[sum >= P] is piecewise
linear in P and increasing between support points of the sum, so it is
maximized on the support; the optimizer scans those candidates exactly.
Pricing the grand bundle for an additive buyer with independent item
values is the same computation, exposed under the item-flavored alias.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .distmodel import (
    DEFAULT_STATE_BUDGET,
    SoapInstance,
    SurvivalTable,
    TwoPointAttribute,
    sum_distribution,
)
from .errors import InvalidInstance
from .exactnum import Rational, RationalLike, rat
from .exactnum.rational import ZERO


@dataclass(frozen=True)
class PriceReport:
    """Outcome of an exact price search.

    ``revenue`` equals ``price * P[sum >= price]`` exactly, and is at
    least the revenue of every candidate on the curve. Ties are broken
    toward the lowest price.
    """

    price: int
    revenue: Rational
    curve: tuple[tuple[int, Rational], ...] | None = None


def revenue_at(
    instance: SoapInstance,
    price: RationalLike,
    budget: int = DEFAULT_STATE_BUDGET,
) -> Rational:
    """Exact expected revenue at an arbitrary nonnegative rational price."""
    return revenue_from_table(sum_distribution(instance, budget), price)


def revenue_from_table(table: SurvivalTable, price: RationalLike) -> Rational:
    price = rat(price)
    if price < 0:
        raise InvalidInstance(f"price must be nonnegative, got {price}")
    return price * table.survival(price)


def optimal_price(
    instance: SoapInstance,
    include_curve: bool = False,
    budget: int = DEFAULT_STATE_BUDGET,
) -> PriceReport:
    """Exact revenue-maximizing price.

    Candidates are the support points of the sum distribution, excluding
    zero: revenue at price 0 is 0, and between adjacent support points the
    tail is constant so revenue rises toward the right endpoint.
    """
    return optimal_price_from_table(sum_distribution(instance, budget),
                                    include_curve=include_curve)


def optimal_price_from_table(
    table: SurvivalTable, include_curve: bool = False
) -> PriceReport:
    best_price = 0
    best_revenue = ZERO
    curve: list[tuple[int, Rational]] = []
    for point in table.points:
        if point.sum == 0:
            continue
        revenue = point.sum * point.tail
        if include_curve:
            curve.append((point.sum, revenue))
        if revenue > best_revenue:
            best_price = point.sum
            best_revenue = revenue
    return PriceReport(
        price=best_price,
        revenue=best_revenue,
        curve=tuple(curve) if include_curve else None,
    )


def grand_bundle_price(
    items: Sequence[TwoPointAttribute],
    include_curve: bool = False,
    budget: int = DEFAULT_STATE_BUDGET,
) -> PriceReport:
    """Optimal take-it-or-leave-it price for the bundle of all items, for
    an additive buyer with independent two-point item values."""
    return optimal_price(SoapInstance(items), include_curve, budget)


@dataclass(frozen=True)
class McRevenue:
    """Monte-Carlo revenue estimate. ``estimate`` is the exact rational
    price * accepted/samples; ``std_error`` is the usual binomial
    approximation, reported as a float for orientation only."""

    estimate: Rational
    std_error: float
    accepted: int
    samples: int


def mc_revenue(
    instance: SoapInstance,
    price: RationalLike,
    samples: int,
    seed: int,
) -> McRevenue:
    """Unbiased sampled estimate of revenue_at, deterministic per seed.

    Each attribute is sampled by an exact Bernoulli draw (an integer below
    the probability's denominator compared against its numerator), so no
    float bias enters the acceptance decision.
    """
    if samples < 1:
        raise InvalidInstance(f"samples must be >= 1, got {samples}")
    price = rat(price)
    if price < 0:
        raise InvalidInstance(f"price must be nonnegative, got {price}")
    rng = random.Random(seed)
    draws = [
        (a.high, a.low, int(a.p_high.numerator), int(a.p_high.denominator))
        for a in instance.attributes
    ]
    accepted = 0
    for _ in range(samples):
        total = 0
        for high, low, num, den in draws:
            total += high if rng.randrange(den) < num else low
        if total >= price:
            accepted += 1
    estimate = price * rat(accepted, samples)
    p_hat = accepted / samples
    std_error = float(price) * (p_hat * (1 - p_hat) / samples) ** 0.5
    return McRevenue(estimate, std_error, accepted, samples)


__all__ = [
    "McRevenue",
    "PriceReport",
    "grand_bundle_price",
    "mc_revenue",
    "optimal_price",
    "optimal_price_from_table",
    "revenue_at",
    "revenue_from_table",
]
