"""Exact unit-demand pricing over independent two-point items.

Item values and prices are square-root expressions; every comparison a
buyer makes goes through exact sign determination, never floating point.
Expected revenue of a price vector is the exact sum over all 2^n value
profiles of profile probability times the price of the chosen item.

Purchase convention: the buyer buys the utility-maximizing item whenever
the best utility is >= 0, breaking ties by the configured rule and then
by lowest index.  Buying at exactly zero utility is what makes posting an
item's own value as its price collect that value with certainty, and the
scheme revenues of the reduction pipelines rely on it; the convention is
pinned by ``ZERO_UTILITY_BUYS`` and can be overridden per call for the
strict (utility > 0) reading.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence, Union

from .errors import InvalidInstance, SearchTooLarge, TooManyItems
from .exactnum import Rational, Sign, SqrtExpr, SqrtExprLike, as_sqrtexpr, sign
from .exactnum.rational import ONE, ZERO, mpq

ITEM_CAP = 20
SEARCH_CAP = 1_000_000

# The buyer buys at zero utility (ties between buying and walking away go
# to the seller). Flip per call via zero_utility_buys= for the strict rule.
ZERO_UTILITY_BUYS = True


class _UnpricedType:
    """Singleton marker for an item offered at infinite price."""

    _instance = None

    def __new__(cls) -> "_UnpricedType":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNPRICED"


UNPRICED = _UnpricedType()

Price = Union[SqrtExpr, _UnpricedType]
PriceVector = tuple[Price, ...]


class TieBreak(Enum):
    """How the buyer resolves ties among utility maximizers. Further ties
    go to the lowest index."""

    MOST_EXPENSIVE = "expensive"
    CHEAPEST = "cheapest"
    LOWEST_INDEX = "index"


DEFAULT_TIE = TieBreak.MOST_EXPENSIVE


def as_price(value) -> Price:
    if isinstance(value, _UnpricedType):
        return UNPRICED
    return as_sqrtexpr(value)


def price_vector(prices: Iterable) -> PriceVector:
    return tuple(as_price(p) for p in prices)


def _as_probability(p) -> Rational | SqrtExpr:
    """Keep probabilities rational when they are, for cheap products."""
    if isinstance(p, SqrtExpr):
        if p.is_rational:
            return p.rational_part
        return p
    return mpq(p)


@dataclass(frozen=True)
class TwoPointItem:
    """Item worth ``high`` with probability ``p_high`` and ``low``
    otherwise; values are square-root expressions with low <= high, and
    the probability may itself be irrational."""

    high: SqrtExpr
    low: SqrtExpr
    p_high: Rational | SqrtExpr

    def __init__(self, high: SqrtExprLike, low: SqrtExprLike, p_high) -> None:
        high = as_sqrtexpr(high)
        low = as_sqrtexpr(low)
        p = _as_probability(p_high)
        if isinstance(p, SqrtExpr):
            if sign(p) is Sign.NEGATIVE or sign(1 - p) is Sign.NEGATIVE:
                raise InvalidInstance(f"p_high must lie in [0, 1], got {p}")
        elif not 0 <= p <= 1:
            raise InvalidInstance(f"p_high must lie in [0, 1], got {p}")
        if sign(high - low) is Sign.NEGATIVE:
            raise InvalidInstance(f"low value {low} exceeds high value {high}")
        object.__setattr__(self, "high", high)
        object.__setattr__(self, "low", low)
        object.__setattr__(self, "p_high", p)


def _select(
    order: Sequence[int],
    utility_cmp,
    price_cmp,
    utility_sign,
    tie: TieBreak,
    zero_utility_buys: bool,
) -> int | None:
    """Pick the purchased index among priced candidates, or None.

    ``utility_cmp(i, j)`` and ``price_cmp(i, j)`` return the exact sign of
    the corresponding difference; ``utility_sign(i)`` the sign of i's
    utility. Iteration order is ascending, so keeping the incumbent on
    exact ties yields lowest-index resolution.
    """
    best: int | None = None
    for i in order:
        if best is None:
            best = i
            continue
        c = utility_cmp(i, best)
        if c > 0:
            best = i
        elif c == 0:
            if tie is TieBreak.MOST_EXPENSIVE and price_cmp(i, best) > 0:
                best = i
            elif tie is TieBreak.CHEAPEST and price_cmp(i, best) < 0:
                best = i
    if best is None:
        return None
    s = utility_sign(best)
    if s is Sign.POSITIVE or (s is Sign.ZERO and zero_utility_buys):
        return best
    return None


def buyer_choice(
    values: Sequence[SqrtExprLike],
    prices: Sequence,
    tie: TieBreak = DEFAULT_TIE,
    zero_utility_buys: bool | None = None,
) -> int | None:
    """Index of the item the buyer purchases, or None for no purchase.

    The buyer maximizes value minus price over priced items; unpriced
    items are never chosen. Purchase requires the best utility to be
    >= 0 (or > 0 when zero_utility_buys is False).
    """
    if len(values) != len(prices):
        raise InvalidInstance("values and prices must have matching lengths")
    if zero_utility_buys is None:
        zero_utility_buys = ZERO_UTILITY_BUYS
    values = [as_sqrtexpr(v) for v in values]
    prices = price_vector(prices)
    utilities: dict[int, SqrtExpr] = {
        i: values[i] - p
        for i, p in enumerate(prices)
        if not isinstance(p, _UnpricedType)
    }
    return _select(
        sorted(utilities),
        lambda i, j: int(sign(utilities[i] - utilities[j])),
        lambda i, j: int(sign(prices[i] - prices[j])),
        lambda i: sign(utilities[i]),
        tie,
        zero_utility_buys,
    )


def expected_revenue(
    items: Sequence[TwoPointItem],
    prices: Sequence,
    tie: TieBreak = DEFAULT_TIE,
    zero_utility_buys: bool | None = None,
) -> SqrtExpr:
    """Exact expected revenue of a price vector.

    Enumerates all 2^n value profiles depth-first (zero-probability
    branches pruned), resolves each buyer choice through cached exact
    comparisons, and accumulates the probability of each item being
    bought; revenue is then the price-weighted sum of those masses.
    Deterministic: the accumulation order is fixed.
    """
    n = len(items)
    if n > ITEM_CAP:
        raise TooManyItems(f"{n} items exceed the cap of {ITEM_CAP}")
    if len(prices) != n:
        raise InvalidInstance("price vector length must match item count")
    if zero_utility_buys is None:
        zero_utility_buys = ZERO_UTILITY_BUYS
    prices = price_vector(prices)

    values = [(item.high, item.low) for item in items]
    factors = []
    for item in items:
        p = item.p_high
        factors.append((p, ONE - p if not isinstance(p, SqrtExpr) else 1 - p))
    priced = [i for i, p in enumerate(prices) if not isinstance(p, _UnpricedType)]
    utilities = {
        (i, s): values[i][s] - prices[i] for i in priced for s in (0, 1)
    }

    ucmp_cache: dict[tuple[int, int, int, int], int] = {}
    usign_cache: dict[tuple[int, int], Sign] = {}
    pcmp_cache: dict[tuple[int, int], int] = {}
    states = [0] * n

    def ucmp(i: int, j: int) -> int:
        key = (i, states[i], j, states[j])
        hit = ucmp_cache.get(key)
        if hit is None:
            hit = int(sign(utilities[i, states[i]] - utilities[j, states[j]]))
            ucmp_cache[key] = hit
        return hit

    def usign(i: int) -> Sign:
        key = (i, states[i])
        hit = usign_cache.get(key)
        if hit is None:
            hit = sign(utilities[i, states[i]])
            usign_cache[key] = hit
        return hit

    def pcmp(i: int, j: int) -> int:
        hit = pcmp_cache.get((i, j))
        if hit is None:
            hit = int(sign(prices[i] - prices[j]))
            pcmp_cache[(i, j)] = hit
        return hit

    bought = {i: ZERO for i in priced}

    def recurse(idx: int, prob) -> None:
        if idx == n:
            choice = _select(priced, ucmp, pcmp, usign, tie, zero_utility_buys)
            if choice is not None:
                bought[choice] = bought[choice] + prob
            return
        p_hi, p_lo = factors[idx]
        if p_hi != 0:
            states[idx] = 0
            recurse(idx + 1, prob * p_hi)
        if p_lo != 0:
            states[idx] = 1
            recurse(idx + 1, prob * p_lo)

    recurse(0, ONE)
    revenue = SqrtExpr()
    for i in priced:
        if bought[i] != 0:
            revenue = revenue + prices[i] * bought[i]
    return as_sqrtexpr(revenue)


def best_over_candidates(
    items: Sequence[TwoPointItem],
    candidate_sets: Sequence[Sequence],
    tie: TieBreak = DEFAULT_TIE,
    zero_utility_buys: bool | None = None,
) -> tuple[PriceVector, SqrtExpr]:
    """Exact maximizer of expected revenue over the Cartesian product of
    per-item candidate price sets; ties go to the lexicographically first
    vector in the given ordering."""
    n = len(items)
    if n > ITEM_CAP:
        raise TooManyItems(f"{n} items exceed the cap of {ITEM_CAP}")
    if len(candidate_sets) != n:
        raise InvalidInstance("need one candidate set per item")
    normalized = [tuple(as_price(p) for p in cands) for cands in candidate_sets]
    total = 1
    for cands in normalized:
        if not cands:
            raise InvalidInstance("candidate sets must be nonempty")
        total *= len(cands)
    if total > SEARCH_CAP:
        raise SearchTooLarge(f"{total} price vectors exceed the cap of {SEARCH_CAP}")
    best_vector: PriceVector | None = None
    best_revenue: SqrtExpr | None = None
    for vector in itertools.product(*normalized):
        revenue = expected_revenue(items, vector, tie, zero_utility_buys)
        if best_revenue is None or sign(revenue - best_revenue) is Sign.POSITIVE:
            best_vector = vector
            best_revenue = revenue
    assert best_vector is not None and best_revenue is not None
    return best_vector, best_revenue


__all__ = [
    "DEFAULT_TIE",
    "ITEM_CAP",
    "SEARCH_CAP",
    "UNPRICED",
    "ZERO_UTILITY_BUYS",
    "Price",
    "PriceVector",
    "TieBreak",
    "TwoPointItem",
    "as_price",
    "best_over_candidates",
    "buyer_choice",
    "expected_revenue",
    "price_vector",
]
