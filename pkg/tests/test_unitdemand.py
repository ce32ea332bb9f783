"""Unit-demand evaluator tests.

Two independent oracles: a literal profile enumeration that routes every
choice through buyer_choice (no caching, no bucketing), and a seeded
Monte-Carlo estimate for all-rational instances.
"""

from __future__ import annotations

import itertools
import random

import pytest

from exactpricing.errors import InvalidInstance, SearchTooLarge, TooManyItems
from exactpricing.exactnum import SqrtExpr, as_sqrtexpr
from exactpricing.exactnum.rational import mpq
from exactpricing.serialize import (
    item_from_json,
    item_to_json,
    prices_from_json,
    prices_to_json,
)
from exactpricing.unitdemand import (
    UNPRICED,
    TieBreak,
    TwoPointItem,
    best_over_candidates,
    buyer_choice,
    expected_revenue,
    price_vector,
)


def enumerate_revenue(items, prices, tie=TieBreak.MOST_EXPENSIVE,
                      zero_utility_buys=None):
    """Literal oracle: walk every profile, ask buyer_choice, add up."""
    total = SqrtExpr()
    for states in itertools.product((0, 1), repeat=len(items)):
        prob = as_sqrtexpr(1)
        values = []
        for item, s in zip(items, states):
            p = as_sqrtexpr(item.p_high)
            prob = prob * (p if s == 0 else 1 - p)
            values.append(item.high if s == 0 else item.low)
        if not prob:
            continue
        choice = buyer_choice(values, prices, tie, zero_utility_buys)
        if choice is not None:
            total = total + prob * prices[choice]
    return total


def rational_item(high, low, num, den) -> TwoPointItem:
    return TwoPointItem(as_sqrtexpr(high), as_sqrtexpr(low), mpq(num, den))


class TestBuyerChoice:
    def test_picks_highest_utility(self):
        # utilities 1 vs 2
        assert buyer_choice([5, 3], [4, 1]) == 1

    def test_zero_utility_convention(self):
        # Under the default convention an indifferent buyer buys (ties go
        # to the seller); the strict reading declines instead.
        assert buyer_choice([5, 5], [5, 5]) == 0
        assert buyer_choice([5, 5], [5, 5], zero_utility_buys=False) is None

    def test_strictly_negative_never_buys(self):
        assert buyer_choice([3], [4]) is None
        assert buyer_choice([3], [4], zero_utility_buys=False) is None

    def test_most_expensive_tie_break(self):
        # utilities (1, 2): no tie, item 2 wins outright
        assert buyer_choice([6, 6], [5, 4]) == 1
        # utilities tie at 2, prices tie at 4, lowest index wins
        assert buyer_choice([6, 6], [4, 4]) == 0
        # utilities tie at 0, most expensive wins
        assert buyer_choice([6, 3], [6, 3]) == 0

    def test_cheapest_tie_break(self):
        assert buyer_choice([6, 3], [6, 3], tie=TieBreak.CHEAPEST) == 1

    def test_lowest_index_tie_break(self):
        assert buyer_choice([4, 6], [2, 4], tie=TieBreak.LOWEST_INDEX) == 0

    def test_unpriced_never_chosen(self):
        assert buyer_choice([100, 1], [UNPRICED, 1]) == 1
        assert buyer_choice([100], [UNPRICED]) is None

    def test_irrational_comparison(self):
        # sqrt(2)-1 vs sqrt(3)-sqrt(2): 0.414 vs 0.318
        values = [SqrtExpr.sqrt(2), SqrtExpr.sqrt(3)]
        prices = [as_sqrtexpr(1), SqrtExpr.sqrt(2)]
        assert buyer_choice(values, prices) == 0

    def test_length_mismatch(self):
        with pytest.raises(InvalidInstance):
            buyer_choice([1], [1, 2])


class TestExpectedRevenue:
    def test_single_item_at_its_high_value(self):
        item = rational_item(10, 0, 1, 2)
        assert expected_revenue([item], [as_sqrtexpr(10)]).as_rational() == 5

    def test_zero_utility_convention_matters(self):
        item = rational_item(10, 0, 1, 2)
        strict = expected_revenue([item], [as_sqrtexpr(10)],
                                  zero_utility_buys=False)
        assert strict.as_rational() == 0

    def test_all_unpriced_is_zero(self):
        items = [rational_item(3, 1, 1, 3), rational_item(9, 0, 2, 3)]
        assert not expected_revenue(items, [UNPRICED, UNPRICED])

    def test_irrational_probability_stays_exact(self):
        # p_high = 1 - sqrt(2)/2; selling at the high value collects p_high
        p = 1 - SqrtExpr.sqrt(2) / 2
        item = TwoPointItem(as_sqrtexpr(1), as_sqrtexpr(0), p)
        revenue = expected_revenue([item], [as_sqrtexpr(1)])
        assert revenue == p

    def test_item_cap(self):
        items = [rational_item(1, 0, 1, 2)] * 21
        with pytest.raises(TooManyItems):
            expected_revenue(items, [as_sqrtexpr(1)] * 21)

    def test_matches_profile_oracle_rational(self):
        rng = random.Random(42)
        for _ in range(30):
            n = rng.randint(1, 4)
            items = []
            for _ in range(n):
                high = rng.randint(0, 12)
                items.append(
                    rational_item(high, rng.randint(0, high), rng.randint(0, 6), 6)
                )
            prices = [
                UNPRICED if rng.random() < 0.25 else as_sqrtexpr(rng.randint(0, 12))
                for _ in range(n)
            ]
            for tie in TieBreak:
                assert expected_revenue(items, prices, tie) == enumerate_revenue(
                    items, prices, tie
                )

    def test_matches_profile_oracle_irrational(self):
        rng = random.Random(43)
        for _ in range(15):
            n = rng.randint(1, 3)
            items = []
            for _ in range(n):
                high = SqrtExpr.sqrt(rng.randint(1, 30))
                p = 1 - SqrtExpr.sqrt(rng.randint(1, 8)) / 4
                items.append(TwoPointItem(high, as_sqrtexpr(0), p))
            prices = [
                UNPRICED if rng.random() < 0.2
                else SqrtExpr.sqrt(rng.randint(1, 30))
                for _ in range(n)
            ]
            assert expected_revenue(items, prices) == enumerate_revenue(items, prices)

    def test_unpriced_item_values_are_irrelevant(self):
        base = [rational_item(5, 2, 1, 3), rational_item(7, 0, 1, 2)]
        perturbed = [rational_item(1000, 0, 9, 10), base[1]]
        prices = [UNPRICED, as_sqrtexpr(7)]
        assert expected_revenue(base, prices) == expected_revenue(perturbed, prices)

    def test_monte_carlo_agreement(self):
        rng = random.Random(7)
        items = [
            rational_item(9, 2, 1, 3),
            rational_item(6, 0, 3, 4),
            rational_item(4, 1, 1, 2),
        ]
        prices = [as_sqrtexpr(5), as_sqrtexpr(4), as_sqrtexpr(3)]
        exact = float(expected_revenue(items, prices).as_rational())

        profiles = list(itertools.product((0, 1), repeat=3))
        choice_of = {}
        for states in profiles:
            values = [it.high if s == 0 else it.low for it, s in zip(items, states)]
            choice_of[states] = buyer_choice(values, prices)
        samples = 10**5
        payments = []
        for _ in range(samples):
            states = tuple(
                0 if rng.random() < float(it.p_high) else 1 for it in items
            )
            chosen = choice_of[states]
            payments.append(0.0 if chosen is None else float(prices[chosen].as_rational()))
        mean = sum(payments) / samples
        var = sum((x - mean) ** 2 for x in payments) / (samples - 1)
        se = (var / samples) ** 0.5
        assert abs(mean - exact) <= 5 * se


class TestBestOverCandidates:
    def test_tie_goes_to_first_candidate(self):
        # both candidate prices collect 5 in expectation; 5 is listed first
        item = rational_item(10, 5, 1, 2)
        prices, revenue = best_over_candidates([item], [[5, 10]])
        assert prices == price_vector([5])
        assert revenue.as_rational() == 5

    def test_two_deterministic_items(self):
        items = [rational_item(3, 0, 1, 1), rational_item(7, 0, 1, 1)]
        candidates = [[3, 0], [7, 0]]
        prices, revenue = best_over_candidates(items, candidates)
        assert prices == price_vector([3, 7])
        assert revenue.as_rational() == 7

    def test_all_unpriced(self):
        items = [rational_item(5, 0, 1, 2)]
        prices, revenue = best_over_candidates([items[0]], [[UNPRICED]])
        assert prices == (UNPRICED,)
        assert not revenue

    def test_search_cap(self):
        items = [rational_item(1, 0, 1, 2)] * 7
        candidates = [[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]] * 7
        with pytest.raises(SearchTooLarge):
            best_over_candidates(items, candidates)

    def test_beats_every_explicit_vector(self):
        rng = random.Random(17)
        items = [rational_item(6, 1, 1, 2), rational_item(9, 0, 1, 3)]
        candidates = [[1, 5, 6, UNPRICED], [3, 9, UNPRICED]]
        _, best = best_over_candidates(items, candidates)
        for vector in itertools.product(*candidates):
            assert expected_revenue(items, price_vector(vector)) <= best


def test_item_json_round_trip():
    p = 1 - SqrtExpr.sqrt(2) / 2
    item = TwoPointItem(SqrtExpr.sqrt(8), as_sqrtexpr(mpq(1, 2)), p)
    assert item_from_json(item_to_json(item)) == item
    prices = price_vector([SqrtExpr.sqrt(3), UNPRICED])
    assert prices_from_json(prices_to_json(prices)) == prices


def test_item_validation():
    with pytest.raises(InvalidInstance):
        TwoPointItem(as_sqrtexpr(1), as_sqrtexpr(2), mpq(1, 2))  # low > high
    with pytest.raises(InvalidInstance):
        TwoPointItem(as_sqrtexpr(2), as_sqrtexpr(1), mpq(3, 2))  # bad probability
    with pytest.raises(InvalidInstance):
        rational_item(2, 1, -1, 2)
