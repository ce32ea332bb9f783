"""Single-price optimizer tests.

The independent oracle for optimality is a dense rational price grid:
between adjacent support points revenue is linear in the price with a
constant tail, so no grid point may ever beat the reported optimum.
"""

from __future__ import annotations

import random

import pytest

from exactpricing.distmodel import SoapInstance, attribute, sum_distribution
from exactpricing.errors import InvalidInstance
from exactpricing.exactnum.rational import mpq
from exactpricing.reductions import SubsetSumInstance, build_soap_subsetsum
from exactpricing.soap import (
    grand_bundle_price,
    mc_revenue,
    optimal_price,
    revenue_at,
)

one_coin_10 = SoapInstance([attribute(10, 0, "1/2")])
four_three = SoapInstance([attribute(4, 0, "1/2"), attribute(3, 0, "1/2")])


def random_instance(rng, max_n=10, max_value=30):
    attrs = []
    for _ in range(rng.randint(1, max_n)):
        den = rng.randint(1, 16)
        attrs.append(
            attribute(rng.randint(0, max_value), rng.randint(0, max_value),
                      mpq(rng.randint(0, den), den))
        )
    return SoapInstance(attrs)


class TestRevenueAt:
    def test_one_coin(self):
        assert revenue_at(one_coin_10, 10) == 5

    def test_mid_price(self):
        # 3 * P[sum >= 3] = 3 * 3/4, by outcome enumeration
        assert revenue_at(four_three, 3) == mpq(9, 4)

    def test_above_support(self):
        assert revenue_at(four_three, 8) == 0

    def test_zero_price(self):
        assert revenue_at(four_three, 0) == 0

    def test_rational_price(self):
        # tail is constant between support points, revenue scales linearly
        assert revenue_at(four_three, mpq(7, 2)) == mpq(7, 2) * mpq(1, 2)

    def test_rejects_negative_price(self):
        with pytest.raises(InvalidInstance):
            revenue_at(four_three, -1)


class TestOptimalPrice:
    def test_one_coin(self):
        report = optimal_price(one_coin_10)
        assert (report.price, report.revenue) == (10, 5)

    def test_four_three(self):
        report = optimal_price(four_three, include_curve=True)
        assert (report.price, report.revenue) == (3, mpq(9, 4))
        assert report.curve == (
            (3, mpq(9, 4)),
            (4, mpq(2)),
            (7, mpq(7, 4)),
        )

    def test_counting_instance_below_threshold(self):
        # with the free probability at 0, the low price wins with revenue 1
        instance = build_soap_subsetsum(SubsetSumInstance([1, 2], 2), 0)
        report = optimal_price(instance)
        assert (report.price, report.revenue) == (1, 1)

    def test_all_zero_support(self):
        report = optimal_price(SoapInstance([attribute(0, 0, "1/2")]))
        assert (report.price, report.revenue) == (0, 0)

    def test_tie_breaks_to_lowest_price(self):
        # values 2 and 4 with tails 1 and 1/2 give revenue 2 at both
        inst = SoapInstance([attribute(4, 2, "1/2")])
        report = optimal_price(inst)
        assert report.price == 2 and report.revenue == 2

    def test_grand_bundle_alias(self):
        assert grand_bundle_price(four_three.attributes) == optimal_price(four_three)


class TestOptimalityAgainstGrid:
    def test_dense_grid_never_beats_optimum(self):
        rng = random.Random(321)
        for _ in range(25):
            inst = random_instance(rng, max_n=6, max_value=12)
            table = sum_distribution(inst)
            best = optimal_price(inst).revenue
            top = inst.max_sum
            price = mpq(0)
            step = mpq(1, 64)
            while price <= top:
                assert price * table.survival(price) <= best
                price += step

    def test_scaling_equivariance(self):
        rng = random.Random(11)
        for _ in range(40):
            inst = random_instance(rng, max_n=6)
            c = rng.randint(2, 9)
            scaled = SoapInstance(
                [attribute(a.high * c, a.low * c, a.p_high) for a in inst.attributes]
            )
            base = optimal_price(inst)
            scaled_report = optimal_price(scaled)
            assert scaled_report.price == c * base.price
            assert scaled_report.revenue == c * base.revenue


class TestMcRevenue:
    def test_deterministic_given_seed(self):
        a = mc_revenue(four_three, 3, 1000, 99)
        b = mc_revenue(four_three, 3, 1000, 99)
        assert a == b

    def test_close_to_exact(self):
        report = mc_revenue(one_coin_10, 10, 10**5, 42)
        assert abs(float(report.estimate) - 5.0) <= 5 * report.std_error

    def test_degenerate_probabilities(self):
        assert mc_revenue(SoapInstance([attribute(1, 0, 0)]), 1, 10, 7).estimate == 0
        assert mc_revenue(SoapInstance([attribute(1, 0, 1)]), 1, 10, 7).estimate == 1

    def test_estimate_is_exact_rational(self):
        report = mc_revenue(four_three, 3, 64, 5)
        assert report.estimate == 3 * mpq(report.accepted, 64)
