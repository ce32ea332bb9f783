"""Exact-numerics tests: enclosures, normal forms, signs, comparisons.

Independent oracles: mpmath interval arithmetic (certified 256-bit
enclosures) for signs, sympy.factorint for square-free kernels, and plain
integer arithmetic for enclosure soundness.
"""

from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import iv
from mpmath import libmp

from exactpricing.errors import InstanceTooLarge
from exactpricing.exactnum import (
    Comparison,
    DyadicInterval,
    FactorBudget,
    Sign,
    SqrtExpr,
    SqrtTerm,
    factorize,
    normalize,
    parse_rational,
    rational_str,
    sign,
    sign_with_stats,
    sqrt_floor,
    sqrt_interval,
    sqrtsum_compare,
    square_free_decompose,
)
from exactpricing.exactnum.rational import mpq, round_nearest
from exactpricing.serialize import sqrtexpr_from_json, sqrtexpr_to_json

rationals = st.builds(
    mpq, st.integers(-(10**4), 10**4), st.integers(1, 10**3)
)
radicands = st.integers(0, 10**4)
term_lists = st.lists(st.tuples(rationals, radicands), max_size=6)


def iv_bounds(expr: SqrtExpr) -> tuple:
    """Certified 256-bit enclosure of an expression, via mpmath interval
    arithmetic only; endpoints converted exactly to rationals."""
    iv.prec = 256
    total = iv.mpf(int(expr.rational_part.numerator)) / iv.mpf(
        int(expr.rational_part.denominator)
    )
    for d, c in expr.terms:
        coef = iv.mpf(int(c.numerator)) / iv.mpf(int(c.denominator))
        total += coef * iv.sqrt(int(d))
    lo_num, lo_den = libmp.to_rational(total._mpi_[0])
    hi_num, hi_den = libmp.to_rational(total._mpi_[1])
    return mpq(int(lo_num), int(lo_den)), mpq(int(hi_num), int(hi_den))


class TestRational:
    def test_parse_and_format_round_trip(self):
        assert rational_str(parse_rational("95/287")) == "95/287"
        assert rational_str(parse_rational("5")) == "5/1"
        assert parse_rational("-3/7") == mpq(-3, 7)

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_rational("1/0")
        with pytest.raises(ValueError):
            parse_rational("two thirds")

    def test_round_nearest(self):
        assert round_nearest(mpq(7, 2)) == 4  # halves go up
        assert round_nearest(mpq(-7, 2)) == -3
        assert round_nearest(mpq(10, 3)) == 3


class TestSqrtFloor:
    def test_zero(self):
        assert sqrt_floor(0) == 0

    def test_perfect_square(self):
        assert sqrt_floor(16) == 4

    def test_between_squares(self):
        # 4^2 <= 17 < 5^2
        assert sqrt_floor(17) == 4

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            sqrt_floor(-1)

    @given(st.integers(0, 10**12))
    def test_defining_inequality(self, n):
        r = sqrt_floor(n)
        assert r * r <= n < (r + 1) * (r + 1)


class TestSqrtInterval:
    def test_perfect_square_collapses(self):
        box = sqrt_interval(4, 10)
        assert box.lo == box.hi == 2

    def test_low_precision_sqrt2(self):
        box = sqrt_interval(2, 1)
        assert box.width <= mpq(1, 2)
        assert box.lo * box.lo <= 2 <= box.hi * box.hi

    def test_zero_precision(self):
        box = sqrt_interval(9, 0)
        assert box.contains(3)
        assert box.width <= 1

    @given(st.integers(1, 10**6), st.integers(0, 128))
    @settings(max_examples=200)
    def test_soundness_and_width(self, a, k):
        box = sqrt_interval(a, k)
        assert box.lo * box.lo <= a <= box.hi * box.hi
        assert box.width <= mpq(1, 2**k)

    @given(st.integers(1, 10**6), st.integers(0, 64))
    @settings(max_examples=200)
    def test_monotone_refinement(self, a, k):
        coarse = sqrt_interval(a, k)
        fine = sqrt_interval(a, k + 1)
        assert coarse.lo <= fine.lo and fine.hi <= coarse.hi

    def test_dyadic_endpoints_enforced(self):
        with pytest.raises(ValueError):
            DyadicInterval(mpq(1, 3), mpq(1, 2))


class TestFactoring:
    @given(st.integers(1, 10**9))
    @settings(max_examples=300)
    def test_factorize_matches_sympy(self, n):
        assert factorize(n) == dict(sympy.factorint(n))

    @given(st.integers(0, 10**9))
    @settings(max_examples=300)
    def test_square_free_decompose(self, n):
        s, d = square_free_decompose(n)
        assert s * s * d == n
        if n > 0:
            assert all(e == 1 for e in sympy.factorint(d).values())

    def test_large_semiprime_within_budget(self):
        p, q = 1_000_003, 1_000_033
        assert factorize(p * q) == {p: 1, q: 1}

    def test_budget_exhaustion_raises(self):
        # Two 18-digit primes; one rho step is never enough.
        n = 523347633027360537213687137 * 29497513910652490397
        with pytest.raises(InstanceTooLarge):
            factorize(n, FactorBudget(trial_bound=100, rho_max_steps=1))

    def test_oversized_cofactor_rejected(self):
        with pytest.raises(InstanceTooLarge):
            factorize((2**127 - 1) * (2**61 - 1), FactorBudget(trial_bound=10))


class TestNormalize:
    def test_perfect_square_folds_into_rational(self):
        e = normalize([(mpq(1), 4)])
        assert e.rational_part == 2 and e.terms == ()

    def test_square_factor_extracted(self):
        # 8 = 2^2 * 2
        e = normalize([(mpq(1), 8)])
        assert e.rational_part == 0
        assert e.terms == ((2, mpq(2)),)

    def test_exact_cancellation(self):
        e = normalize([(mpq(1), 2), (mpq(-1), 2)])
        assert not e

    def test_accepts_sqrtterm_objects(self):
        assert normalize([SqrtTerm(mpq(3), 12)]) == normalize([(mpq(6), 3)])

    def test_radicand_zero_and_one(self):
        e = normalize([(mpq(5), 0), (mpq(2), 1)])
        assert e.rational_part == 2 and e.terms == ()

    @given(term_lists, term_lists)
    @settings(max_examples=200)
    def test_concatenation_is_addition(self, xs, ys):
        assert normalize(xs + ys) == normalize(xs) + normalize(ys)

    @given(term_lists)
    @settings(max_examples=200)
    def test_kernels_are_square_free(self, xs):
        for d, c in normalize(xs).terms:
            assert c != 0 and d >= 2
            assert all(e == 1 for e in sympy.factorint(d).values())


class TestSqrtExprArithmetic:
    @given(term_lists, term_lists)
    @settings(max_examples=100)
    def test_product_matches_interval_oracle(self, xs, ys):
        a, b = normalize(xs), normalize(ys)
        lo, hi = (a * b).bounds(300)
        alo, ahi = iv_bounds(a)
        blo, bhi = iv_bounds(b)
        oracle_lo = min(alo * blo, alo * bhi, ahi * blo, ahi * bhi)
        oracle_hi = max(alo * blo, alo * bhi, ahi * blo, ahi * bhi)
        # Both enclosures contain the exact product, so they must overlap.
        assert lo <= oracle_hi and oracle_lo <= hi

    @given(term_lists)
    def test_additive_inverse(self, xs):
        e = normalize(xs)
        assert not (e - e)
        assert not (e + (-e))

    def test_multiplication_reduces_by_gcd(self):
        # sqrt(6) * sqrt(10) = 2*sqrt(15)
        e = SqrtExpr.sqrt(6) * SqrtExpr.sqrt(10)
        assert e == SqrtExpr(0, [(15, mpq(2))])

    def test_squaring_sqrt_is_rational(self):
        e = SqrtExpr.sqrt(7) * SqrtExpr.sqrt(7)
        assert e.as_rational() == 7

    def test_division_by_rational(self):
        assert SqrtExpr.sqrt(8) / 2 == SqrtExpr.sqrt(2)
        with pytest.raises(ZeroDivisionError):
            SqrtExpr.sqrt(2) / 0
        with pytest.raises(TypeError):
            SqrtExpr.sqrt(2) / SqrtExpr.sqrt(3)

    def test_mixed_scalar_operations(self):
        e = 1 - SqrtExpr.sqrt(2) / 2
        assert e.rational_part == 1
        assert e.terms == ((2, mpq(-1, 2)),)
        assert (2 * e + SqrtExpr.sqrt(2)).as_rational() == 2

    def test_rejects_duplicate_radicands(self):
        with pytest.raises(ValueError):
            SqrtExpr(0, [(2, mpq(1)), (2, mpq(1))])

    def test_rejects_non_square_free_construction(self):
        with pytest.raises(ValueError):
            SqrtExpr(0, [(1, mpq(1))])


class TestSign:
    def test_all_perfect_squares_is_zero(self):
        e = normalize([(mpq(1), 1), (mpq(1), 4)]) - 3
        assert sign(e) is Sign.ZERO

    def test_positive_needs_refinement(self):
        # sqrt(2) + sqrt(3) ~ 3.1463 > 3
        e = SqrtExpr.sqrt(2) + SqrtExpr.sqrt(3) - 3
        assert sign(e) is Sign.POSITIVE

    def test_negative(self):
        assert sign(SqrtExpr.sqrt(2) - 2) is Sign.NEGATIVE

    def test_zero_never_refines(self):
        stats = sign_with_stats(SqrtExpr.from_rational(mpq(0)))
        assert stats.sign is Sign.ZERO and stats.rounds == 0

    def test_refinement_counter_exposed(self):
        stats = sign_with_stats(SqrtExpr.sqrt(2) - 1)
        assert stats.sign is Sign.POSITIVE
        assert stats.rounds >= 1 and stats.bits >= 64

    def test_tight_difference_still_resolved(self):
        # sqrt(1000001) - sqrt(1000000) is about 5e-4 but exactly positive.
        e = SqrtExpr.sqrt(1_000_001) - 1000
        assert sign(e) is Sign.POSITIVE

    @given(term_lists)
    @settings(max_examples=300)
    def test_sign_matches_certified_interval(self, xs):
        e = normalize(xs)
        lo, hi = iv_bounds(e)
        if lo > 0:
            assert sign(e) is Sign.POSITIVE
        elif hi < 0:
            assert sign(e) is Sign.NEGATIVE

    @given(term_lists, term_lists)
    @settings(max_examples=100)
    def test_comparisons_are_a_total_order(self, xs, ys):
        a, b = normalize(xs), normalize(ys)
        assert (a < b) + (a == b) + (a > b) == 1


class TestSqrtSumCompare:
    def test_less(self):
        assert sqrtsum_compare([1, 1], 3) is Comparison.LESS

    def test_equal(self):
        assert sqrtsum_compare([1, 4], 3) is Comparison.EQUAL

    def test_greater(self):
        assert sqrtsum_compare([1, 4], 2) is Comparison.GREATER

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            sqrtsum_compare([0, 4], 1)
        with pytest.raises(ValueError):
            sqrtsum_compare([1], 0)

    def test_equal_only_for_perfect_squares(self):
        rng = random.Random(5)
        for _ in range(250):
            if rng.random() < 0.5:
                # Constructed equality: perfect squares with K = root sum.
                roots = [rng.randint(1, 7) for _ in range(rng.randint(1, 5))]
                squares = [r * r for r in roots]
                assert sqrtsum_compare(squares, sum(roots)) is Comparison.EQUAL
                assert sqrtsum_compare(squares, sum(roots) + 1) is Comparison.LESS
            else:
                a = [rng.randint(1, 60) for _ in range(rng.randint(1, 5))]
                k = rng.randint(1, 40)
                if sqrtsum_compare(a, k) is Comparison.EQUAL:
                    assert all(sqrt_floor(x) ** 2 == x for x in a)
                    assert sum(sqrt_floor(x) for x in a) == k


class TestSerialization:
    def test_wire_format_shape(self):
        e = SqrtExpr(mpq(1, 2), [(2, mpq(3, 4))])
        assert sqrtexpr_to_json(e) == {
            "rational": "1/2",
            "terms": [{"coef": "3/4", "radicand": 2}],
        }

    @given(term_lists, rationals)
    @settings(max_examples=200)
    def test_round_trip(self, xs, q):
        e = normalize(xs) + q
        assert sqrtexpr_from_json(sqrtexpr_to_json(e)) == e

    def test_parse_accepts_bare_rationals(self):
        assert sqrtexpr_from_json("7/3") == SqrtExpr.from_rational(mpq(7, 3))
        assert sqrtexpr_from_json(5) == SqrtExpr.from_rational(5)
