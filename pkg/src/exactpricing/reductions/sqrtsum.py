"""Deciding sum(sqrt(a_i)) > K through unit-demand pricing.

Two constructions, both reducing the comparison to an exact revenue
comparison between two pricing schemes:

* the values construction puts the irrationality in the item values
  (item i is worth sqrt(a_i) with probability 1/i) and anchors them with
  an item worth T/2 or T;
* the probabilities construction keeps values integral (item i is worth
  i) and hides the irrationality in the probabilities 1 - sqrt(a_i/a_{i+1}),
  closing the telescope with an appended perfect square X^2.

In the first construction the scheme that prices item by item wins
exactly when the sum exceeds K; in the second it is the anchor-only
scheme that wins exactly then, i.e. the direction flips.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import floor

from ..errors import EqualityInstance, InvalidInstance, ProofViolation
from ..exactnum import Comparison, Rational, Sign, SqrtExpr, sign, sqrtsum_compare
from ..exactnum.rational import HALF, mpq
from ..unitdemand import (
    UNPRICED,
    PriceVector,
    TwoPointItem,
    expected_revenue,
)


@dataclass(frozen=True)
class SqrtSumInstance:
    """Positive integers a_1 <= ... <= a_n and a positive integer K; the
    decision pipelines additionally require sum(sqrt(a_i)) != K."""

    a: tuple[int, ...]
    k: int

    def __init__(self, a, k: int) -> None:
        values = tuple(int(x) for x in a)
        k = int(k)
        if not values:
            raise InvalidInstance("need at least one value")
        if any(x < 1 for x in values):
            raise InvalidInstance(f"values must be positive, got {values}")
        if any(x > y for x, y in zip(values, values[1:])):
            raise InvalidInstance(f"values must be nondecreasing, got {values}")
        if k < 1:
            raise InvalidInstance(f"K must be >= 1, got {k}")
        object.__setattr__(self, "a", values)
        object.__setattr__(self, "k", k)

    @property
    def n(self) -> int:
        return len(self.a)


def _reject_equality(sq: SqrtSumInstance) -> None:
    if sqrtsum_compare(sq.a, sq.k) is Comparison.EQUAL:
        raise EqualityInstance(
            f"sum of square roots equals K={sq.k} exactly; the decision "
            f"pipelines require strict inequality"
        )


@dataclass(frozen=True)
class ValueReduction:
    """Unit-demand instance with square-root values, plus the two schemes
    whose exact revenue comparison answers the decision.

    scheme1 prices only the anchor item, at its low value t_value/2, and
    collects that with certainty; scheme2 prices the anchor at t_value and
    every other item at its own high value sqrt(a_i).
    """

    instance: SqrtSumInstance
    items: tuple[TwoPointItem, ...]
    scheme1: PriceVector
    scheme2: PriceVector
    epsilon: Rational
    t_value: Rational


def build_ud_values(sq: SqrtSumInstance) -> ValueReduction:
    """Items: i <= n worth sqrt(a_i) with probability 1/i, else 0; anchor
    worth t/2 with probability 1/2+eps and t with probability 1/2-eps,
    where eps = K/(4n*max(K, a_n)) and t = (1/2+eps)*K/(n*eps).

    Raises EqualityInstance when sum(sqrt(a_i)) = K, and ProofViolation if
    the structural inequality t/2 > sqrt(a_n) ever failed.
    """
    _reject_equality(sq)
    n, k = sq.n, sq.k
    epsilon = mpq(k, 4 * n * max(k, sq.a[-1]))
    t_value = (HALF + epsilon) * k / (n * epsilon)
    items = [
        TwoPointItem(SqrtExpr.sqrt(value), SqrtExpr(), mpq(1, i))
        for i, value in enumerate(sq.a, start=1)
    ]
    anchor = TwoPointItem(
        SqrtExpr.from_rational(t_value),
        SqrtExpr.from_rational(t_value / 2),
        HALF - epsilon,
    )
    items.append(anchor)
    if sign(anchor.low - SqrtExpr.sqrt(sq.a[-1])) is not Sign.POSITIVE:
        raise ProofViolation(
            f"anchor low value {anchor.low} does not dominate sqrt({sq.a[-1]})"
        )
    scheme1: PriceVector = tuple([UNPRICED] * n) + (anchor.low,)
    scheme2: PriceVector = tuple(item.high for item in items[:n]) + (anchor.high,)
    return ValueReduction(
        instance=sq,
        items=tuple(items),
        scheme1=scheme1,
        scheme2=scheme2,
        epsilon=epsilon,
        t_value=t_value,
    )


def decide_via_values(sq: SqrtSumInstance) -> Comparison:
    """GREATER iff sum(sqrt(a_i)) > K, decided by the exact comparison of
    the two scheme revenues of the values construction (the item-by-item
    scheme wins exactly when the sum exceeds K)."""
    red = build_ud_values(sq)
    difference = expected_revenue(red.items, red.scheme2) - expected_revenue(
        red.items, red.scheme1
    )
    s = sign(difference)
    if s is Sign.ZERO:
        raise ProofViolation("scheme revenues tie on a non-equality instance")
    return Comparison.GREATER if s is Sign.POSITIVE else Comparison.LESS


@dataclass(frozen=True)
class ProbReduction:
    """Unit-demand instance with integral values and square-root
    probabilities, plus its two schemes.

    scheme1 prices only the anchor at t_value/2; scheme2 prices every item
    at its high value.  x_value is the appended root: a_{n+1} = x_value^2.
    """

    instance: SqrtSumInstance
    items: tuple[TwoPointItem, ...]
    scheme1: PriceVector
    scheme2: PriceVector
    x_value: int
    t_value: Rational


def build_ud_probs(sq: SqrtSumInstance) -> ProbReduction:
    """Items: i <= n worth i with probability 1 - sqrt(a_i/a_{i+1}), else
    0, with a_{n+1} = X^2 for the smallest integer X strictly above
    max(3K/n, a_n); anchor worth t/2 with probability 3/4 and t with
    probability 1/4, where t = 3*(n - K/X).

    Raises EqualityInstance when sum(sqrt(a_i)) = K, and ProofViolation if
    the structural inequality t/2 > n ever failed.
    """
    _reject_equality(sq)
    n, k = sq.n, sq.k
    x_value = int(floor(max(mpq(3 * k, n), sq.a[-1]))) + 1
    extended = sq.a + (x_value**2,)
    t_value = 3 * (n - mpq(k, x_value))
    items = []
    for i, value in enumerate(sq.a, start=1):
        # sqrt(a_i / a_{i+1}) rationalized as sqrt(a_i * a_{i+1}) / a_{i+1}
        ratio_root = SqrtExpr.sqrt(value * extended[i]) / extended[i]
        items.append(
            TwoPointItem(SqrtExpr.from_rational(i), SqrtExpr(), 1 - ratio_root)
        )
    anchor = TwoPointItem(
        SqrtExpr.from_rational(t_value),
        SqrtExpr.from_rational(t_value / 2),
        mpq(1, 4),
    )
    items.append(anchor)
    if sign(anchor.low - n) is not Sign.POSITIVE:
        raise ProofViolation(
            f"anchor low value {anchor.low} does not dominate the top value {n}"
        )
    scheme1: PriceVector = tuple([UNPRICED] * n) + (anchor.low,)
    scheme2: PriceVector = tuple(item.high for item in items[:n]) + (anchor.high,)
    return ProbReduction(
        instance=sq,
        items=tuple(items),
        scheme1=scheme1,
        scheme2=scheme2,
        x_value=x_value,
        t_value=t_value,
    )


def decide_via_probs(sq: SqrtSumInstance) -> Comparison:
    """GREATER iff sum(sqrt(a_i)) > K, decided by the exact comparison of
    the two scheme revenues of the probabilities construction; here the
    anchor-only scheme wins exactly when the sum exceeds K, the opposite
    direction from the values construction."""
    red = build_ud_probs(sq)
    difference = expected_revenue(red.items, red.scheme1) - expected_revenue(
        red.items, red.scheme2
    )
    s = sign(difference)
    if s is Sign.ZERO:
        raise ProofViolation("scheme revenues tie on a non-equality instance")
    return Comparison.GREATER if s is Sign.POSITIVE else Comparison.LESS


__all__ = [
    "ProbReduction",
    "SqrtSumInstance",
    "ValueReduction",
    "build_ud_probs",
    "build_ud_values",
    "decide_via_probs",
    "decide_via_values",
]
