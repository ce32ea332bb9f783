"""Subset counting through a pricing oracle.

Given positive integers a_1..a_n and a target, the pipeline builds a
family of attribute-sum pricing instances in which only two prices can
ever be optimal, locates by bisection the unique probability p* where the
two prices tie, inverts p* into the tail probability Q = P[first-n sum >=
target], and reads the per-cardinality subset counts out of Q's digits in
a large integer base.  Every structural claim used along the way (the
two-price property, monotonicity endpoints, the exact tie at p*) is
checked exactly and raises :class:`ProofViolation` on failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import comb

from ..distmodel import (
    SoapInstance,
    SurvivalTable,
    TwoPointAttribute,
    convolve,
    sum_distribution,
)
from ..errors import DecodeError, InvalidInstance, ProofViolation
from ..exactnum import Rational, RationalLike, rat, round_nearest
from ..exactnum.rational import ONE, ZERO, is_integral, mpq
from ..soap import PriceReport, optimal_price_from_table, revenue_from_table


@dataclass(frozen=True)
class SubsetSumInstance:
    """Positive integers ``a`` and a target with 1 <= target <= sum(a).

    The question answered by the pipeline: how many subsets of ``a`` have
    sum at least ``target``.
    """

    a: tuple[int, ...]
    target: int

    def __init__(self, a, target: int) -> None:
        values = tuple(int(x) for x in a)
        target = int(target)
        if not values:
            raise InvalidInstance("need at least one value")
        if any(x < 1 for x in values):
            raise InvalidInstance(f"values must be positive, got {values}")
        if not 1 <= target <= sum(values):
            raise InvalidInstance(
                f"target must lie in [1, {sum(values)}], got {target}"
            )
        object.__setattr__(self, "a", values)
        object.__setattr__(self, "target", target)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def total(self) -> int:
        return sum(self.a)


class OracleAnswer(Enum):
    """Which of the two admissible prices the oracle finds optimal; ties
    report the high price so the bisection predicate is a half-line."""

    PRICE_ONE = "price-1"
    PRICE_HIGH = "price-T+1"


@dataclass(frozen=True)
class CountingParameters:
    """Derived constants of a counting instance family.

    ``p1`` is the shared high-value probability of the first n attributes,
    small enough that ``base`` = 1/p1 - 1 is an integer exceeding 2^n and
    digit decoding is unambiguous.  ``epsilon`` = n*p1 bounds the chance
    that any of the first n attributes is high.  The last attribute is
    worth ``u_last`` = target+1 or ``v_last`` = 1, with free probability.
    """

    n: int
    total: int
    target: int
    p1: Rational
    epsilon: Rational
    base: int
    u_last: int
    v_last: int


def counting_parameters(ssi: SubsetSumInstance) -> CountingParameters:
    n, total = ssi.n, ssi.total
    scale = (n + 1 + total) ** 2
    p1 = mpq(1, (2**n) * n * scale)
    base = (2**n) * n * scale - 1
    assert base > 2**n, "base must dominate every digit bound C(n, k)"
    return CountingParameters(
        n=n,
        total=total,
        target=ssi.target,
        p1=p1,
        epsilon=mpq(1, (2**n) * scale),
        base=base,
        u_last=ssi.target + 1,
        v_last=1,
    )


def build_soap_subsetsum(ssi: SubsetSumInstance, p: RationalLike) -> SoapInstance:
    """The pricing instance with free last-attribute probability p.

    Attribute i <= n is worth a_i with probability p1 (else 0); the last
    attribute is worth target+1 with probability p (else 1).
    """
    p = rat(p)
    if not 0 <= p <= 1:
        raise InvalidInstance(f"p must lie in [0, 1], got {p}")
    params = counting_parameters(ssi)
    attrs = [TwoPointAttribute(value, 0, params.p1) for value in ssi.a]
    attrs.append(TwoPointAttribute(params.u_last, params.v_last, p))
    return SoapInstance(attrs)


@lru_cache(maxsize=128)
def _prefix_table(ssi: SubsetSumInstance) -> SurvivalTable:
    """Distribution of the first n attributes; independent of p, so shared
    across every oracle call of a pipeline run."""
    params = counting_parameters(ssi)
    prefix = SoapInstance(
        [TwoPointAttribute(value, 0, params.p1) for value in ssi.a]
    )
    return sum_distribution(prefix)


def _full_table(ssi: SubsetSumInstance, p: Rational) -> SurvivalTable:
    params = counting_parameters(ssi)
    last = TwoPointAttribute(params.u_last, params.v_last, p)
    return convolve(_prefix_table(ssi), last)


def _oracle_detail(
    ssi: SubsetSumInstance, p: Rational
) -> tuple[OracleAnswer, PriceReport]:
    table = _full_table(ssi, p)
    report = optimal_price_from_table(table)
    high = ssi.target + 1
    if report.price not in (1, high):
        raise ProofViolation(
            f"optimal price {report.price} is neither 1 nor {high} at p={p}"
        )
    if revenue_from_table(table, 1) != 1:
        raise ProofViolation(f"revenue at price 1 is not 1 at p={p}")
    if revenue_from_table(table, high) >= report.revenue:
        return OracleAnswer.PRICE_HIGH, report
    return OracleAnswer.PRICE_ONE, report


def two_price_oracle(ssi: SubsetSumInstance, p: RationalLike) -> OracleAnswer:
    """Solve the constructed instance exactly and report which of the two
    admissible prices wins; a tie reports the high price."""
    p = rat(p)
    if not 0 <= p <= 1:
        raise InvalidInstance(f"p must lie in [0, 1], got {p}")
    answer, _ = _oracle_detail(ssi, p)
    return answer


def _q_from_p(p: Rational, target: int) -> Rational:
    return (mpq(1, target + 1) - p) / (ONE - p)


def _p_from_q(q: Rational, target: int) -> Rational:
    return (mpq(1, target + 1) - q) / (ONE - q)


@dataclass(frozen=True)
class ThresholdSearch:
    """Result of the bisection: the exact tie probability and the exactly
    reconstructed tail probability Q with its integer multiplier."""

    pstar: Rational
    q_value: Rational
    multiplier: int
    oracle_calls: tuple[tuple[Rational, OracleAnswer], ...]


def _search_threshold(ssi: SubsetSumInstance) -> ThresholdSearch:
    params = counting_parameters(ssi)
    target = ssi.target
    quantum = params.p1 ** params.n
    calls: list[tuple[Rational, OracleAnswer]] = []

    def oracle(p: Rational) -> OracleAnswer:
        answer, _ = _oracle_detail(ssi, p)
        calls.append((p, answer))
        return answer

    # Q ranges over integer multiples of p1^n: the tail splits by how many
    # of the first n attributes are high, so Q = sum_k S(k) p1^k (1-p1)^(n-k)
    # = p1^n * sum_k S(k) B^(n-k) with B = 1/p1 - 1 an integer. The tie
    # probability pstar(Q) = (1/(target+1) - Q)/(1 - Q) has |d pstar/dQ| =
    # (T/(T+1))/(1-Q)^2 >= T/(T+1) >= 1/2 for Q in [0, 1), so distinct
    # representable thresholds are at least quantum/2 apart. Bisecting to a
    # bracket of width <= quantum/4 puts its midpoint within quantum/8 of
    # pstar; on that bracket p <= 1/(target+1) + quantum/4, hence 1 - p >=
    # T/(T+1) - quantum/4 >= 1/2 - 1/72 and the inverse map Q(p) has
    # |dQ/dp| <= (T/(T+1))/(1-p)^2 < 2.2. The recovered Q is therefore
    # within 2.2/8 * quantum < quantum/2 of the true multiple and rounding
    # Q/quantum to the nearest integer is exact; the final exact revenue
    # check below certifies the result regardless.
    if oracle(ZERO) is not OracleAnswer.PRICE_ONE:
        raise ProofViolation("high price already optimal at p=0")
    if oracle(ONE) is not OracleAnswer.PRICE_HIGH:
        raise ProofViolation("high price not optimal at p=1")
    lo, hi = ZERO, ONE
    gap = quantum / 4
    while hi - lo > gap:
        mid = (lo + hi) / 2
        if oracle(mid) is OracleAnswer.PRICE_HIGH:
            hi = mid
        else:
            lo = mid
    midpoint = (lo + hi) / 2
    multiplier = round_nearest(_q_from_p(midpoint, target) / quantum)
    if multiplier < 0:
        raise ProofViolation(f"negative tail multiplier {multiplier}")
    q_value = multiplier * quantum
    pstar = _p_from_q(q_value, target)
    if not lo - gap <= pstar <= hi + gap:
        raise ProofViolation(f"reconstructed pstar {pstar} escapes the bracket")
    for price in (1, target + 1):
        revenue = revenue_from_table(_full_table(ssi, pstar), price)
        if revenue != 1:
            raise ProofViolation(
                f"revenue at price {price} is {revenue} at pstar, expected exactly 1"
            )
    return ThresholdSearch(pstar, q_value, multiplier, tuple(calls))


def find_pstar(ssi: SubsetSumInstance) -> Rational:
    """The unique probability at which both admissible prices earn exactly
    revenue 1, reconstructed exactly from the bisection bracket."""
    return _search_threshold(ssi).pstar


def decode_counts(
    q_value: RationalLike, n: int, p1: RationalLike
) -> tuple[int, ...]:
    """Read subset counts S(0..n) out of Q = P[first-n sum >= target].

    Q/p1^n written in base 1/p1 - 1 has S(k) as the coefficient of
    base^(n-k); every digit must stay within its binomial bound C(n, k).
    """
    p1 = rat(p1)
    q_value = rat(q_value)
    inverse = 1 / p1
    if not is_integral(inverse):
        raise ValueError(f"p1 must be a unit fraction, got {p1}")
    base = int(inverse) - 1
    if base <= 2**n:
        raise ValueError(f"base {base} must exceed 2^{n} for unambiguous digits")
    if q_value < 0:
        raise DecodeError(f"tail probability must be nonnegative, got {q_value}")
    scaled = q_value / p1**n
    if not is_integral(scaled):
        raise DecodeError(f"{q_value} is not an integer multiple of p1^{n}")
    m = int(scaled)
    digits = []
    for _ in range(n + 1):
        m, digit = divmod(m, base)
        digits.append(digit)
    if m:
        raise DecodeError(f"quotient {scaled} needs more than {n + 1} digits")
    counts = tuple(reversed(digits))
    for k, count in enumerate(counts):
        if count > comb(n, k):
            raise DecodeError(
                f"digit S({k}) = {count} exceeds C({n}, {k}) = {comb(n, k)}"
            )
    return counts


@dataclass(frozen=True)
class ReductionTranscript:
    """Full audit record of one counting-pipeline run."""

    instance: SubsetSumInstance
    parameters: CountingParameters
    oracle_calls: tuple[tuple[Rational, OracleAnswer], ...]
    pstar: Rational
    q_value: Rational
    counts: tuple[int, ...]
    count: int

    def validate(self) -> None:
        """Re-derive every invariant from scratch; raises ProofViolation
        on any mismatch."""
        params = self.parameters
        if self.q_value != _q_from_p(self.pstar, params.target):
            raise ProofViolation("q_value does not match the pstar inversion")
        if decode_counts(self.q_value, params.n, params.p1) != self.counts:
            raise ProofViolation("counts do not decode from q_value")
        if sum(self.counts) != self.count:
            raise ProofViolation("count is not the digit sum")
        for price in (1, params.target + 1):
            revenue = revenue_from_table(
                _full_table(self.instance, self.pstar), price
            )
            if revenue != 1:
                raise ProofViolation(
                    f"revenue at price {price} is {revenue} at pstar"
                )


def count_subsets_with_transcript(
    ssi: SubsetSumInstance,
) -> tuple[int, ReductionTranscript]:
    """Run the full pipeline and keep the audit trail."""
    params = counting_parameters(ssi)
    search = _search_threshold(ssi)
    counts = decode_counts(search.q_value, params.n, params.p1)
    count = sum(counts)
    transcript = ReductionTranscript(
        instance=ssi,
        parameters=params,
        oracle_calls=search.oracle_calls,
        pstar=search.pstar,
        q_value=search.q_value,
        counts=counts,
        count=count,
    )
    return count, transcript


def count_subsets(ssi: SubsetSumInstance) -> int:
    """Number of subsets of ``a`` with sum >= target, computed only
    through the pricing oracle."""
    count, _ = count_subsets_with_transcript(ssi)
    return count


@dataclass(frozen=True)
class PriceCaseReport:
    """Summary of the exhaustive revenue case check at one (instance, p)."""

    p: Rational
    revenue_at_one: Rational
    revenue_at_high: Rational
    grid_max: Rational
    prices_checked: int
    optimal: PriceReport


def verify_price_cases(ssi: SubsetSumInstance, p: RationalLike) -> PriceCaseReport:
    """Exhaustively check the five revenue cases over every integer price.

    For prices B in [1, target+1+sum(a)+1]: B=1 earns exactly 1; interior
    1 < B < target+1 earns at most B*(p + (1-p)*epsilon); B=target+1 earns
    at least p*(target+1); target+1 < B <= target+1+sum(a) earns below 1;
    anything larger earns 0. The grid maximum must be attained at 1 or
    target+1. Support points are all integers, so revenue at any rational
    price is dominated by the next support point upward and the integer
    grid is exhaustive; a non-integral support point would be flagged.
    """
    p = rat(p)
    if not 0 <= p <= 1:
        raise InvalidInstance(f"p must lie in [0, 1], got {p}")
    params = counting_parameters(ssi)
    high = params.u_last
    table = _full_table(ssi, p)
    for point in table.points:
        if not isinstance(point.sum, int):
            raise ProofViolation(f"non-integral support point {point.sum}")
    interior_bound_factor = p + (ONE - p) * params.epsilon
    revenue_at_one = revenue_from_table(table, 1)
    revenue_at_high = revenue_from_table(table, high)
    grid_max = ZERO
    top = high + params.total
    for price in range(1, top + 2):
        revenue = revenue_from_table(table, price)
        grid_max = max(grid_max, revenue)
        if price == 1:
            if revenue != 1:
                raise ProofViolation(f"case 1: revenue at price 1 is {revenue}")
        elif price < high:
            if revenue > price * interior_bound_factor:
                raise ProofViolation(
                    f"case 2: revenue {revenue} at interior price {price} "
                    f"exceeds its bound"
                )
        elif price == high:
            if revenue < p * high:
                raise ProofViolation(
                    f"case 3: revenue {revenue} at price {high} below p*(target+1)"
                )
        elif price <= top:
            if revenue >= 1:
                raise ProofViolation(
                    f"case 4: revenue {revenue} at price {price} reaches 1"
                )
        else:
            if revenue != 0:
                raise ProofViolation(
                    f"case 5: revenue {revenue} above the maximum sum"
                )
    if grid_max != max(revenue_at_one, revenue_at_high):
        raise ProofViolation(
            f"grid maximum {grid_max} is attained strictly between the two prices"
        )
    optimal = optimal_price_from_table(table)
    if optimal.price not in (1, high):
        raise ProofViolation(f"optimal price {optimal.price} not in {{1, {high}}}")
    return PriceCaseReport(
        p=p,
        revenue_at_one=revenue_at_one,
        revenue_at_high=revenue_at_high,
        grid_max=grid_max,
        prices_checked=top + 1,
        optimal=optimal,
    )


__all__ = [
    "CountingParameters",
    "OracleAnswer",
    "PriceCaseReport",
    "ReductionTranscript",
    "SubsetSumInstance",
    "ThresholdSearch",
    "build_soap_subsetsum",
    "count_subsets",
    "count_subsets_with_transcript",
    "counting_parameters",
    "decode_counts",
    "find_pstar",
    "two_price_oracle",
    "verify_price_cases",
]
