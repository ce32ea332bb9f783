"""Seeded random instance generators for tests and the CLI."""

from __future__ import annotations

import random

from .distmodel import SoapInstance, TwoPointAttribute
from .exactnum import Comparison, sqrt_floor, sqrtsum_compare
from .exactnum.rational import mpq
from .reductions import SqrtSumInstance, SubsetSumInstance

MAX_P_DENOMINATOR = 1000


def gen_subsetsum(n: int, max_value: int, rng: random.Random) -> SubsetSumInstance:
    values = [rng.randint(1, max_value) for _ in range(n)]
    target = rng.randint(1, sum(values))
    return SubsetSumInstance(values, target)


def gen_sqrtsum(
    n: int,
    max_value: int,
    rng: random.Random,
    exclude_equal: bool = False,
) -> SqrtSumInstance:
    """Random sorted instance. Half the time K is drawn uniformly, half
    the time within +-2 of floor(sum(sqrt(a_i))) so that near-boundary
    comparisons (the ones exact arithmetic exists for) are well
    represented. With exclude_equal, K is resampled until the comparison
    is strict."""
    values = sorted(rng.randint(1, max_value) for _ in range(n))
    near = sum(sqrt_floor(v) for v in values)
    ceiling = near + n + 1
    while True:
        if rng.random() < 0.5:
            k = rng.randint(1, ceiling)
        else:
            k = max(1, near + rng.randint(-2, 2))
        if not exclude_equal or sqrtsum_compare(values, k) is not Comparison.EQUAL:
            return SqrtSumInstance(values, k)


def gen_soap(n: int, max_value: int, rng: random.Random) -> SoapInstance:
    attrs = []
    for _ in range(n):
        den = rng.randint(1, MAX_P_DENOMINATOR)
        attrs.append(
            TwoPointAttribute(
                rng.randint(0, max_value),
                rng.randint(0, max_value),
                mpq(rng.randint(0, den), den),
            )
        )
    return SoapInstance(attrs)


__all__ = ["MAX_P_DENOMINATOR", "gen_soap", "gen_sqrtsum", "gen_subsetsum"]
