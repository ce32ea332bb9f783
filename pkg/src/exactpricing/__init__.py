"""exactpricing: exact-arithmetic single-buyer pricing over two-point
distributions, plus executable hardness-reduction pipelines.

Subpackages and modules:

* :mod:`exactpricing.exactnum` - rationals, dyadic square-root enclosures,
  canonical square-root expressions with exact sign determination;
* :mod:`exactpricing.distmodel` - exact distributions of sums of
  independent two-point attributes;
* :mod:`exactpricing.soap` - optimal single-price / grand-bundle selling;
* :mod:`exactpricing.unitdemand` - exact unit-demand revenue evaluation
  and candidate search;
* :mod:`exactpricing.reductions` - the subset-counting pipeline and the
  two square-root-sum decision pipelines, fully self-verifying;
* :mod:`exactpricing.cli` - batch JSON front end.
"""

from .distmodel import (
    SoapInstance,
    SurvivalTable,
    TwoPointAttribute,
    enumerate_outcomes,
    sum_distribution,
    survival,
)
from .exactnum import (
    Comparison,
    DyadicInterval,
    Rational,
    Sign,
    SqrtExpr,
    SqrtTerm,
    normalize,
    parse_rational,
    rat,
    rational_str,
    sign,
    sqrt_floor,
    sqrt_interval,
    sqrtsum_compare,
)
from .reductions import (
    SqrtSumInstance,
    SubsetSumInstance,
    build_soap_subsetsum,
    build_ud_probs,
    build_ud_values,
    count_subsets,
    decide_via_probs,
    decide_via_values,
    decode_counts,
    find_pstar,
    two_price_oracle,
    verify_price_cases,
)
from .soap import (
    PriceReport,
    grand_bundle_price,
    mc_revenue,
    optimal_price,
    revenue_at,
)
from .unitdemand import (
    UNPRICED,
    TieBreak,
    TwoPointItem,
    best_over_candidates,
    buyer_choice,
    expected_revenue,
)

__version__ = "0.1.0"

__all__ = [
    "Comparison",
    "DyadicInterval",
    "PriceReport",
    "Rational",
    "Sign",
    "SoapInstance",
    "SqrtExpr",
    "SqrtSumInstance",
    "SqrtTerm",
    "SubsetSumInstance",
    "SurvivalTable",
    "TieBreak",
    "TwoPointAttribute",
    "TwoPointItem",
    "UNPRICED",
    "best_over_candidates",
    "build_soap_subsetsum",
    "build_ud_probs",
    "build_ud_values",
    "buyer_choice",
    "count_subsets",
    "decide_via_probs",
    "decide_via_values",
    "decode_counts",
    "enumerate_outcomes",
    "expected_revenue",
    "find_pstar",
    "grand_bundle_price",
    "mc_revenue",
    "normalize",
    "optimal_price",
    "parse_rational",
    "rat",
    "rational_str",
    "revenue_at",
    "sign",
    "sqrt_floor",
    "sqrt_interval",
    "sqrtsum_compare",
    "sum_distribution",
    "survival",
    "two_price_oracle",
    "verify_price_cases",
]
