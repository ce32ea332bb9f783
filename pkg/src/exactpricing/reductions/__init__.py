"""Executable, self-verifying hardness-reduction pipelines."""

from .counting import (
    CountingParameters,
    OracleAnswer,
    PriceCaseReport,
    ReductionTranscript,
    SubsetSumInstance,
    ThresholdSearch,
    build_soap_subsetsum,
    count_subsets,
    count_subsets_with_transcript,
    counting_parameters,
    decode_counts,
    find_pstar,
    two_price_oracle,
    verify_price_cases,
)
from .sqrtsum import (
    ProbReduction,
    SqrtSumInstance,
    ValueReduction,
    build_ud_probs,
    build_ud_values,
    decide_via_probs,
    decide_via_values,
)

__all__ = [
    "CountingParameters",
    "OracleAnswer",
    "PriceCaseReport",
    "ProbReduction",
    "ReductionTranscript",
    "SqrtSumInstance",
    "SubsetSumInstance",
    "ThresholdSearch",
    "ValueReduction",
    "build_soap_subsetsum",
    "build_ud_probs",
    "build_ud_values",
    "count_subsets",
    "count_subsets_with_transcript",
    "counting_parameters",
    "decide_via_probs",
    "decide_via_values",
    "decode_counts",
    "find_pstar",
    "two_price_oracle",
    "verify_price_cases",
]
