"""Exact numerics: arbitrary-precision rationals, certified dyadic
enclosures of square roots, and canonical square-root expressions with
exact sign determination."""

from .factorint import DEFAULT_BUDGET, FactorBudget, factorize, square_free_decompose
from .intervals import DyadicInterval, sqrt_floor, sqrt_interval
from .rational import (
    Rational,
    RationalLike,
    parse_rational,
    rat,
    rational_str,
    round_nearest,
)
from .sqrtexpr import (
    Comparison,
    Sign,
    SignStats,
    SqrtExpr,
    SqrtExprLike,
    SqrtTerm,
    as_sqrtexpr,
    normalize,
    sign,
    sign_with_stats,
    sqrtsum_compare,
)

__all__ = [
    "Comparison",
    "DEFAULT_BUDGET",
    "DyadicInterval",
    "FactorBudget",
    "Rational",
    "RationalLike",
    "Sign",
    "SignStats",
    "SqrtExpr",
    "SqrtExprLike",
    "SqrtTerm",
    "as_sqrtexpr",
    "factorize",
    "normalize",
    "parse_rational",
    "rat",
    "rational_str",
    "round_nearest",
    "sign",
    "sign_with_stats",
    "sqrt_floor",
    "sqrt_interval",
    "sqrtsum_compare",
    "square_free_decompose",
]
