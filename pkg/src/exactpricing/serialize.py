"""JSON wire formats.

All numeric payloads are exact: rationals travel as "num/den" strings and
square-root expressions as {"rational": ..., "terms": [{"coef": ...,
"radicand": d}, ...]} with square-free radicands.  Parsers are lenient
about scalar spellings (bare ints and integer strings are accepted
anywhere a rational fits); emitters always produce the canonical forms.
"""

from __future__ import annotations

from typing import Any, Mapping, Sequence

from .distmodel import SoapInstance, TwoPointAttribute
from .errors import InvalidInstance
from .exactnum import Rational, SqrtExpr, parse_rational, rational_str
from .reductions import (
    ReductionTranscript,
    SqrtSumInstance,
    SubsetSumInstance,
)
from .soap import PriceReport
from .unitdemand import UNPRICED, Price, PriceVector, TwoPointItem, _UnpricedType

UNPRICED_TOKEN = "inf"


def _fail(kind: str, payload: Any) -> InvalidInstance:
    return InvalidInstance(f"malformed {kind}: {payload!r}")


# -- scalars ----------------------------------------------------------------


def rational_to_json(q: Rational) -> str:
    return rational_str(q)


def rational_from_json(payload: Any) -> Rational:
    try:
        return parse_rational(payload)
    except (ValueError, TypeError) as exc:
        raise _fail("rational", payload) from exc


def sqrtexpr_to_json(expr: SqrtExpr) -> dict[str, Any]:
    return {
        "rational": rational_str(expr.rational_part),
        "terms": [
            {"coef": rational_str(c), "radicand": int(d)} for d, c in expr.terms
        ],
    }


def sqrtexpr_from_json(payload: Any) -> SqrtExpr:
    if isinstance(payload, (int, str)):
        return SqrtExpr.from_rational(rational_from_json(payload))
    if isinstance(payload, Mapping):
        try:
            terms = [
                (int(t["radicand"]), parse_rational(t["coef"]))
                for t in payload.get("terms", ())
            ]
            return SqrtExpr(parse_rational(payload.get("rational", 0)), terms)
        except (KeyError, TypeError, ValueError) as exc:
            raise _fail("sqrtexpr", payload) from exc
    raise _fail("sqrtexpr", payload)


# -- attribute-sum instances ------------------------------------------------


def soap_instance_to_json(instance: SoapInstance) -> dict[str, Any]:
    return {
        "attributes": [
            {"u": attr.high, "v": attr.low, "p": rational_str(attr.p_high)}
            for attr in instance.attributes
        ]
    }


def soap_instance_from_json(payload: Any) -> SoapInstance:
    if not isinstance(payload, Mapping) or "attributes" not in payload:
        raise _fail("attribute-sum instance", payload)
    try:
        attrs = [
            TwoPointAttribute(int(a["u"]), int(a["v"]), parse_rational(a["p"]))
            for a in payload["attributes"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise _fail("attribute-sum instance", payload) from exc
    return SoapInstance(attrs)


def price_report_to_json(report: PriceReport, approx: bool = False) -> dict[str, Any]:
    out: dict[str, Any] = {
        "price": report.price,
        "revenue": rational_str(report.revenue),
    }
    if approx:
        out["revenue_approx"] = float(report.revenue)
    if report.curve is not None:
        out["curve"] = [
            {"price": price, "revenue": rational_str(revenue)}
            for price, revenue in report.curve
        ]
    return out


# -- unit-demand instances ----------------------------------------------------


def item_to_json(item: TwoPointItem) -> dict[str, Any]:
    p = item.p_high
    return {
        "high": sqrtexpr_to_json(item.high),
        "low": sqrtexpr_to_json(item.low),
        "p": sqrtexpr_to_json(p) if isinstance(p, SqrtExpr) else rational_str(p),
    }


def item_from_json(payload: Any) -> TwoPointItem:
    if not isinstance(payload, Mapping):
        raise _fail("item", payload)
    try:
        return TwoPointItem(
            sqrtexpr_from_json(payload["high"]),
            sqrtexpr_from_json(payload["low"]),
            sqrtexpr_from_json(payload["p"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise _fail("item", payload) from exc


def items_to_json(items: Sequence[TwoPointItem]) -> dict[str, Any]:
    return {"items": [item_to_json(item) for item in items]}


def items_from_json(payload: Any) -> tuple[TwoPointItem, ...]:
    if not isinstance(payload, Mapping) or "items" not in payload:
        raise _fail("unit-demand instance", payload)
    return tuple(item_from_json(item) for item in payload["items"])


def price_to_json(price: Price) -> Any:
    if isinstance(price, _UnpricedType):
        return UNPRICED_TOKEN
    return sqrtexpr_to_json(price)


def price_from_json(payload: Any) -> Price:
    if payload == UNPRICED_TOKEN:
        return UNPRICED
    return sqrtexpr_from_json(payload)


def prices_to_json(prices: PriceVector) -> list[Any]:
    return [price_to_json(p) for p in prices]


def prices_from_json(payload: Any) -> PriceVector:
    if not isinstance(payload, Sequence) or isinstance(payload, (str, bytes)):
        raise _fail("price vector", payload)
    return tuple(price_from_json(p) for p in payload)


# -- reduction instances ------------------------------------------------------


def subsetsum_to_json(ssi: SubsetSumInstance) -> dict[str, Any]:
    return {"a": list(ssi.a), "T": ssi.target}


def subsetsum_from_json(payload: Any) -> SubsetSumInstance:
    if not isinstance(payload, Mapping):
        raise _fail("subset-sum instance", payload)
    try:
        return SubsetSumInstance(payload["a"], payload["T"])
    except (KeyError, TypeError, ValueError) as exc:
        raise _fail("subset-sum instance", payload) from exc


def sqrtsum_to_json(sq: SqrtSumInstance) -> dict[str, Any]:
    return {"a": list(sq.a), "K": sq.k}


def sqrtsum_from_json(payload: Any) -> SqrtSumInstance:
    if not isinstance(payload, Mapping):
        raise _fail("sqrt-sum instance", payload)
    try:
        return SqrtSumInstance(payload["a"], payload["K"])
    except (KeyError, TypeError, ValueError) as exc:
        raise _fail("sqrt-sum instance", payload) from exc


def transcript_to_json(transcript: ReductionTranscript) -> dict[str, Any]:
    params = transcript.parameters
    return {
        "instance": subsetsum_to_json(transcript.instance),
        "parameters": {
            "n": params.n,
            "total": params.total,
            "target": params.target,
            "p1": rational_str(params.p1),
            "epsilon": rational_str(params.epsilon),
            "base": params.base,
            "u_last": params.u_last,
            "v_last": params.v_last,
        },
        "oracle_calls": [
            {"p": rational_str(p), "answer": answer.value}
            for p, answer in transcript.oracle_calls
        ],
        "pstar": rational_str(transcript.pstar),
        "Q": rational_str(transcript.q_value),
        "counts": list(transcript.counts),
        "count": transcript.count,
    }


__all__ = [
    "UNPRICED_TOKEN",
    "item_from_json",
    "item_to_json",
    "items_from_json",
    "items_to_json",
    "price_from_json",
    "price_report_to_json",
    "price_to_json",
    "prices_from_json",
    "prices_to_json",
    "rational_from_json",
    "rational_to_json",
    "soap_instance_from_json",
    "soap_instance_to_json",
    "sqrtexpr_from_json",
    "sqrtexpr_to_json",
    "sqrtsum_from_json",
    "sqrtsum_to_json",
    "subsetsum_from_json",
    "subsetsum_to_json",
    "transcript_to_json",
]
