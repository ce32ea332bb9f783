"""Batch command-line front end.

One subcommand per invocation; instances arrive as JSON via --input FILE
or --json STRING, results leave as JSON on stdout.  A top-level JSON array
is treated as a batch of independent instances and yields an array of
results in input order (optionally computed in parallel with --jobs).

Exit codes: 0 success (both outcomes of a decision are successes and are
reported in the payload), 1 bad input, 2 a size/state budget was
exceeded, 3 an exactly-checked structural property failed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any

from . import serialize, soap, unitdemand
from .distmodel import DEFAULT_STATE_BUDGET
from .errors import (
    BudgetExceeded,
    DecodeError,
    EqualityInstance,
    InstanceTooLarge,
    InvalidInstance,
    ProofViolation,
    SearchTooLarge,
    TooManyAttributes,
    TooManyItems,
)
from .exactnum import Comparison, rational_str
from .generators import gen_soap, gen_sqrtsum, gen_subsetsum
from .reductions import (
    build_ud_probs,
    build_ud_values,
    count_subsets_with_transcript,
    verify_price_cases,
)
from .unitdemand import TieBreak

_BUDGET_ERRORS = (
    BudgetExceeded,
    InstanceTooLarge,
    TooManyAttributes,
    TooManyItems,
    SearchTooLarge,
)

_TIES = {
    "expensive": TieBreak.MOST_EXPENSIVE,
    "cheapest": TieBreak.CHEAPEST,
    "index": TieBreak.LOWEST_INDEX,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1, not argparse's 2
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="exactpricing", description=__doc__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name: str, help_text: str, needs_input: bool = True) -> _Parser:
        cmd = sub.add_parser(name, help=help_text)
        if needs_input:
            src = cmd.add_mutually_exclusive_group(required=True)
            src.add_argument("--input", help="path to a JSON instance file")
            src.add_argument("--json", help="inline JSON instance")
        cmd.add_argument("--verbose", action="store_true",
                         help="human-readable summary on stderr")
        cmd.add_argument("--approx", action="store_true",
                         help="add decimal renderings, clearly labeled approximate")
        cmd.add_argument("--jobs", type=int, default=1,
                         help="parallel workers for batch (array) inputs")
        cmd.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET,
                         help="pseudo-polynomial state budget")
        cmd.add_argument("--tie", choices=sorted(_TIES), default="expensive",
                         help="unit-demand tie-breaking rule")
        cmd.add_argument("--seed", type=int, default=None,
                         help="RNG seed (required for sampling commands)")
        return cmd

    add("solve-soap", "optimal single price for an attribute-sum instance")
    add("solve-bundle", "optimal grand-bundle price (alias of solve-soap)")
    ud = add("solve-unitdemand",
             "best price vector over per-item candidate sets")
    ud.add_argument("--curve", action="store_true", help=argparse.SUPPRESS)
    add("eval-pricing", "exact expected revenue of a given price vector")
    rc = add("reduce-count", "count subsets reaching the target via the pricing oracle")
    rc.add_argument("--transcript", action="store_true",
                    help="include the full audit transcript in the output")
    add("reduce-sqrtsum-values",
        "decide sum(sqrt(a_i)) > K via the square-root-values construction")
    add("reduce-sqrtsum-probs",
        "decide sum(sqrt(a_i)) > K via the square-root-probabilities construction")
    add("verify-thm1",
        "exhaustively check the two-price revenue case analysis at a given p")
    gen = add("gen-instance", "reproducible random instance", needs_input=False)
    gen.add_argument("--kind", required=True,
                     choices=("subsetsum", "sqrtsum", "soap"))
    gen.add_argument("--n", type=int, required=True, help="instance size")
    gen.add_argument("--max", type=int, default=20, dest="max_value",
                     help="largest generated value")
    gen.add_argument("--exclude-equal", action="store_true",
                     help="resample sqrt-sum instances until the comparison is strict")
    return parser


# -- handlers -----------------------------------------------------------------


def _handle_solve_soap(payload: Any, opts: dict[str, Any]) -> dict[str, Any]:
    instance = serialize.soap_instance_from_json(payload)
    report = soap.optimal_price(instance, budget=opts["budget"])
    return serialize.price_report_to_json(report, approx=opts["approx"])


def _default_candidates(items) -> list[list[Any]]:
    return [[item.high, item.low, unitdemand.UNPRICED] for item in items]


def _handle_solve_unitdemand(payload: Any, opts: dict[str, Any]) -> dict[str, Any]:
    items = serialize.items_from_json(payload)
    if isinstance(payload, dict) and "candidates" in payload:
        candidates = [
            [serialize.price_from_json(p) for p in group]
            for group in payload["candidates"]
        ]
    else:
        candidates = _default_candidates(items)
    prices, revenue = unitdemand.best_over_candidates(
        items, candidates, tie=opts["tie"]
    )
    out: dict[str, Any] = {
        "prices": serialize.prices_to_json(prices),
        "revenue": serialize.sqrtexpr_to_json(revenue),
    }
    if opts["approx"]:
        out["revenue_approx"] = revenue.approx()
    return out


def _handle_eval_pricing(payload: Any, opts: dict[str, Any]) -> dict[str, Any]:
    items = serialize.items_from_json(payload)
    if not isinstance(payload, dict) or "prices" not in payload:
        raise InvalidInstance("eval-pricing needs an explicit 'prices' list")
    prices = serialize.prices_from_json(payload["prices"])
    revenue = unitdemand.expected_revenue(items, prices, tie=opts["tie"])
    out: dict[str, Any] = {"revenue": serialize.sqrtexpr_to_json(revenue)}
    if opts["approx"]:
        out["revenue_approx"] = revenue.approx()
    return out


def _handle_reduce_count(payload: Any, opts: dict[str, Any]) -> dict[str, Any]:
    ssi = serialize.subsetsum_from_json(payload)
    count, transcript = count_subsets_with_transcript(ssi)
    out: dict[str, Any] = {
        "count": count,
        "pstar": rational_str(transcript.pstar),
        "Q": rational_str(transcript.q_value),
    }
    if opts["transcript"]:
        out["transcript"] = serialize.transcript_to_json(transcript)
    return out


def _handle_reduce_values(payload: Any, opts: dict[str, Any]) -> dict[str, Any]:
    sq = serialize.sqrtsum_from_json(payload)
    red = build_ud_values(sq)
    rev1 = unitdemand.expected_revenue(red.items, red.scheme1)
    rev2 = unitdemand.expected_revenue(red.items, red.scheme2)
    answer = Comparison.GREATER if rev2 > rev1 else Comparison.LESS
    out: dict[str, Any] = {
        "answer": answer.value,
        "epsilon": rational_str(red.epsilon),
        "T": rational_str(red.t_value),
        "scheme1_revenue": serialize.sqrtexpr_to_json(rev1),
        "scheme2_revenue": serialize.sqrtexpr_to_json(rev2),
    }
    if opts["approx"]:
        out["scheme1_approx"] = rev1.approx()
        out["scheme2_approx"] = rev2.approx()
    return out


def _handle_reduce_probs(payload: Any, opts: dict[str, Any]) -> dict[str, Any]:
    sq = serialize.sqrtsum_from_json(payload)
    red = build_ud_probs(sq)
    rev1 = unitdemand.expected_revenue(red.items, red.scheme1)
    rev2 = unitdemand.expected_revenue(red.items, red.scheme2)
    answer = Comparison.GREATER if rev1 > rev2 else Comparison.LESS
    out: dict[str, Any] = {
        "answer": answer.value,
        "X": red.x_value,
        "T": rational_str(red.t_value),
        "scheme1_revenue": serialize.sqrtexpr_to_json(rev1),
        "scheme2_revenue": serialize.sqrtexpr_to_json(rev2),
    }
    if opts["approx"]:
        out["scheme1_approx"] = rev1.approx()
        out["scheme2_approx"] = rev2.approx()
    return out


def _handle_verify(payload: Any, opts: dict[str, Any]) -> dict[str, Any]:
    if not isinstance(payload, dict) or "p" not in payload:
        raise InvalidInstance("verify-thm1 needs {'a': [...], 'T': ..., 'p': ...}")
    ssi = serialize.subsetsum_from_json(payload)
    report = verify_price_cases(ssi, serialize.rational_from_json(payload["p"]))
    return {
        "ok": True,
        "p": rational_str(report.p),
        "revenue_at_one": rational_str(report.revenue_at_one),
        "revenue_at_high": rational_str(report.revenue_at_high),
        "grid_max": rational_str(report.grid_max),
        "prices_checked": report.prices_checked,
        "optimal_price": report.optimal.price,
    }


_HANDLERS = {
    "solve-soap": _handle_solve_soap,
    "solve-bundle": _handle_solve_soap,
    "solve-unitdemand": _handle_solve_unitdemand,
    "eval-pricing": _handle_eval_pricing,
    "reduce-count": _handle_reduce_count,
    "reduce-sqrtsum-values": _handle_reduce_values,
    "reduce-sqrtsum-probs": _handle_reduce_probs,
    "verify-thm1": _handle_verify,
}


def _handle_gen(args: argparse.Namespace) -> dict[str, Any]:
    if args.seed is None:
        raise InvalidInstance("gen-instance requires --seed for reproducibility")
    rng = random.Random(args.seed)
    if args.kind == "subsetsum":
        return serialize.subsetsum_to_json(gen_subsetsum(args.n, args.max_value, rng))
    if args.kind == "sqrtsum":
        return serialize.sqrtsum_to_json(
            gen_sqrtsum(args.n, args.max_value, rng, exclude_equal=args.exclude_equal)
        )
    return serialize.soap_instance_to_json(gen_soap(args.n, args.max_value, rng))


def _worker(command: str, entry: str, opts: dict[str, Any]) -> dict[str, Any]:
    """Process one batch entry; module-level so process pools can pickle it."""
    opts = dict(opts)
    opts["tie"] = _TIES[opts["tie"]]
    return _HANDLERS[command](json.loads(entry), opts)


def _load_payload(args: argparse.Namespace) -> Any:
    if args.json is not None:
        text = args.json
    else:
        with open(args.input, "r", encoding="utf-8") as handle:
            text = handle.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInstance(f"input is not valid JSON: {exc}") from exc


def _error_payload(exc: Exception) -> dict[str, str]:
    if isinstance(exc, EqualityInstance):
        return {"error": "equality instance", "detail": str(exc)}
    return {"error": str(exc)}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(json.dumps({"error": str(exc)}))
        print(f"error: {exc}", file=sys.stderr)
        return 1

    try:
        if args.command == "gen-instance":
            result: Any = _handle_gen(args)
        else:
            payload = _load_payload(args)
            opts = {
                "budget": args.budget,
                "tie": args.tie,
                "approx": args.approx,
                "transcript": getattr(args, "transcript", False),
            }
            if isinstance(payload, list):
                entries = [json.dumps(entry) for entry in payload]
                if args.jobs > 1:
                    with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                        result = list(
                            pool.map(_worker, [args.command] * len(entries),
                                     entries, [opts] * len(entries))
                        )
                else:
                    result = [_worker(args.command, entry, opts) for entry in entries]
            else:
                result = _worker(args.command, json.dumps(payload), opts)
    except (InvalidInstance, ValueError) as exc:
        print(json.dumps(_error_payload(exc)))
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _BUDGET_ERRORS as exc:
        print(json.dumps(_error_payload(exc)))
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 2
    except (ProofViolation, DecodeError) as exc:
        print(json.dumps(_error_payload(exc)))
        print(f"structural property violated: {exc}", file=sys.stderr)
        return 3

    print(json.dumps(result))
    if args.verbose:
        summaries = result if isinstance(result, list) else [result]
        for entry in summaries:
            print(_summarize(args.command, entry), file=sys.stderr)
    return 0


def _summarize(command: str, result: dict[str, Any]) -> str:
    if command in ("solve-soap", "solve-bundle"):
        return f"optimal price {result['price']} with revenue {result['revenue']}"
    if command == "reduce-count":
        return f"{result['count']} subsets reach the target (pstar={result['pstar']})"
    if command.startswith("reduce-sqrtsum"):
        return f"decision: sum of square roots is {result['answer']} than K"
    if command == "verify-thm1":
        return (f"all revenue cases hold; optimal price {result['optimal_price']}, "
                f"grid max {result['grid_max']}")
    if command == "eval-pricing":
        return f"expected revenue {json.dumps(result['revenue'])}"
    if command == "solve-unitdemand":
        return f"best revenue {json.dumps(result['revenue'])}"
    return json.dumps(result)


if __name__ == "__main__":
    sys.exit(main())
