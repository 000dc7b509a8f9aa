"""Command line front end: check a file, compare a pair, dump the first-order
fixpoint oracle, or re-check a JSON derivation. Exit codes: 0 success/oriented,
1 not oriented or comparison/validation false, 2 input error."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .derivations import Budget, derivation_from_json
from .enumeration import enumerate_terms, subterm_closure
from .fo import rco_fixpoint_oracle
from .report import (
    CheckConfig,
    emit_report,
    run_check,
    run_compare,
    search_precedence,
)
from .terms import is_first_order
from .text import TrsParseError, format_term, parse_term, parse_trs
from .types import Base
from .validate import validate_derivation


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="horco-check",
        description="Termination criteria based on path orderings and "
        "computability closures.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--criterion", choices=("rpo", "rco", "horpo", "horco"), default="horco"
    )
    common.add_argument("--depth", type=_positive, default=12, metavar="N")
    common.add_argument("--red-steps", type=_positive, default=4, metavar="N")
    common.add_argument("--size-slack", type=_positive, default=6, metavar="N")
    common.add_argument("--chain", type=_positive, default=3, metavar="N")
    common.add_argument("--search-precedence", action="store_true")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--universe-size", type=_positive, default=4, metavar="N")

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common], help="orient every rule of a file")
    p.add_argument("file")
    p = sub.add_parser(
        "compare", parents=[common], help="decide one pair under a criterion"
    )
    p.add_argument("file")
    p.add_argument("left")
    p.add_argument("right")
    p = sub.add_parser(
        "oracle", parents=[common], help="dump the first-order fixpoint relation"
    )
    p.add_argument("file")
    p = sub.add_parser(
        "validate", parents=[common], help="re-check a JSON derivation or report"
    )
    p.add_argument("file")
    p.add_argument("json_file")
    return parser


def _load_trs(path: str):
    try:
        source = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return None
    try:
        return parse_trs(source)
    except TrsParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return None


def _cmd_check(args) -> int:
    trs = _load_trs(args.file)
    if trs is None:
        return 2
    config = CheckConfig(
        criterion=args.criterion,
        budget=Budget(args.depth, args.red_steps, args.size_slack),
        chain=args.chain,
        search_precedence=args.search_precedence,
        fmt=args.format,
    )
    try:
        if config.search_precedence:
            found = search_precedence(trs, config)
            if found is not None:
                report = found[2]
            else:
                report = run_check(trs, config)
                if config.fmt == "text":
                    print("no precedence assignment orients every rule; "
                          "reporting under the declared tables")
        else:
            report = run_check(trs, config)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(emit_report(report, config.fmt))
    return 0 if report.all_oriented else 1


def _cmd_compare(args) -> int:
    trs = _load_trs(args.file)
    if trs is None:
        return 2
    config = CheckConfig(
        criterion=args.criterion,
        budget=Budget(args.depth, args.red_steps, args.size_slack),
        chain=args.chain,
        fmt=args.format,
    )
    var_types = {v.name: v.ty for v in trs.variables}
    try:
        left = parse_term(args.left, trs.signature, var_types)
        right = parse_term(args.right, trs.signature, var_types)
    except (TrsParseError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    try:
        report = run_compare(trs, config, left, right)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(emit_report(report, config.fmt))
    return 0 if report.all_oriented else 1


def _cmd_oracle(args) -> int:
    trs = _load_trs(args.file)
    if trs is None:
        return 2
    pool = []
    for sort in trs.sorts:
        pool.extend(
            t
            for t in enumerate_terms(
                trs.signature, Base(sort), args.universe_size, vars=trs.variables
            )
            if is_first_order(t)
        )
    universe = subterm_closure(pool)
    budget = Budget(args.depth, args.red_steps, args.size_slack)
    try:
        pairs = rco_fixpoint_oracle(trs.precedence, trs.statuses, universe, budget)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    rendered = sorted(
        (format_term(l), format_term(r)) for l, r in pairs
    )
    if args.format == "json":
        out = {
            "version": 1,
            "criterion": "oracle",
            "pairs": [{"left": l, "right": r} for l, r in rendered],
            "summary": {"pairs": len(rendered), "universe": len(universe)},
        }
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        print(f"universe: {len(universe)} terms")
        for l, r in rendered:
            print(f"{l} > {r}")
        print(f"pairs: {len(rendered)}")
    return 0


def _cmd_validate(args) -> int:
    trs = _load_trs(args.file)
    if trs is None:
        return 2
    try:
        payload = json.loads(Path(args.json_file).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if isinstance(payload, dict) and "rules" in payload:
        nodes = [
            (f"{entry.get('lhs')} -> {entry.get('rhs')}", entry["derivation"])
            for entry in payload["rules"]
            if entry.get("derivation") is not None
        ]
    elif isinstance(payload, dict) and "conclusion" in payload:
        nodes = [("derivation", payload)]
    else:
        print("error: neither a report nor a derivation node", file=sys.stderr)
        return 2
    budget = Budget(args.depth, args.red_steps, args.size_slack)
    failures = []
    results = []
    for label, node in nodes:
        try:
            d = derivation_from_json(node, trs.signature, set(trs.sorts))
        except (ValueError, TrsParseError) as e:
            print(f"error: {label}: {e}", file=sys.stderr)
            return 2
        bad = validate_derivation(d, trs, budget=budget)
        results.append((label, bad))
        if bad is not None:
            failures.append((label, bad))
    if args.format == "json":
        out = {
            "version": 1,
            "checked": len(results),
            "failures": [
                {"rule": label, "message": str(bad)} for label, bad in failures
            ],
        }
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        for label, bad in results:
            print(f"{label}: {'ok' if bad is None else bad}")
        print(f"checked: {len(results)}, failures: {len(failures)}")
    return 1 if failures else 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    match args.command:
        case "check":
            return _cmd_check(args)
        case "compare":
            return _cmd_compare(args)
        case "oracle":
            return _cmd_oracle(args)
        case "validate":
            return _cmd_validate(args)
    return 2


if __name__ == "__main__":
    sys.exit(main())
