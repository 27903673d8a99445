"""Command line interface.

Exit codes: 0 for success (derivable, consistent, suite green), 1 for a
negative or failed outcome, 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bcd
from . import derivation as dv
from .consistency import consistent, self_consistent
from .subtype import check_sub, trans_compose
from .suites import SUITE_NAMES, run_suite
from .syntax import (
    ParseError,
    derivation_from_json,
    derivation_to_json,
    format_derivation_tree,
    parse_type,
    print_type,
)


def _cmd_check(args: argparse.Namespace) -> int:
    a = parse_type(args.lhs)
    b = parse_type(args.rhs)
    if check_sub(a, b) is not None:
        print("yes")
        return 0
    print("no")
    return 1


def _emit_new(d: dv.Derivation, fmt: str) -> None:
    if fmt == "tree":
        print(format_derivation_tree(d))
    else:
        print(derivation_to_json(d))


def _cmd_derive(args: argparse.Namespace) -> int:
    a = parse_type(args.lhs)
    b = parse_type(args.rhs)
    d = check_sub(a, b)
    if d is None:
        print(f"not derivable: {print_type(a)} <: {print_type(b)}")
        return 1
    _emit_new(d, args.format)
    return 0


def _cmd_bcd(args: argparse.Namespace) -> int:
    a = parse_type(args.lhs)
    b = parse_type(args.rhs)
    d = bcd.bcd_search(a, b, max_depth=args.max_depth)
    if d is None:
        print("inconclusive")
        return 1
    if args.format == "tree":
        print(format_derivation_tree(d))
    else:
        print(derivation_to_json(d))
    return 0


def _cmd_translate(args: argparse.Namespace) -> int:
    if args.certificate == "-":
        text = sys.stdin.read()
    else:
        with open(args.certificate, "r", encoding="utf-8") as fh:
            text = fh.read()
    source = "new" if args.to == "bcd" else "bcd"
    d = derivation_from_json(text, system=source)
    if source == "new":
        res = dv.validate(d)
        if not res.ok:
            print(f"invalid input certificate: {res.reason}", file=sys.stderr)
            return 2
        out = bcd.to_bcd(d, check_input=False)
    else:
        bres = bcd.bcd_validate(d)
        if not bres.ok:
            print(f"invalid input certificate: {bres.reason}", file=sys.stderr)
            return 2
        out = bcd.from_bcd(d, check_input=False)
    print(derivation_to_json(out))
    return 0


def _cmd_trans(args: argparse.Namespace) -> int:
    a = parse_type(args.a)
    b = parse_type(args.b)
    c = parse_type(args.c)
    d1 = check_sub(a, b)
    if d1 is None:
        print(f"not derivable: {print_type(a)} <: {print_type(b)}")
        return 1
    d2 = check_sub(b, c)
    if d2 is None:
        print(f"not derivable: {print_type(b)} <: {print_type(c)}")
        return 1
    _emit_new(trans_compose(d1, d2, check_inputs=False), args.format)
    return 0


def _cmd_consistent(args: argparse.Namespace) -> int:
    a = parse_type(args.lhs)
    b = parse_type(args.rhs)
    if consistent(a, b):
        print("yes")
        return 0
    print("no")
    return 1


def _cmd_self_consistent(args: argparse.Namespace) -> int:
    a = parse_type(args.type)
    if self_consistent(a):
        print("yes")
        return 0
    print("no")
    return 1


def _cmd_suite(args: argparse.Namespace) -> int:
    names = SUITE_NAMES if args.name == "all" else (args.name,)
    reports = [
        run_suite(
            name,
            atoms=args.atoms,
            max_size=args.max_size,
            seed=args.seed,
            jobs=args.jobs,
        )
        for name in names
    ]
    if args.report == "json":
        print(json.dumps([r.to_obj() for r in reports], indent=2))
    else:
        for r in reports:
            print(r.to_text())
    return 0 if all(r.success for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="itsub",
        description=(
            "Decide intersection-type subtyping, produce and translate "
            "checkable certificates, and run differential property suites."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide whether LHS <: RHS")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("derive", help="produce a certificate for LHS <: RHS")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.add_argument("--format", choices=("json", "tree"), default="json")
    p.set_defaults(func=_cmd_derive)

    p = sub.add_parser(
        "bcd", help="bounded proof search in the declarative system"
    )
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.add_argument("--max-depth", type=int, default=8)
    p.add_argument("--format", choices=("json", "tree"), default="json")
    p.set_defaults(func=_cmd_bcd)

    p = sub.add_parser(
        "translate",
        help="translate a serialized certificate between the two systems",
    )
    p.add_argument("certificate", help="path to a certificate file, or - for stdin")
    p.add_argument("--to", choices=("bcd", "new"), required=True)
    p.set_defaults(func=_cmd_translate)

    p = sub.add_parser(
        "trans", help="derive A <: B and B <: C, then compose them"
    )
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("c")
    p.add_argument("--format", choices=("json", "tree"), default="json")
    p.set_defaults(func=_cmd_trans)

    p = sub.add_parser("consistent", help="decide consistency of two types")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(func=_cmd_consistent)

    p = sub.add_parser(
        "self-consistent", help="decide self-consistency of one type"
    )
    p.add_argument("type")
    p.set_defaults(func=_cmd_self_consistent)

    p = sub.add_parser("suite", help="run a named property suite")
    p.add_argument("name", choices=SUITE_NAMES + ("all",))
    p.add_argument("--atoms", type=int, default=2)
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_suite)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
