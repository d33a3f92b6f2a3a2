"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .certificate import check_certificate, dumps, to_certificate, to_latex, to_text
from .errors import (
    ExprSyntaxError,
    GroupSpecError,
    PoissonNoetherError,
    PresentationError,
    RankMismatchError,
    ResourceError,
    VerificationError,
)
from .expr import parse_ratfn
from .group import DEFAULT_ORDER_BOUND, group_from_spec, parse_group_spec
from .invariants import fundamental_invariants, jacobian
from .noether import construct
from .poisson import bracket
from .ratfunc import reduction

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poisson-noether",
        description="Exact invariant Darboux coordinates for reflection and wreath groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", help="Poisson bracket of two expressions")
    p.add_argument("-n", "--rank", type=int, required=True)
    p.add_argument("f")
    p.add_argument("g")

    def group_opts(p):
        p.add_argument("spec", help="group spec, e.g. Sn(n=3), G(m=4,p=2,n=2), wreath(BD(n=2),3)")
        p.add_argument("--max-group-order", type=int, default=DEFAULT_ORDER_BOUND)
        p.add_argument("--reduce", action=argparse.BooleanOptionalAction, default=True,
                       help="gcd-reduce rational functions (default on)")
        p.add_argument("-o", "--output", help="write to this file instead of stdout")

    p = sub.add_parser("construct", help="build and certify Darboux generators")
    group_opts(p)
    p.add_argument("--emit", choices=("json", "latex", "text"), default="json")
    p.add_argument("--seed", type=int, default=0, help="seed for the independence witness")

    p = sub.add_parser("invariants", help="basic invariants and Jacobian data")
    group_opts(p)

    p = sub.add_parser("verify", help="re-check a JSON certificate")
    p.add_argument("file")
    p.add_argument("--max-group-order", type=int, default=DEFAULT_ORDER_BOUND)
    return parser


def _emit(text: str, path: str | None, out) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


def _cmd_bracket(args, out) -> int:
    if args.rank < 1:
        raise _UsageError("rank must be >= 1")
    f = parse_ratfn(args.f, args.rank)
    g = parse_ratfn(args.g, args.rank)
    out.write(f"{bracket(f, g)}\n")
    return EXIT_OK


def _cmd_construct(args, out) -> int:
    spec = str(parse_group_spec(args.spec))
    with reduction(args.reduce):
        action = group_from_spec(spec, args.max_group_order)
        solution = construct(action, seed=args.seed)
        if args.emit == "json":
            text = dumps(to_certificate(solution, spec, args.seed))
        elif args.emit == "latex":
            text = to_latex(solution, spec)
        else:
            text = to_text(solution, spec)
    _emit(text, args.output, out)
    return EXIT_OK


def _cmd_invariants(args, out) -> int:
    spec = str(parse_group_spec(args.spec))
    with reduction(args.reduce):
        action = group_from_spec(spec, args.max_group_order)
        sys_ = fundamental_invariants(action)
        jd = jacobian(sys_)
    doc = {"spec": spec, "system": sys_.to_json(), "jacobian": jd.to_json()}
    _emit(json.dumps(doc, indent=2) + "\n", args.output, out)
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            cert = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise _UsageError(f"cannot read certificate: {exc}") from exc
    result = check_certificate(cert, args.max_group_order)
    if result.ok:
        out.write("OK\n")
        return EXIT_OK
    for note in result.notes:
        out.write(f"FAIL {note}\n")
    return EXIT_FAIL


_COMMANDS = {
    "bracket": _cmd_bracket,
    "construct": _cmd_construct,
    "invariants": _cmd_invariants,
    "verify": _cmd_verify,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args, out)
    except (_UsageError, ExprSyntaxError, GroupSpecError, RankMismatchError, ResourceError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (VerificationError, PresentationError) as exc:
        entry = getattr(exc, "entry", None)
        err.write(f"verification failed{f' at {entry}' if entry else ''}: {exc}\n")
        return EXIT_FAIL
    except PoissonNoetherError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())
