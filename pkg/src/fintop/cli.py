"""Command-line front end.

Exit codes: 0 success, 1 parse or usage error, 2 size limit exceeded,
3 any other domain error (the error class name goes to stderr), 4 a
verification suite recorded failures.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import coproducts, envelope, grafting
from .canonical import ENUM_LIMIT, enumerate_labeled, enumerate_unlabeled
from .errors import FintopError, ParseError, SizeLimitExceeded
from .hasse import to_dot
from .linear import LinComb, project_unlabeled
from .preorder import Preorder, parse, product
from .verify import SUITES, run_suite

EXIT_OK, EXIT_PARSE, EXIT_LIMIT, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3, 4

VERBS = (
    "product", "graft", "graft-up", "bplus", "star", "ograft", "coprod",
    "gamma", "quotient", "psi", "j", "restrict", "pair",
)
ARITY = {
    "product": 2, "graft": 2, "graft-up": 2, "bplus": 1, "star": 2, "ograft": 2,
    "coprod": 1, "gamma": 1, "quotient": 2, "psi": 1, "j": 1, "restrict": 1, "pair": 3,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage problems count as parse errors
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _operand(arg: str) -> Preorder:
    if arg.startswith("@"):
        try:
            arg = Path(arg[1:]).read_text()
        except OSError as exc:
            raise ParseError(str(exc)) from None
    return parse(arg)


def _labels(arg: str | None, flag: str) -> list[str]:
    if not arg:
        raise ParseError(f"{flag} needs a comma-separated label list")
    return [s.strip() for s in arg.split(",") if s.strip()]


def _emit(result: Preorder | LinComb, unlabeled: bool) -> None:
    if isinstance(result, Preorder):
        if not unlabeled:
            print(result.to_text())
            return
        result = LinComb.of(result)
    if unlabeled:
        result = project_unlabeled(result)
    for line in result.to_lines():
        print(line)


def cmd_enum(args) -> int:
    gen = enumerate_unlabeled(args.n) if args.unlabeled else enumerate_labeled(args.n)
    for t in gen:
        if args.t0 and not t.is_t0():
            continue
        print(t.to_text())
    return EXIT_OK


def cmd_count(args) -> int:
    if args.max_size > ENUM_LIMIT:
        raise SizeLimitExceeded(f"count bound {args.max_size} exceeds {ENUM_LIMIT}")
    print("n,labeled,unlabeled")
    for n in range(args.max_size + 1):
        print(f"{n},{sum(1 for _ in enumerate_labeled(n))},{len(enumerate_unlabeled(n))}")
    return EXIT_OK


def _op_result(args, ops: list[Preorder]) -> Preorder | LinComb:
    v = args.verb
    if v == "product":
        return product(*ops)
    if v in ("graft", "graft-up"):
        at_fn = grafting.graft_at if v == "graft" else grafting.graft_up_at
        sum_fn = grafting.graft if v == "graft" else grafting.graft_up
        return at_fn(ops[0], ops[1], args.at) if args.at else sum_fn(ops[0], ops[1])
    if v == "bplus":
        return grafting.bplus(ops[0], args.star)
    if v == "star":
        return envelope.gl_star(*ops)
    if v == "ograft":
        return envelope.extended_graft(*ops)
    if v == "coprod":
        if args.rule == "graft":
            return coproducts.delta_graft(ops[0], args.cut_rule)
        return coproducts.COPRODUCTS[args.rule](ops[0])
    if v == "gamma":
        return coproducts.gamma(ops[0])
    if v == "quotient":
        return ops[0].quotient(ops[1])
    if v == "psi":
        return grafting.psi_labels(ops[0], _labels(args.a1, "--a1"), _labels(args.a2, "--a2"))
    if v == "j":
        return ops[0].opposite()
    if v == "restrict":
        return ops[0].restrict_labels(_labels(args.on, "--on"))
    raise AssertionError(v)


def cmd_op(args) -> int:
    need = ARITY[args.verb]
    if len(args.operands) != need:
        raise ParseError(f"{args.verb} takes {need} operand(s), got {len(args.operands)}")
    ops = [_operand(a) for a in args.operands]
    if args.verb == "pair":
        print(f"lhs\t{envelope.pairing_lhs(*ops)}")
        print(f"rhs\t{envelope.pairing_rhs(*ops)}")
        return EXIT_OK
    _emit(_op_result(args, ops), args.unlabeled)
    return EXIT_OK


def cmd_verify(args) -> int:
    rep = run_suite(args.suite, args.max_size, args.seed)
    text = json.dumps(rep.to_dict(), indent=2, sort_keys=True)
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n")
    return EXIT_OK if rep.ok else EXIT_VERIFY


def cmd_dot(args) -> int:
    sys.stdout.write(to_dot(_operand(args.t)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fintop", description="Finite topologies: grafting, coproducts, verification.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("enum", help="list topologies on n points")
    e.add_argument("n", type=int)
    e.add_argument("--unlabeled", action="store_true", help="one representative per class")
    e.add_argument("--t0", action="store_true", help="posets only")
    e.set_defaults(func=cmd_enum)

    c = sub.add_parser("count", help="CSV table of labeled/unlabeled counts")
    c.add_argument("--max-size", type=int, default=4)
    c.set_defaults(func=cmd_count)

    o = sub.add_parser("op", help="run one operation")
    o.add_argument("verb", choices=VERBS)
    o.add_argument("operands", nargs="*", help="topologies in text or JSON form, or @file")
    o.add_argument("--at", help="graft vertex")
    o.add_argument("--star", default="*", help="label of the new minimum for bplus")
    o.add_argument("--rule", choices=("ffm", "graft", "gamma"), default="graft")
    o.add_argument("--cut-rule", choices=("graft", "literal-min"), default="graft")
    o.add_argument("--a1", help="first psi block, comma separated")
    o.add_argument("--a2", help="second psi block, comma separated")
    o.add_argument("--on", help="labels to restrict to, comma separated")
    o.add_argument("--unlabeled", action="store_true", help="sum over homeomorphism classes")
    o.set_defaults(func=cmd_op)

    v = sub.add_parser("verify", help="run a verification suite and print a JSON report")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--max-size", type=int, default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", help="also write the report here")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("dot", help="Graphviz Hasse diagram of the quotient poset")
    d.add_argument("t")
    d.set_defaults(func=cmd_dot)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: ParseError: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeLimitExceeded as exc:
        print(f"error: SizeLimitExceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except FintopError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
