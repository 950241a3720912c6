"""Command line front end.

Exit codes: 0 success / confirmed, 1 refuted / rejected, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import config, harness, hilbert, kripke
from .syntax import ParseError, parse, render
from .three_valued import (
    consequence3_counterexample, eval3, find_countervaluation,
    valuation_from_json, valuation_to_json,
)

EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit directly
        raise UsageError(f"{self.prog}: {message}")


def _formula(text: str):
    try:
        return parse(text)
    except ParseError as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from None


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def cmd_parse(args) -> int:
    f = _formula(args.formula)
    print(render(f, sugar=not args.core))
    return EXIT_OK


def cmd_kripke_eval(args) -> int:
    try:
        m = kripke.model_from_json(_load_json(args.model))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not 0 <= args.world < m.worlds:
        raise UsageError(f"world {args.world} out of range for a {m.worlds}-world model")
    holds = kripke.satisfies(m, args.world, _formula(args.formula))
    print("true" if holds else "false")
    return EXIT_OK if holds else EXIT_REFUTED


def cmd_kripke_countermodel(args) -> int:
    f = _formula(args.formula)
    try:
        w = kripke.countermodel_search(f, args.max_worlds)
    except (config.BudgetExceeded, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if w is None:
        print(f"none found (all models with <= {args.max_worlds} worlds)")
        return EXIT_OK
    print(_dump(w.to_json()))
    return EXIT_REFUTED


def cmd_three_eval(args) -> int:
    try:
        v = valuation_from_json(_load_json(args.valuation))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(eval3(v, _formula(args.formula)).symbol)
    return EXIT_OK


def cmd_three_valid(args) -> int:
    f = _formula(args.formula)
    try:
        w = find_countervaluation(f)
    except config.BudgetExceeded as exc:
        raise UsageError(str(exc)) from None
    if w is None:
        print("3-valid")
        return EXIT_OK
    print(_dump(valuation_to_json(w)))
    return EXIT_REFUTED


def cmd_three_entails(args) -> int:
    items = list(args.items)
    if "--" in items:
        cut = items.index("--")
        gamma, rest = items[:cut], items[cut + 1:]
    else:
        gamma, rest = items[:-1], items[-1:]
    if len(rest) != 1:
        raise UsageError("expected exactly one conclusion after '--'")
    premises = [_formula(g) for g in gamma]
    try:
        w = consequence3_counterexample(premises, _formula(rest[0]))
    except config.BudgetExceeded as exc:
        raise UsageError(str(exc)) from None
    if w is None:
        print("entailed")
        return EXIT_OK
    print(_dump(valuation_to_json(w)))
    return EXIT_REFUTED


def cmd_proof_check(args) -> int:
    try:
        proof = hilbert.proof_from_json(_load_json(args.proof))
    except hilbert.ProofFormatError as exc:
        raise UsageError(str(exc)) from None
    verdict = hilbert.check_proof(proof, hilbert.SystemVariant(args.system))
    print(_dump(verdict.to_json()))
    return EXIT_OK if verdict.accepted else EXIT_REFUTED


def cmd_reproduce(args) -> int:
    try:
        report = harness.reproduce(args.seed, args.claim or None)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True, indent=2))
    else:
        print(report.to_text())
    return EXIT_OK if report.ok else EXIT_REFUTED


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="cjlogic", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("parse", help="parse and pretty-print a formula")
    p.add_argument("formula")
    p.add_argument("--core", action="store_true", help="print without abbreviations")
    p.set_defaults(func=cmd_parse)

    k = sub.add_parser("kripke", help="Kripke semantics").add_subparsers(
        dest="kripke_command", required=True, parser_class=_ArgumentParser
    )
    p = k.add_parser("eval", help="evaluate a formula at a world of a model file")
    p.add_argument("model")
    p.add_argument("world", type=int)
    p.add_argument("formula")
    p.set_defaults(func=cmd_kripke_eval)
    p = k.add_parser("countermodel", help="search small models for a countermodel")
    p.add_argument("formula")
    p.add_argument("--max-worlds", type=int, default=None)
    p.set_defaults(func=cmd_kripke_countermodel)

    t = sub.add_parser("three", help="three-valued semantics").add_subparsers(
        dest="three_command", required=True, parser_class=_ArgumentParser
    )
    p = t.add_parser("eval", help="evaluate a formula under a valuation file")
    p.add_argument("valuation")
    p.add_argument("formula")
    p.set_defaults(func=cmd_three_eval)
    p = t.add_parser("valid", help="check 3-validity")
    p.add_argument("formula")
    p.set_defaults(func=cmd_three_valid)
    p = t.add_parser("entails", help="premises -- conclusion")
    p.add_argument("items", nargs=argparse.REMAINDER)
    p.set_defaults(func=cmd_three_entails)

    pr = sub.add_parser("proof", help="Hilbert proofs").add_subparsers(
        dest="proof_command", required=True, parser_class=_ArgumentParser
    )
    p = pr.add_parser("check", help="check a proof file")
    p.add_argument("proof")
    p.add_argument("--system", choices=[s.value for s in hilbert.SystemVariant], default="cj-minus")
    p.set_defaults(func=cmd_proof_check)

    p = sub.add_parser("reproduce", help="re-derive every registered claim")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--claim", action="append", choices=harness.CLAIM_IDS,
                   help="run only this claim (repeatable)")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "max_worlds", 0) is None:
            args.max_worlds = config.max_worlds()
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
