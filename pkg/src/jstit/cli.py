"""Batch command-line front end.

Subcommands: ``parse``, ``validate``, ``eval``, ``prove-check``, ``search``,
``fuzz``.  Exit codes:

    0   true / ok / found
    1   false / unsat / rejected
    2   input syntax error
    3   validation failure (bad model, unknown moment/history/agent)
    4   budget abort

All input and output paths are explicit flags; the only environment
variable consulted is ``JSTIT_COLOR`` (set to ``1`` to colorize verdicts).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .checker import EvaluationError, eval_formula
from .explorer import (
    Aborted,
    Bounds,
    DEFAULT_BOUNDS,
    ExhaustedUnsat,
    Found,
    FUZZ_BOUNDS,
    find_satisfying,
    soundness_fuzz,
)
from .model import ModelLoadError, load_model_path
from .proofkit import (
    ProofLoadError,
    check_proof,
    check_refutation,
    load_proof_path,
    load_refutation,
)
from .syntax import ParseError, parse_formula, parse_term, print_formula, print_term

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_SYNTAX = 2
EXIT_VALIDATION = 3
EXIT_BUDGET = 4


def _color(text: str, code: str) -> str:
    if os.environ.get("JSTIT_COLOR") == "1":
        return f"\x1b[{code}m{text}\x1b[0m"
    return text


def _good(text: str) -> str:
    return _color(text, "32")


def _bad(text: str) -> str:
    return _color(text, "31")


def cmd_parse(args) -> int:
    if (args.formula is None) == (args.term is None):
        print("parse: exactly one of --formula or --term is required",
              file=sys.stderr)
        return EXIT_SYNTAX
    try:
        if args.formula is not None:
            ast = parse_formula(args.formula)
            print(print_formula(ast, resugar_implications=args.resugar))
        else:
            ast = parse_term(args.term)
            print(print_term(ast))
    except ParseError as e:
        print(f"syntax error: {e}", file=sys.stderr)
        return EXIT_SYNTAX
    return EXIT_TRUE


def cmd_validate(args) -> int:
    try:
        model = load_model_path(args.model)
    except ModelLoadError as e:
        print(f"model error: {e}", file=sys.stderr)
        return EXIT_SYNTAX
    report = model.validate()
    for note in report.satisfied_by_construction:
        print(f"  ok   {note}")
    if report.ok:
        print(_good("valid"))
        return EXIT_TRUE
    for v in report.violations:
        print(f"  {_bad('FAIL')} {v}")
    print(_bad(f"invalid: {len(report.violations)} violation(s)"))
    return EXIT_VALIDATION


def cmd_eval(args) -> int:
    try:
        model = load_model_path(args.model)
        formula = parse_formula(args.formula)
    except (ModelLoadError, ParseError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_SYNTAX
    try:
        verdict = eval_formula(model, args.moment, args.history, formula)
    except EvaluationError as e:
        print(f"evaluation error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    print(_good("true") if verdict else _bad("false"))
    return EXIT_TRUE if verdict else EXIT_FALSE


def cmd_prove_check(args) -> int:
    agents = args.agents.split(",") if args.agents else None
    try:
        if args.refutation:
            cert = load_refutation(open(args.proof, encoding="utf-8").read())
            result = check_refutation(cert, agents)
        else:
            proof = load_proof_path(args.proof)
            result = check_proof(proof, agents)
    except (ProofLoadError, OSError) as e:
        print(f"proof error: {e}", file=sys.stderr)
        return EXIT_SYNTAX
    if result.ok:
        print(_good("ok"))
        return EXIT_TRUE
    print(_bad(result.message))
    return EXIT_FALSE


def _bounds_from_args(args, default: Bounds) -> Bounds:
    pool = default.act_term_pool
    if args.act_pool is not None:
        pool = tuple(parse_term(s) for s in args.act_pool.split(",") if s)
    return Bounds(
        max_moments=args.max_moments or default.max_moments,
        max_branching=args.max_branching or default.max_branching,
        max_depth=args.max_depth or default.max_depth,
        agents=args.agents or default.agents,
        atom_set=(tuple(args.atoms.split(",")) if args.atoms
                  else default.atom_set),
        act_term_pool=pool,
        r_mode=args.r_mode or default.r_mode,
    )


def cmd_search(args) -> int:
    try:
        formula = parse_formula(args.formula)
        bounds = _bounds_from_args(args, DEFAULT_BOUNDS)
    except ParseError as e:
        print(f"syntax error: {e}", file=sys.stderr)
        return EXIT_SYNTAX
    outcome = find_satisfying(formula, bounds, budget=args.budget)
    if isinstance(outcome, Found):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(outcome.model.to_json())
        print(f"{_good('SAT')} at ({outcome.point.m}, {outcome.point.h}); "
              f"model written to {args.out}")
        print(f"checked {outcome.stats.models_checked} models in "
              f"{outcome.stats.elapsed_seconds:.2f}s")
        return EXIT_TRUE
    if isinstance(outcome, ExhaustedUnsat):
        print(f"{_bad('UNSAT')} within bounds "
              f"({outcome.stats.models_checked} models, "
              f"{outcome.stats.elapsed_seconds:.2f}s)")
        return EXIT_FALSE
    assert isinstance(outcome, Aborted)
    print(f"budget of {outcome.budget} models exhausted "
          f"({outcome.stats.elapsed_seconds:.2f}s)", file=sys.stderr)
    return EXIT_BUDGET


def cmd_fuzz(args) -> int:
    bounds = _bounds_from_args(args, FUZZ_BOUNDS)
    relax = frozenset(args.relax_constraint.split(",")) if args.relax_constraint \
        else frozenset()
    report = soundness_fuzz(args.seed, args.iterations, bounds, relax)
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(report.to_dict(), fh, indent=2)
    print(f"report written to {args.out}")
    if report.ok:
        print(_good(f"ok: {report.iterations} iterations, 0 counterexamples"))
        return EXIT_TRUE
    print(_bad(f"{len(report.counterexamples)} counterexample(s) found"))
    first = report.counterexamples[0]
    print(f"first: {first.scheme.value} instance "
          f"{print_formula(first.formula, resugar_implications=True)}")
    return EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="jstit",
        description="Workbench for implicit justification-stit logic.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse and reprint a formula or term")
    p.add_argument("--formula")
    p.add_argument("--term")
    p.add_argument("--resugar", action="store_true",
                   help="print implications as A -> B")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("validate", help="validate a model file")
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("eval", help="evaluate a formula at a moment-history pair")
    p.add_argument("--model", required=True)
    p.add_argument("--moment", required=True)
    p.add_argument("--history", required=True)
    p.add_argument("--formula", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("prove-check", help="check a proof or refutation file")
    p.add_argument("proof", help="proof file (JSON)")
    p.add_argument("--agents", help="comma-separated agent set "
                                    "(default: agents mentioned in the proof)")
    p.add_argument("--refutation", action="store_true",
                   help="treat the file as a refutation certificate")
    p.set_defaults(func=cmd_prove_check)

    def add_bounds(p):
        p.add_argument("--max-moments", type=int)
        p.add_argument("--max-branching", type=int)
        p.add_argument("--max-depth", type=int)
        p.add_argument("--agents", type=int)
        p.add_argument("--atoms", help="comma-separated atom set")
        p.add_argument("--act-pool", help="comma-separated act term pool")
        p.add_argument("--r-mode", choices=["minimal", "all_preorders"])

    p = sub.add_parser("search", help="bounded satisfiability search")
    p.add_argument("--formula", required=True)
    add_bounds(p)
    p.add_argument("--budget", type=int,
                   help="abort after this many candidate models")
    p.add_argument("--out", default="witness.json",
                   help="where to write a found model (default witness.json)")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("fuzz", help="soundness fuzzing of schemes A1-A13")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iterations", type=int, default=1000)
    add_bounds(p)
    p.add_argument("--out", default="fuzz-report.json",
                   help="where to write the JSON report")
    p.add_argument("--relax-constraint",
                   help="test hook: comma-separated constraint ids (9, 11) "
                        "whose enforcement is skipped during generation")
    p.set_defaults(func=cmd_fuzz)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
