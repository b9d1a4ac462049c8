"""Command-line interface.

Exit codes: 0 ok/found, 1 not found/infeasible, 2 input error,
3 axiom violation, 4 budget exceeded, 5 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import encoder
from .bisection import CardinalityQuery, solve
from .errors import BackendError, BudgetExceeded, InputError
from .formats import GRAPH_FUNCS, load_function
from .ground import bits
from .oracles import check_axioms
from .sfm import SfmBackend
from .verify import SUITES, run_suite

EXIT_OK, EXIT_NOT_FOUND, EXIT_INPUT, EXIT_AXIOM, EXIT_BUDGET, EXIT_VERIFY = range(6)


def _add_function_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", type=Path, help="graph file")
    src.add_argument("--matrix", type=Path, help="GF(2) matrix file (matroid connectivity)")
    src.add_argument("--table", type=Path, help="full value table file")
    p.add_argument("--func", choices=sorted(GRAPH_FUNCS), default="edgecut",
                   help="function of the graph (default: edgecut)")
    p.add_argument("--backend", choices=["exhaustive", "mnp"], default="exhaustive")


def _add_k(p: argparse.ArgumentParser) -> None:
    p.add_argument("-k", type=int, required=True)


def _nonneg_k(k: int) -> int:
    if k < 0:
        raise InputError("k must be non-negative")
    return k


def _function(args):
    return load_function(graph=args.graph, func=args.func, matrix=args.matrix, table=args.table)


def _read_rep(path: Path) -> encoder.Representation:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    return encoder.from_text(text)


def cmd_axioms(args) -> int:
    f = _function(args)
    report = check_axioms(f)
    if report.ok:
        print(f"CHECK axioms PASS instances={1 << f.n}")
        return EXIT_OK
    witness = ",".join("{" + f.ground.format(w) + "}" for w in report.witness)
    print(f"CHECK axioms FAIL instances={report.checked} witness={report.axiom}:{witness}")
    return EXIT_AXIOM


def cmd_encode(args) -> int:
    f = _function(args)
    rep = encoder.encode(
        f,
        _nonneg_k(args.k),
        SfmBackend.parse(args.backend),
        provenance=not args.no_provenance,
        jobs=args.jobs,
    )
    text = encoder.to_text(rep)
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.write_text(text, encoding="utf-8", newline="\n")
    if args.stats:
        for key, value in encoder.stats(rep).items():
            print(f"{key}={value}", file=sys.stderr)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    rep = _read_rep(args.representation)
    family = encoder.enumerate_family(rep, budget=args.budget)
    for mask in sorted(family, key=lambda m: list(bits(m))):
        print(rep.ground.format(mask))
    return EXIT_OK


def cmd_member(args) -> int:
    rep = _read_rep(args.representation)
    X = rep.ground.parse(args.set)
    if encoder.member(rep, X):
        print("yes")
        return EXIT_OK
    print("no")
    return EXIT_NOT_FOUND


def _parse_targets(text: str, n: int) -> list[int]:
    if text.strip() == "half":
        return [n // 2]
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise InputError(f"targets must be integers or 'half', got {text!r}") from None


def cmd_bisect(args) -> int:
    f = _function(args)
    window = f.ground.full if args.window is None else f.ground.parse(args.window)
    targets = _parse_targets(args.targets, f.n)
    q = CardinalityQuery.make(window, targets, _nonneg_k(args.k), args.mode)
    found = solve(f, q, SfmBackend.parse(args.backend))
    if found is None:
        print("INFEASIBLE")
        return EXIT_NOT_FOUND
    print(f.ground.format(found))
    return EXIT_OK


def cmd_verify(args) -> int:
    f = _function(args)
    reports = run_suite(f, _nonneg_k(args.k), args.suite, SfmBackend.parse(args.backend), args.seed)
    for r in reports:
        print(r.render())
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smallcuts",
        description="Encode all sets of a given value of a connectivity function.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("axioms", help="check that the input is a connectivity function")
    _add_function_args(p)
    p.set_defaults(run=cmd_axioms)

    p = sub.add_parser("encode", help="build the representation of {X : f(X) = k}")
    _add_function_args(p)
    _add_k(p)
    p.add_argument("-o", "--output", type=Path, help="output file (default: stdout)")
    p.add_argument("--no-provenance", action="store_true", help="omit the provenance list")
    p.add_argument("--stats", action="store_true", help="print run statistics to stderr")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(run=cmd_encode)

    p = sub.add_parser("enumerate", help="print every set a representation decodes to")
    p.add_argument("representation", type=Path)
    p.add_argument("--budget", type=int, default=encoder.DEFAULT_BUDGET)
    p.set_defaults(run=cmd_enumerate)

    p = sub.add_parser("member", help="test whether a set is encoded")
    p.add_argument("representation", type=Path)
    p.add_argument("--set", required=True, help="comma-separated labels")
    p.set_defaults(run=cmd_member)

    p = sub.add_parser("bisect", help="find a set of value k with a cardinality constraint")
    _add_function_args(p)
    _add_k(p)
    p.add_argument("--window", help="comma-separated labels of W (default: everything)")
    p.add_argument("--targets", required=True, help="comma-separated sizes, or 'half'")
    p.add_argument("--mode", choices=["exact", "at_most"], default="exact")
    p.set_defaults(run=cmd_bisect)

    p = sub.add_parser("verify", help="run brute-force verification suites")
    _add_function_args(p)
    _add_k(p)
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except BackendError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
