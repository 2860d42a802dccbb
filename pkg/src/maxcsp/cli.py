"""Command-line entry point: ``maxcsp <command> ...``."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import library, report
from .chains import enumerate_chains, is_supermodular_on_chain, parse_chain
from .classifier import ClassificationError, Verdict, classify
from .corpus import verify_corpus
from .gadgets import GadgetError, verify
from .implfile import FormatError, parse_implementation
from .morphisms import compute_core
from .predicates import Predicate, PredicateError, canonical_set
from .search import SearchBounds, search
from .solver import DEFAULT_BUDGET, BudgetExceeded, parse_instance, solve_exact

__all__ = ["main", "build_parser", "read_predicates"]

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_APX = 0, 1, 2, 3


class InputError(Exception):
    pass


def read_predicates(tokens: Sequence[str], path: str | None, d: int | None) -> list[Predicate]:
    """Predicates from command-line tokens and/or a file (one token per line).

    A file line ``domain 3`` sets the domain size used for unary names.
    """
    items = list(tokens)
    if path is not None:
        try:
            text = open(path).read()
        except OSError as exc:
            raise InputError(str(exc)) from exc
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head = line.split()
            if head[0] == "domain" and len(head) == 2:
                d = int(head[1])
                continue
            items.extend(head)
    if not items:
        raise InputError("no predicates given")
    if d is None:
        d = next((len(t.split("/")[0]) for t in items if "/" in t), None)
        if d is None:
            d = next((library.get(t).d for t in items if t in library.entries()), 3)
    out: list[Predicate] = []
    for t in items:
        out.extend(library.resolve(t, d))
    return out


def _bounds(text: str | None) -> SearchBounds:
    if text is None:
        return SearchBounds()
    try:
        return SearchBounds.parse(text)
    except ValueError as exc:
        raise InputError(f"bad --budget {text!r}: expected AUX,TERMS") from exc


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise InputError(str(exc)) from exc


def _emit(pairs, args) -> None:
    sys.stdout.write(report.render(pairs, args.format))


def cmd_classify(args) -> int:
    preds = read_predicates(args.predicate, args.predicates, args.domain)
    result = classify(preds, certificate=args.certificate, bounds=_bounds(args.budget))
    _emit(report.classification_lines(result), args)
    if args.figure:
        restricted = canonical_set(result.core.restricted)
        report.plot_predicates([f for f in restricted if f.arity <= 2] or restricted, args.figure)
    return EXIT_APX if result.verdict is Verdict.APX_COMPLETE else EXIT_OK


def cmd_supermodular(args) -> int:
    preds = read_predicates(args.predicate, None, args.domain)
    if len(preds) != 1:
        raise InputError("supermodular takes exactly one predicate")
    f = preds[0]
    if args.chain in (None, "all"):
        chains = enumerate_chains(f.d, dedup_duals=args.dedup_duals)
    else:
        chains = [parse_chain(args.chain)]
    results = [(c, is_supermodular_on_chain(f, c)) for c in chains]
    _emit(report.supermodular_lines(f, results), args)
    if args.figure:
        report.plot_predicates([f], args.figure)
    return EXIT_OK if any(r.holds for _, r in results) else EXIT_NEGATIVE


def cmd_core(args) -> int:
    preds = read_predicates(args.predicate, args.predicates, args.domain)
    core = compute_core(preds)
    _emit(report.core_lines(preds, core), args)
    if args.figure:
        report.plot_predicates(list(core.restricted), args.figure)
    return EXIT_OK


def cmd_verify_impl(args) -> int:
    block = parse_implementation(_read(args.file))
    check = verify(block.implementation)
    _emit(report.verification_lines(block.implementation, check), args)
    return EXIT_OK if check.ok else EXIT_NEGATIVE


def cmd_search_impl(args) -> int:
    sources = read_predicates(args.source, None, args.domain)
    target = read_predicates([args.target], None, sources[0].d)[0]
    bounds = _bounds(args.budget)
    found = search(sources, target, bounds.max_aux, bounds.max_terms)
    _emit(report.search_lines(found, bounds), args)
    return EXIT_OK if found is not None else EXIT_NEGATIVE


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.file))
    budget = DEFAULT_BUDGET if args.budget is None else int(args.budget)
    result = solve_exact(inst, budget)
    _emit(report.solve_lines(inst, result), args)
    return EXIT_OK


def cmd_corpus_verify(args) -> int:
    result = verify_corpus()
    _emit(report.corpus_lines(result, verbose=not args.quiet), args)
    if args.figure:
        report.plot_corpus(result, args.figure)
    return EXIT_OK if result.all_passed else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maxcsp", description="Max-CSP dichotomy toolkit for domains of size 2 and 3.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, figure=True):
        p.add_argument("--format", choices=("text", "structured"), default="text")
        if figure:
            p.add_argument("--figure", metavar="PATH", help="also render a PNG/PDF/SVG figure to PATH")

    def predicate_inputs(p):
        p.add_argument("-p", "--predicate", action="append", default=[],
                       help="predicate name, U_D, C_D or matrix like 011/101/110 (repeatable)")
        p.add_argument("--predicates", metavar="FILE", help="file with one predicate token per line")
        p.add_argument("--domain", type=int, help="domain size for unary names")

    p = sub.add_parser("classify", help="PO / APX-complete verdict")
    predicate_inputs(p)
    p.add_argument("--certificate", action="store_true", help="attach a hardness certificate when APX-complete")
    p.add_argument("--budget", metavar="AUX,TERMS", help="search bounds for the certificate fallback")
    common(p)
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("supermodular", help="supermodularity on one chain or all chains")
    p.add_argument("-p", "--predicate", action="append", default=[], required=True)
    p.add_argument("--domain", type=int)
    p.add_argument("--chain", help="order like 0<1<2, or 'all' (default)")
    p.add_argument("--dedup-duals", action="store_true", help="list one chain per dual pair")
    common(p)
    p.set_defaults(run=cmd_supermodular)

    p = sub.add_parser("core", help="retraction onto the core")
    predicate_inputs(p)
    common(p)
    p.set_defaults(run=cmd_core)

    p = sub.add_parser("verify-impl", help="check a strict implementation file")
    p.add_argument("file", help="implementation file, or - for stdin")
    common(p, figure=False)
    p.set_defaults(run=cmd_verify_impl)

    p = sub.add_parser("search-impl", help="bounded search for a strict implementation")
    p.add_argument("-s", "--source", action="append", default=[], required=True)
    p.add_argument("-t", "--target", required=True)
    p.add_argument("--domain", type=int)
    p.add_argument("--budget", metavar="AUX,TERMS", help="auxiliary variables and terms (default 1,3)")
    common(p, figure=False)
    p.set_defaults(run=cmd_search_impl)

    p = sub.add_parser("solve", help="exact optimum of an instance file")
    p.add_argument("file", help="instance file, or - for stdin")
    p.add_argument("--budget", help=f"maximum number of assignments (default {DEFAULT_BUDGET})")
    common(p, figure=False)
    p.set_defaults(run=cmd_solve)

    p = sub.add_parser("corpus-verify", help="verify every embedded implementation")
    p.add_argument("-q", "--quiet", action="store_true", help="print only the summary")
    common(p)
    p.set_defaults(run=cmd_corpus_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.run(args)
    except (InputError, PredicateError, ClassificationError, FormatError, GadgetError,
            BudgetExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
