"""Command line front end.

Exit codes: 0 success, 1 verification failed or run did not stabilise,
2 unreadable input or bad arguments, 3 positive discrepancy violated,
4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import documents
from .cheese import assignment_from_cheese, delta_of_assignment, has_fh_condition
from .engine import classicalise, stabilised_iff_classical
from .generate import random_cheese
from .oracle import verify_run
from .render import render_svg

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_FH = 3
EXIT_INTERNAL = 4

# sample size for the self-check after classicalise
SELF_CHECK_POINTS = 2000


def _error(msg: str) -> None:
    print(f"swisscheese: {msg}", file=sys.stderr)


def _load(path):
    try:
        return documents.load(path)
    except OSError as e:
        raise documents.DocumentError(f"{path}: {e.strerror or e}") from None


def cmd_gen(args) -> int:
    try:
        cheese = random_cheese(args.seed, args.discs, args.delta_min, args.outer_r)
    except ValueError as e:
        _error(str(e))
        return EXIT_PARSE
    meta = {
        "seed": args.seed,
        "generator": {"n_discs": args.discs, "delta_min": args.delta_min, "outer_r": args.outer_r},
    }
    text = documents.dumps(documents.cheese_to_doc(cheese, meta))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_classicalise(args) -> int:
    try:
        cheese = documents.cheese_from_doc(_load(args.input))
    except ValueError as e:
        _error(str(e))
        return EXIT_PARSE
    start = assignment_from_cheese(cheese)
    if not has_fh_condition(start):
        _error(f"positive discrepancy violated: delta = {delta_of_assignment(start).delta!r}")
        return EXIT_FH
    try:
        result = classicalise(start, args.budget)
    except AssertionError as e:
        _error(f"internal invariant failure: {e}")
        return EXIT_INTERNAL
    documents.save(documents.trace_to_doc(cheese, result), args.trace)

    report = verify_run(result, start, n_points=SELF_CHECK_POINTS, seed=0)
    print(f"delta_initial: {delta_of_assignment(start).delta!r}")
    print(f"delta_final: {delta_of_assignment(result.final).delta!r}")
    print(f"steps: {result.steps}")
    print(f"stabilised: {str(result.stabilised).lower()}")
    if not (report.passed and stabilised_iff_classical(result)):
        _error("internal invariant failure\n" + report.format())
        return EXIT_INTERNAL
    return EXIT_OK if result.stabilised else EXIT_FAILED


def cmd_verify(args) -> int:
    try:
        cheese, result = documents.trace_from_doc(_load(args.trace))
    except ValueError as e:
        _error(str(e))
        return EXIT_PARSE
    report = verify_run(result, assignment_from_cheese(cheese), n_points=args.points, seed=args.seed)
    print(f"trace: {args.trace}")
    print(f"steps: {result.steps}")
    print(report.format())
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_render(args) -> int:
    try:
        doc = _load(args.input)
        if documents.is_trace_doc(doc):
            cheese, result = documents.trace_from_doc(doc)
            frames = [assignment_from_cheese(cheese)]
            cur = frames[0]
            for rec in result.trace:
                cur = cur.without(rec.removed_index).replace(rec.pair.n, rec.after_n)
                frames.append(cur)
        else:
            cheese = documents.cheese_from_doc(doc)
            frames = [assignment_from_cheese(cheese)]
    except (ValueError, KeyError) as e:
        _error(str(e))
        return EXIT_PARSE
    Path(args.output).write_text(render_svg(frames, cheese.outer, args.width))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swisscheese", description="Classicalise Swiss cheeses.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random cheese document")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--discs", type=int, default=5)
    p.add_argument("--delta-min", type=float, default=0.1)
    p.add_argument("--outer-r", type=float, default=3.0)
    p.add_argument("-o", "--out", help="output path [default: stdout]")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("classicalise", help="classicalise a cheese and write its trace")
    p.add_argument("input")
    p.add_argument("--trace", required=True, help="trace output path")
    p.add_argument("--budget", type=int, default=None, help="maximum number of steps")
    p.set_defaults(func=cmd_classicalise)

    p = sub.add_parser("verify", help="replay and certify a trace")
    p.add_argument("trace")
    p.add_argument("--points", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw a cheese or trace as SVG")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--width", type=int, default=512)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
