"""Command-line entry point.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path

from .construction import check_unit_interval, digits_F, eval_F
from .dimension import (
    Exhaustive,
    GridCell,
    RandomSampler,
    box_count_report,
    projection_check,
)
from .errors import RareGraphError
from .exact import bits_window, decimal_string, parse_rational
from .family import ZERO, load_family
from .graphio import export_csv, read_points, scatter_svg
from .partition import classify, count_T
from .verification import injectivity_campaign, reading_campaign

BOX_NOTE = (
    "box-counting slope: an upper bound proxy for Hausdorff dimension, "
    "not a measurement of it"
)


def _count(text: str) -> int:
    """Non-negative integer, allowing forms such as ``1e6``."""
    try:
        d = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if d != d.to_integral_value() or d < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return int(d)


def _fraction(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _levels(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        levels = list(range(int(lo), int(hi) + 1)) if sep else [int(lo)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"levels must look like 4..12, got {text!r}") from None
    if not levels or levels[0] < 1:
        raise argparse.ArgumentTypeError(f"empty or non-positive level range {text!r}")
    return levels


def _family(args):
    return load_family(args.family) if args.family else ZERO


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_eval(args) -> int:
    x = args.x
    check_unit_interval(x)
    family = _family(args)
    tv = eval_F(x, args.bits, family)
    digits = digits_F(x, args.bits, family)
    _emit(args, f"{tv.value} | {decimal_string(tv.value)} | {digits}\n")
    return 0


def cmd_digits(args) -> int:
    x = args.x
    check_unit_interval(x)
    if args.of == "x":
        bits = bits_window(x, args.start, args.stop)
    else:
        bits = digits_F(x, args.stop, _family(args), start=args.start)
    _emit(args, f"{bits}\n")
    return 0


def cmd_partition(args) -> int:
    lines = []
    for n in args.classify or []:
        place = classify(n)
        if place is None:
            rec = {"n": n, "class": "T"}
        else:
            rec = {"n": n, "class": "S", "i": place.i, "j": place.j, "position": place.position}
        lines.append(json.dumps(rec))
    for N in args.count_T or []:
        lines.append(json.dumps({"N": N, "count_T": count_T(N)}))
    if not lines:
        raise ValueError("partition needs --classify or --count-T")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_check(args) -> int:
    if args.which == "reading":
        report = reading_campaign(args.trials, args.seed, args.max_s, args.max_U, args.workers)
    else:
        report = injectivity_campaign(
            args.trials, args.seed, _family(args), args.bits, args.differ_at, args.workers
        )
    _emit(args, report.to_json() + "\n")
    return 0 if report.ok else 1


def cmd_boxcount(args) -> int:
    family = _family(args)
    sampler = Exhaustive() if args.mode == "exhaustive" else RandomSampler(args.samples, args.seed)
    report = box_count_report(args.levels, family, sampler, args.workers)
    _emit(args, report.to_csv())
    summary = sys.stdout if args.out else sys.stderr
    if report.slope is not None:
        print(f"slope={report.slope:.6f} ({BOX_NOTE})", file=summary)
    return 0


def cmd_projection(args) -> int:
    cell = GridCell(args.N, args.col, args.row)
    verdict = projection_check(cell, args.samples, _family(args), args.seed)
    _emit(args, json.dumps(verdict.to_dict(), sort_keys=True) + "\n")
    return 1 if verdict.status == "fail" else 0


def cmd_export(args) -> int:
    text = export_csv(args.points, args.seed, _family(args), args.bits, args.x_bits)
    _emit(args, text)
    return 0


def cmd_plot(args) -> int:
    points = read_points(Path(args.input).read_text())
    _emit(args, scatter_svg(points))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", help="family JSON file (default: the zero function)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--workers", type=int, default=1)

    p = argparse.ArgumentParser(
        prog="raregraph", description="Exact construction and checks for the rare-graph function F."
    )
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate F(x) to N digits")
    e.add_argument("--x", type=_fraction, required=True)
    e.add_argument("--bits", type=int, required=True)
    e.set_defaults(func=cmd_eval)

    d = sub.add_parser("digits", parents=[common], help="print a digit window of x or F(x)")
    d.add_argument("--x", type=_fraction, required=True)
    d.add_argument("--from", dest="start", type=int, default=1)
    d.add_argument("--to", dest="stop", type=int, required=True)
    d.add_argument("--of", choices=["x", "F"], default="F")
    d.set_defaults(func=cmd_digits)

    pa = sub.add_parser("partition", parents=[common], help="classify integers / count T")
    pa.add_argument("--classify", type=int, action="append")
    pa.add_argument("--count-T", dest="count_T", type=int, action="append")
    pa.set_defaults(func=cmd_partition)

    c = sub.add_parser("check", parents=[common], help="randomized lemma campaigns")
    c.add_argument("which", choices=["reading", "injective"])
    c.add_argument("--trials", type=_count, default=10_000)
    c.add_argument("--max-s", dest="max_s", type=int, default=64)
    c.add_argument("--max-U", dest="max_U", type=int, default=16)
    c.add_argument("--bits", type=int, default=24)
    c.add_argument("--differ-at", dest="differ_at", type=int)
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("boxcount", parents=[common], help="box counts of the graph")
    b.add_argument("--levels", type=_levels, default=_levels("4..12"))
    b.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    b.add_argument("--samples", type=_count, default=1_000_000)
    b.set_defaults(func=cmd_boxcount)

    pr = sub.add_parser("projection", parents=[common], help="column projection check for one cell")
    pr.add_argument("--N", type=int, required=True)
    pr.add_argument("--col", type=int, required=True)
    pr.add_argument("--row", type=int, required=True)
    pr.add_argument("--samples", type=_count, default=100_000)
    pr.set_defaults(func=cmd_projection)

    x = sub.add_parser("export", parents=[common], help="sample graph points to CSV")
    x.add_argument("--points", type=_count, required=True)
    x.add_argument("--bits", type=int, default=30, help="precision N of F")
    x.add_argument("--x-bits", dest="x_bits", type=int, default=30)
    x.set_defaults(func=cmd_export)

    pl = sub.add_parser("plot", parents=[common], help="SVG scatter plot of an export CSV")
    pl.add_argument("--input", required=True)
    pl.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (RareGraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
