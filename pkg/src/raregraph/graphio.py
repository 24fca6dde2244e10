"""Graph sampling to CSV and CSV to SVG scatter plots."""

from __future__ import annotations

import csv
import io
from fractions import Fraction

from .construction import eval_F
from .exact import Dyadic, decimal_string
from .family import FunctionFamily
from .sampling import randbits, stream

__all__ = ["EXPORT_HEADER", "export_rows", "export_csv", "read_points", "scatter_svg"]

EXPORT_HEADER = ["x_num", "x_den", "y_mantissa", "y_scale", "x_decimal", "y_decimal"]

SIZE = 480
MARGIN = 40


def export_rows(points: int, seed: int, family: FunctionFamily, N: int = 30, x_bits: int = 30):
    """``points`` graph samples ``(x, F_N(x))`` with x a random ``x_bits``-digit dyadic, sorted by x."""
    if points < 1:
        raise ValueError("need at least one point")
    rng = stream(seed, 5)
    xs = sorted(Dyadic(randbits(rng, x_bits), x_bits).to_fraction() for _ in range(points))
    rows = []
    for x in xs:
        y = eval_F(x, N, family).value
        rows.append([x.numerator, x.denominator, y.mantissa, y.scale, decimal_string(x), decimal_string(y)])
    return rows


def export_csv(points: int, seed: int, family: FunctionFamily, N: int = 30, x_bits: int = 30) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(EXPORT_HEADER)
    w.writerows(export_rows(points, seed, family, N, x_bits))
    return buf.getvalue()


def read_points(text: str) -> list[tuple[Fraction, Fraction]]:
    """Parse export CSV into exact ``(x, y)`` pairs; errors name the row."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != EXPORT_HEADER:
        raise ValueError(f"row 1: expected header {','.join(EXPORT_HEADER)}")
    points = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(EXPORT_HEADER):
            raise ValueError(f"row {lineno}: expected {len(EXPORT_HEADER)} fields, got {len(row)}")
        try:
            xn, xd, ym, ys = (int(v) for v in row[:4])
            if xd <= 0 or ys < 0:
                raise ValueError
        except ValueError:
            raise ValueError(f"row {lineno}: malformed numeric field") from None
        points.append((Fraction(xn, xd), Dyadic(ym, ys).to_fraction()))
    return points


def _coord(v: Fraction) -> str:
    return f"{float(v):.4f}"


def scatter_svg(points: list[tuple[Fraction, Fraction]], title: str = "graph of F") -> str:
    """Unit-square scatter plot; the origin sits at the bottom-left corner of the axes."""
    span = SIZE - 2 * MARGIN
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>{title}</title>",
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{span}" height="{span}" '
        'fill="none" stroke="black" stroke-width="1"/>',
        f'<text x="{MARGIN}" y="{SIZE - MARGIN + 16}" font-size="12" text-anchor="middle">0</text>',
        f'<text x="{SIZE - MARGIN}" y="{SIZE - MARGIN + 16}" font-size="12" text-anchor="middle">1</text>',
        f'<text x="{MARGIN - 8}" y="{MARGIN + 4}" font-size="12" text-anchor="end">1</text>',
        f'<text x="{SIZE // 2}" y="{SIZE - 8}" font-size="12" text-anchor="middle">x</text>',
        f'<text x="12" y="{SIZE // 2}" font-size="12" text-anchor="middle">y</text>',
        '<g fill="steelblue">',
    ]
    for x, y in points:
        y = y - (y.numerator // y.denominator)
        cx = MARGIN + x * span
        cy = SIZE - MARGIN - y * span
        out.append(f'<circle cx="{_coord(cx)}" cy="{_coord(cy)}" r="1"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
