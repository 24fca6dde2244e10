"""Box counting of the graph of F and the column-projection check.

Box counts are a stand-in for Hausdorff dimension: the box dimension bounds
the Hausdorff dimension from above, so counts growing like ``4**N`` are
consistent with a graph of dimension 2 but do not prove it.  Convergence of
``log2(cells) / N`` towards 2 is slow, on the order of ``N**-1/2``.
"""

from __future__ import annotations

import csv
import io
import math
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .construction import check_unit_interval, eval_F
from .errors import InsufficientDataError, InvalidRangeError, ResourceLimitError
from .exact import Dyadic, Number, as_fraction, bit
from .family import FunctionFamily
from .partition import T_upto, count_T, triples_upto
from .sampling import BLOCK, blocks, randbits, run_blocks, stream

__all__ = [
    "GridCell",
    "Exhaustive",
    "RandomSampler",
    "LevelRecord",
    "BoxCountReport",
    "ProjectionVerdict",
    "occupy",
    "relevant_positions",
    "box_count",
    "box_count_report",
    "saturated_box_count",
    "slope_fit",
    "constrained_positions",
    "projection_bound_exponent",
    "projection_check",
    "sample_occupied_cells",
    "MAX_EXHAUSTIVE_BITS",
]

MAX_EXHAUSTIVE_BITS = 26
_PATTERN_BLOCK = 1 << 14


@dataclass(frozen=True, order=True)
class GridCell:
    """Dyadic square ``[col, col+1) x [row, row+1)`` scaled by ``2**-level``."""

    level: int
    column: int
    row: int


def occupy(x: Number, N: int, family: FunctionFamily) -> GridCell:
    """Level-N cell holding ``(x, F(x) mod 1)``."""
    check_unit_interval(x)
    if isinstance(x, Dyadic):
        col = x.mantissa >> (x.scale - N) if x.scale >= N else x.mantissa << (N - x.scale)
    else:
        fx = as_fraction(x)
        col = (fx.numerator << N) // fx.denominator
    y = eval_F(x, N, family).value
    row = (y.mantissa << (N - y.scale)) & ((1 << N) - 1)
    return GridCell(N, col, row)


def _T_squares_beyond(N: int) -> list[int]:
    return [n * n for n in T_upto(N) if n * n > N]


def relevant_positions(N: int, family: FunctionFamily) -> list[int]:
    """Digits of x that determine the level-N cell, for constant families.

    These are the column digits 1..N, the digits n**2 copied into positions
    n in T, and the digits x_j read by triples starting at or below N.  For
    nonconstant families every digit of x can reach f_i(x), so no finite set
    exists.
    """
    if not family.is_constant:
        raise ValueError("relevant digit analysis needs a constant family")
    pos = set(range(1, N + 1))
    pos.update(_T_squares_beyond(N))
    pos.update(j for i, j, _ in triples_upto(N) if i <= family.m)
    return sorted(pos)


@dataclass(frozen=True)
class Exhaustive:
    pass


@dataclass(frozen=True)
class RandomSampler:
    count: int
    seed: int = 0


@dataclass(frozen=True)
class LevelRecord:
    N: int
    mode: str
    samples: int
    cells: int

    @property
    def ratio(self) -> float:
        return math.log2(self.cells) / self.N if self.cells else 0.0


def _spread_table(extras: list[int], L: int) -> list[int]:
    table = [0]
    for p in extras:
        b = 1 << (L - p)
        table = table + [t | b for t in table]
    return table


def _exhaustive_block(N: int, family: FunctionFamily, lo: int, hi: int) -> set[tuple[int, int]]:
    pos = relevant_positions(N, family)
    L = pos[-1]
    extras = [p for p in pos if p > N]
    # pattern = column bits followed by the extra digits; table index bit t is extras[t]
    table = _spread_table(extras, L)
    E = len(extras)
    low = (1 << E) - 1
    cells = set()
    for pattern in range(lo, hi):
        mant = ((pattern >> E) << (L - N)) | table[pattern & low]
        c = occupy(Dyadic(mant, L), N, family)
        cells.add((c.column, c.row))
    return cells


def _sample_width(N: int) -> int:
    return max([N, *_T_squares_beyond(N)]) + 16


def _random_block(N: int, family: FunctionFamily, seed: int, block: int, count: int):
    rng = stream(seed, 2, N, block)
    L = _sample_width(N)
    cells = set()
    for _ in range(count):
        c = occupy(Dyadic(randbits(rng, L), L), N, family)
        cells.add((c.column, c.row))
    return cells


def box_count(
    N: int, family: FunctionFamily, sampler=Exhaustive(), workers: int = 1
) -> LevelRecord:
    """Number of distinct level-N cells met by the graph.

    Exhaustive mode enumerates every pattern of the relevant digits (constant
    families, at most ``MAX_EXHAUSTIVE_BITS`` digits); random mode samples
    dyadic x and counts a lower bound.
    """
    if N < 1:
        raise InvalidRangeError(f"level must be >= 1, got {N}")
    if isinstance(sampler, Exhaustive):
        B = len(relevant_positions(N, family))
        if B > MAX_EXHAUSTIVE_BITS:
            raise ResourceLimitError(
                f"exhaustive count at N={N} needs 2^{B} evaluations (limit 2^{MAX_EXHAUSTIVE_BITS})"
            )
        total = 1 << B
        tasks = [(N, family, lo, hi) for _, lo, hi in blocks(total, _PATTERN_BLOCK)]
        parts = run_blocks(_exhaustive_block, tasks, workers)
        return LevelRecord(N, "exhaustive", total, len(set().union(*parts)))
    tasks = [(N, family, sampler.seed, b, hi - lo) for b, lo, hi in blocks(sampler.count)]
    parts = run_blocks(_random_block, tasks, workers)
    return LevelRecord(N, "random", sampler.count, len(set().union(*parts)))


def saturated_box_count(
    N: int,
    family: FunctionFamily,
    seed: int = 0,
    start: int = BLOCK,
    max_samples: int = 1 << 22,
    tolerance: float = 1e-3,
) -> LevelRecord:
    """Random count, doubling the samples until cells grow by under ``tolerance``."""
    cells: set = set()
    used = 0
    target = start
    previous = -1
    while True:
        while used < target:
            b = used // BLOCK
            cells |= _random_block(N, family, seed, b, BLOCK)
            used += BLOCK
        if previous > 0 and len(cells) - previous < tolerance * previous:
            break
        if used >= max_samples:
            break
        previous = len(cells)
        target = 2 * used
    return LevelRecord(N, "random", used, len(cells))


def slope_fit(records: list[LevelRecord]) -> tuple[float, list[float]]:
    """Least-squares slope of ``log2(cells)`` against N, plus per-level ratios."""
    if len({r.N for r in records}) < 2:
        raise InsufficientDataError("slope fit needs at least two levels")
    xs = [r.N for r in records]
    ys = [math.log2(r.cells) for r in records]
    slope = statistics.linear_regression(xs, ys).slope
    return slope, [r.ratio for r in records]


@dataclass
class BoxCountReport:
    records: list[LevelRecord] = field(default_factory=list)

    @property
    def slope(self) -> float | None:
        if len(self.records) < 2:
            return None
        return slope_fit(self.records)[0]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "mode", "samples", "cells", "log2cells_over_N"])
        for r in self.records:
            w.writerow([r.N, r.mode, r.samples, r.cells, f"{r.ratio:.6f}"])
        return buf.getvalue()


def box_count_report(levels, family: FunctionFamily, sampler=Exhaustive(), workers: int = 1):
    return BoxCountReport([box_count(N, family, sampler, workers) for N in levels])


def constrained_positions(N: int) -> list[int]:
    """Digits of x fixed on the part of the graph inside one level-N cell."""
    return sorted(set(range(1, N + 1)) | {n * n for n in T_upto(N)})


def projection_bound_exponent(N: int) -> int:
    """E with hit fraction <= 2**-E: ``max(0, M(N) - ceil(sqrt(N)))``."""
    return max(0, count_T(N) - (isqrt(N - 1) + 1))


@dataclass(frozen=True)
class ProjectionVerdict:
    cell: GridCell
    samples: int
    hits: int
    bound_exponent: int
    stratified: bool
    digits_agree: bool

    @property
    def occupied(self) -> bool:
        return self.hits > 0

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.hits, self.samples)

    @property
    def within_bound(self) -> bool:
        return self.fraction <= Fraction(1, 1 << self.bound_exponent)

    @property
    def passed(self) -> bool:
        return self.within_bound and self.digits_agree

    @property
    def status(self) -> str:
        if not self.occupied:
            return "unoccupied"
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "N": self.cell.level,
            "col": self.cell.column,
            "row": self.cell.row,
            "samples": self.samples,
            "hits": self.hits,
            "fraction": f"{self.fraction.numerator}/{self.fraction.denominator}",
            "bound": f"2^-{self.bound_exponent}",
            "stratified": self.stratified,
            "digits_agree": self.digits_agree,
            "verdict": self.status,
        }


def projection_check(
    cell: GridCell, samples: int, family: FunctionFamily, seed: int = 0
) -> ProjectionVerdict:
    """Sample x in the cell's column and measure how often the graph hits the cell.

    Samples are uniform in the column.  When ``samples`` allows it they are
    stratified over the copied digits ``n**2 > N`` (every pattern appears
    equally often, in a random order), so the hit fraction estimates the
    projected length without binomial noise.  The x-samples landing in the
    cell must agree on every digit in :func:`constrained_positions`.
    """
    N = cell.level
    if not 1 <= N <= 20:
        raise InvalidRangeError(f"projection check supports levels 1..20, got {N}")
    if not (0 <= cell.column < 1 << N and 0 <= cell.row < 1 << N):
        raise InvalidRangeError("cell outside the unit square")
    free = _T_squares_beyond(N)
    L = _sample_width(N)
    strata = 1 << len(free)
    stratified = strata <= samples
    if stratified:
        samples = -(-samples // strata) * strata
    table = _spread_table(free, L)
    free_mask = table[-1]
    head = cell.column << (L - N)
    checked = constrained_positions(N)
    seen = set()
    hits = 0
    rng = stream(seed, 3, N, cell.column, cell.row)
    done = 0
    while done < samples:
        if stratified:
            order = rng.permutation(strata)
            chunk = [table[int(k)] | (randbits(rng, L - N) & ~free_mask) for k in order]
        else:
            chunk = [randbits(rng, L - N) for _ in range(min(BLOCK, samples - done))]
        for tail in chunk:
            x = Dyadic(head | tail, L)
            c = occupy(x, N, family)
            if c.row == cell.row:
                hits += 1
                seen.add(tuple(bit(x, p) for p in checked))
        done += len(chunk)
    return ProjectionVerdict(cell, samples, hits, projection_bound_exponent(N), stratified, len(seen) <= 1)


def sample_occupied_cells(N: int, count: int, family: FunctionFamily, seed: int = 0) -> list[GridCell]:
    """``count`` distinct occupied cells, found by placing random graph points."""
    rng = stream(seed, 4, N)
    L = _sample_width(N)
    found: dict[GridCell, None] = {}
    attempts = 0
    while len(found) < count:
        attempts += 1
        if attempts > 1000 * count:
            raise ResourceLimitError(f"could not find {count} distinct cells at level {N}")
        found.setdefault(occupy(Dyadic(randbits(rng, L), L), N, family))
    return list(found)
