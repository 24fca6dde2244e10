"""Checks of the reading intervals and of pairwise injectivity of F - f_i.

Scaled residues ``frac(2**(s-1) * v)`` of the reader quantities land in the
A-side set ``[0, 1/8] ∪ [3/4, 1)`` or the B-side set ``[1/4, 5/8]``.  The two
sets are 1/8 apart on the circle, which is what separates F(x) - f_i(x) from
F(y) - f_i(y) when x and y first differ at digit j.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction

from .construction import check_unit_interval, g, scaled_residue
from .errors import DegenerateInputError, HypothesisViolation
from .exact import Dyadic, Number, as_fraction, bit, format_rational, frac
from .family import FunctionFamily
from .partition import s_of
from .sampling import blocks, randbits, randint, run_blocks, stream

__all__ = [
    "ReadingCase",
    "IntervalVerdict",
    "CampaignReport",
    "InjectivityVerdict",
    "in_A_side",
    "in_B_side",
    "check_reading",
    "reading_campaign",
    "first_differing_digit",
    "check_injectivity_pair",
    "injectivity_campaign",
    "MARGIN",
]

A_SIDE = "A"
B_SIDE = "B"
MARGIN = 8


def in_A_side(v: Fraction, slack: Fraction = Fraction(0)) -> bool:
    return v <= Fraction(1, 8) + slack or v >= Fraction(3, 4) - slack


def in_B_side(v: Fraction, slack: Fraction = Fraction(0)) -> bool:
    return Fraction(1, 4) - slack <= v <= Fraction(5, 8) + slack


@dataclass(frozen=True)
class ReadingCase:
    s: int
    U: frozenset[int]
    a: Fraction

    def __post_init__(self):
        object.__setattr__(self, "U", frozenset(self.U))
        object.__setattr__(self, "a", as_fraction(self.a))
        if self.s < 1:
            raise HypothesisViolation(f"s must be positive, got {self.s}")
        if any(u < 1 for u in self.U):
            raise HypothesisViolation("U must hold positive integers")
        clash = self.U & {self.s, self.s + 1, self.s + 2}
        if clash:
            raise HypothesisViolation(f"U meets {{s, s+1, s+2}} at {sorted(clash)}")

    def to_dict(self) -> dict:
        return {"s": self.s, "U": sorted(self.U), "a": format_rational(self.a)}


@dataclass(frozen=True)
class IntervalVerdict:
    value: Fraction
    side: str
    passed: bool


def check_reading(case: ReadingCase) -> tuple[IntervalVerdict, IntervalVerdict]:
    """Scaled residues of A and B for one case, with membership verdicts."""
    s, a = case.s, case.a
    tail = sum((Fraction(1, 1 << u) for u in case.U), Fraction(0))
    A = g(s, a).to_fraction() + tail - a
    B = g(s, a + Fraction(1, 1 << s)).to_fraction() + tail - a
    scale = 1 << (s - 1)
    va, vb = frac(scale * A), frac(scale * B)
    return (
        IntervalVerdict(va, A_SIDE, in_A_side(va)),
        IntervalVerdict(vb, B_SIDE, in_B_side(vb)),
    )


@dataclass
class CampaignReport:
    cases: int = 0
    passes: int = 0
    failures: int = 0
    first_failure: dict | None = None

    def record(self, ok: bool, detail=None) -> None:
        self.cases += 1
        if ok:
            self.passes += 1
        else:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = detail() if callable(detail) else detail

    def merge(self, other: CampaignReport) -> CampaignReport:
        self.cases += other.cases
        self.passes += other.passes
        self.failures += other.failures
        if self.first_failure is None:
            self.first_failure = other.first_failure
        return self

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_json(self) -> str:
        d = asdict(self)
        if d["first_failure"] is None:
            del d["first_failure"]
        return json.dumps(d, sort_keys=True)


def _random_reading_case(rng, max_s: int, max_U: int) -> ReadingCase:
    s = randint(rng, 1, max_s)
    reserved = {s, s + 1, s + 2}
    U = {u for u in range(1, s + 3 + max_U) if u not in reserved and rng.integers(2)}
    nbits = 2 * max_s
    a = Fraction(randbits(rng, nbits), 1 << nbits) + randint(rng, -2, 2)
    if rng.integers(2):
        q = 2 * randint(rng, 1, 31) + 1
        a += Fraction(randint(rng, 1, q - 1), q << randint(rng, 0, nbits))
    return ReadingCase(s, frozenset(U), a)


def _reading_block(seed: int, block: int, count: int, max_s: int, max_U: int) -> CampaignReport:
    rng = stream(seed, 0, block)
    report = CampaignReport()
    for _ in range(count):
        case = _random_reading_case(rng, max_s, max_U)
        va, vb = check_reading(case)

        def detail(case=case, va=va, vb=vb):
            return {
                **case.to_dict(),
                "A_frac": format_rational(va.value),
                "B_frac": format_rational(vb.value),
            }

        report.record(va.passed and vb.passed, detail)
    return report


def reading_campaign(
    trials: int, seed: int, max_s: int = 64, max_U: int = 16, workers: int = 1
) -> CampaignReport:
    """Randomized reading-interval checks; deterministic in ``seed``."""
    tasks = [(seed, b, hi - lo, max_s, max_U) for b, lo, hi in blocks(trials)]
    report = CampaignReport()
    for part in run_blocks(_reading_block, tasks, workers):
        report.merge(part)
    return report


def first_differing_digit(x: Number, y: Number) -> int:
    """Smallest j with ``bit(x, j) != bit(y, j)`` for distinct x, y in [0, 1)."""
    fx, fy = as_fraction(x), as_fraction(y)
    if fx == fy:
        raise DegenerateInputError("x and y coincide")
    # agreeing on digits 1..j-1 forces |x - y| < 2**-(j-1)
    bound = (fx.denominator * fy.denominator).bit_length() + 2
    for j in range(1, bound + 1):
        if bit(x, j) != bit(y, j):
            return j
    raise AssertionError("unreachable: digits must differ within the bound")


@dataclass(frozen=True)
class InjectivityVerdict:
    i: int
    j: int
    s: int
    N: int
    zero_value: Fraction  # scaled residue of the point with digit j = 0
    one_value: Fraction
    separated: bool
    side_correct: bool

    @property
    def passed(self) -> bool:
        return self.separated and self.side_correct

    @property
    def radius(self) -> Fraction:
        return Fraction(1, 1 << (self.N - self.s + 1))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["zero_value"] = format_rational(self.zero_value)
        d["one_value"] = format_rational(self.one_value)
        return d


def check_injectivity_pair(
    x: Number, y: Number, i: int, family: FunctionFamily, margin: int = MARGIN
) -> InjectivityVerdict:
    """Certify ``F(x) - f_i(x) != F(y) - f_i(y)`` through the reading intervals.

    The residues are computed from F truncated at ``N = s + margin``; the
    true residues exceed them by less than ``2**(s-1-N)``, and the A- and
    B-side sets stay disjoint after inflating by that radius.
    """
    check_unit_interval(x)
    check_unit_interval(y)
    family[i]  # validates the index
    j = first_differing_digit(x, y)
    s = s_of(i, j)
    N = s + margin
    zero, one = (x, y) if bit(x, j) == 0 else (y, x)
    v0 = scaled_residue(zero, i, s - 1, N, family)
    v1 = scaled_residue(one, i, s - 1, N, family)
    rho = Fraction(1, 1 << (margin + 1))
    return InjectivityVerdict(
        i=i,
        j=j,
        s=s,
        N=N,
        zero_value=v0,
        one_value=v1,
        separated=in_A_side(v0, rho) and in_B_side(v1, rho),
        side_correct=in_A_side(v0) and in_B_side(v1),
    )


def _injectivity_block(
    seed: int, block: int, count: int, family: FunctionFamily, bits: int, differ_at: int | None
) -> CampaignReport:
    rng = stream(seed, 1, block)
    report = CampaignReport()
    for _ in range(count):
        mx = randbits(rng, bits)
        if differ_at is None:
            my = randbits(rng, bits)
            while my == mx:
                my = randbits(rng, bits)
        else:
            my = mx ^ (1 << (bits - differ_at))
        i = randint(rng, 1, family.m)
        x, y = Dyadic(mx, bits), Dyadic(my, bits)
        v = check_injectivity_pair(x, y, i, family)

        def detail(x=x, y=y, v=v):
            return {"x": str(x), "y": str(y), **v.to_dict()}

        report.record(v.passed, detail)
    return report


def injectivity_campaign(
    trials: int,
    seed: int,
    family: FunctionFamily,
    bits: int = 24,
    differ_at: int | None = None,
    workers: int = 1,
) -> CampaignReport:
    """Random distinct dyadic pairs with ``bits`` digits, checked pairwise.

    With ``differ_at = j`` each pair differs only at digit j.
    """
    if differ_at is not None and not 1 <= differ_at <= bits:
        raise ValueError(f"differ_at must lie in 1..{bits}")
    tasks = [(seed, b, hi - lo, family, bits, differ_at) for b, lo, hi in blocks(trials)]
    report = CampaignReport()
    for part in run_blocks(_injectivity_block, tasks, workers):
        report.merge(part)
    return report
