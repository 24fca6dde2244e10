"""The two-digit reader g_s, the correction terms h_ij and the function F.

F(x) is built digit by digit.  A position n in T copies digit n**2 of x.  The
first two positions of the triple reserved for (i, j) carry
``g_s(f_i(x) + x_j 2**-s)`` with ``s = s_of(i, j)``; the third position is
always 0.  Triples whose i exceeds the family size carry zeros.

Two independent evaluators are provided: :func:`eval_F` sums the T-series and
the h-terms as dyadics, :func:`digits_F` reads digits one at a time through
:func:`y_digit`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import DomainError, InvalidRangeError
from .exact import BitString, Dyadic, Number, as_fraction, bit, frac, scaled_frac
from .family import FunctionFamily, eval_f
from .partition import classify, s_of, triples_upto

__all__ = [
    "TruncatedValue",
    "g",
    "h",
    "y_digit",
    "digits_F",
    "eval_F",
    "F_minus_f",
    "scaled_residue",
    "check_unit_interval",
]


@dataclass(frozen=True)
class TruncatedValue:
    """Digits 1..N of F(x); the true value lies in ``[value, value + 2**-N)``."""

    value: Dyadic
    tail_exponent: int

    @property
    def lower(self) -> Fraction:
        return self.value.to_fraction()

    @property
    def upper(self) -> Fraction:
        return self.lower + Fraction(1, 1 << self.tail_exponent)

    def brackets(self, r: Number) -> bool:
        return self.lower <= as_fraction(r) < self.upper


def check_unit_interval(x: Number) -> None:
    if isinstance(x, Dyadic):
        ok = 0 <= x.mantissa < (1 << x.scale)
    else:
        ok = 0 <= x < 1
    if not ok:
        raise DomainError(f"x = {x} is outside [0, 1)")


def _dyadic_scale(x: Number) -> int | None:
    if isinstance(x, Dyadic):
        return x.scale
    q = Fraction(x).denominator
    return q.bit_length() - 1 if q & (q - 1) == 0 else None


def g(s: int, a: Number) -> Dyadic:
    """``x_s 2**-s + x_{s+1} 2**-(s+1)`` for the digits of ``frac(a)``."""
    if s < 1:
        raise InvalidRangeError(f"s must be >= 1, got {s}")
    z = scaled_frac(a, s - 1)
    return Dyadic(int(4 * z), s + 1)


def _reader_window(fx: Fraction, s: int, xj: int) -> Fraction:
    # frac(2**(s-1) * (fx + xj * 2**-s)) without building 2**-s
    return frac(scaled_frac(fx, s - 1) + Fraction(xj, 2))


def h(i: int, j: int, x: Number, family: FunctionFamily) -> Dyadic:
    """``g_s(f_i(x) + x_j 2**-s)`` with ``s = s_of(i, j)``."""
    fx = eval_f(family, i, x)
    s = s_of(i, j)
    return Dyadic(int(4 * _reader_window(fx, s, bit(x, j))), s + 1)


def y_digit(n: int, x: Number, family: FunctionFamily) -> int:
    """Digit n of F(x)."""
    check_unit_interval(x)
    place = classify(n)
    if place is None:
        return bit(x, n * n)
    i, j, p = place
    if p == 2 or i > family.m:
        return 0
    fx = eval_f(family, i, x)
    return bit(_reader_window(fx, s_of(i, j), bit(x, j)), p + 1)


def digits_F(x: Number, N: int, family: FunctionFamily, start: int = 1) -> BitString:
    """Digits ``start..N`` of F(x) read one at a time."""
    if start < 1 or start > N:
        raise InvalidRangeError(f"invalid digit range {start}..{N}")
    return BitString(tuple(y_digit(n, x, family) for n in range(start, N + 1)), start)


def eval_F(x: Number, N: int, family: FunctionFamily) -> TruncatedValue:
    """F(x) truncated to digit positions 1..N, as a sum of series terms."""
    check_unit_interval(x)
    if N < 1:
        raise InvalidRangeError(f"precision must be >= 1, got {N}")
    mantissa = 0
    reserved = set()
    for i, j, s in triples_upto(N):
        reserved.update((s, s + 1, s + 2))
        if i <= family.m:
            term = h(i, j, x, family).truncate(N)
            mantissa += term.mantissa << (N - term.scale)
    # a dyadic x with k digits has x_{n^2} = 0 once n^2 > k
    scale = _dyadic_scale(x)
    last = N if scale is None else min(N, isqrt(scale))
    for n in range(1, last + 1):
        if n not in reserved and bit(x, n * n):
            mantissa += 1 << (N - n)
    return TruncatedValue(Dyadic(mantissa, N), N)


def F_minus_f(x: Number, i: int, N: int, family: FunctionFamily) -> tuple[Fraction, int]:
    """``F_N(x) - f_i(x)``; the true difference exceeds it by less than ``2**-N``."""
    tv = eval_F(x, N, family)
    return tv.lower - eval_f(family, i, x), N


def scaled_residue(x: Number, i: int, e: int, N: int, family: FunctionFamily) -> Fraction:
    """``frac(2**e * (F_N(x) - f_i(x)))`` using only digits e+1..N of F.

    Cost is independent of the size of e, which matters because reserved
    positions grow cubically in the pair index.
    """
    if not 0 <= e < N:
        raise InvalidRangeError(f"need 0 <= e < N, got e={e}, N={N}")
    window = 0
    for n in range(e + 1, N + 1):
        window = (window << 1) | y_digit(n, x, family)
    high = Fraction(window, 1 << (N - e))
    return frac(high - scaled_frac(eval_f(family, i, x), e))
