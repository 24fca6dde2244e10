"""Exact rational and dyadic arithmetic with binary digit extraction.

Rationals are plain :class:`fractions.Fraction` values. Digits follow the
convention in which every expansion of a number in [0, 1) has infinitely many
zeros, so 1/2 is 0.1000... and never 0.0111...  Taking the floor of
``2**k * frac(r)`` realizes that convention without special cases.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InvalidRangeError

__all__ = [
    "Dyadic",
    "BitString",
    "Number",
    "as_fraction",
    "frac",
    "bit",
    "bits_window",
    "scaled_frac",
    "parse_rational",
    "format_rational",
    "decimal_string",
]

_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)(?:/(\d+))?\s*$")


@dataclass(frozen=True)
class Dyadic:
    """The number ``mantissa * 2**-scale``, kept canonical.

    Canonical form has an odd mantissa, or mantissa 0 with scale 0.
    """

    mantissa: int
    scale: int = 0

    def __post_init__(self):
        m, k = self.mantissa, self.scale
        if k < 0:
            # 2**-k is an integer, fold it into the mantissa
            m, k = m << -k, 0
        if m == 0:
            k = 0
        else:
            tz = min((m & -m).bit_length() - 1, k)
            m >>= tz
            k -= tz
        object.__setattr__(self, "mantissa", m)
        object.__setattr__(self, "scale", k)

    @classmethod
    def from_fraction(cls, r: Fraction | int) -> Dyadic:
        r = Fraction(r)
        q = r.denominator
        if q & (q - 1):
            raise ValueError(f"{r} is not a dyadic rational")
        return cls(r.numerator, q.bit_length() - 1)

    @classmethod
    def parse(cls, text: str) -> Dyadic:
        """Parse ``"m/2^k"`` (or any dyadic ``"p/q"`` / integer string)."""
        m = re.match(r"^\s*([+-]?\d+)/2\^(\d+)\s*$", text)
        if m:
            return cls(int(m.group(1)), int(m.group(2)))
        return cls.from_fraction(parse_rational(text))

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 1 << self.scale)

    def truncate(self, n: int) -> Dyadic:
        """Floor to a multiple of ``2**-n``."""
        if self.scale <= n:
            return self
        return Dyadic(self.mantissa >> (self.scale - n), n)

    def __add__(self, other):
        if isinstance(other, int):
            other = Dyadic(other)
        if not isinstance(other, Dyadic):
            return NotImplemented
        k = max(self.scale, other.scale)
        return Dyadic(
            (self.mantissa << (k - self.scale)) + (other.mantissa << (k - other.scale)), k
        )

    __radd__ = __add__

    def __neg__(self) -> Dyadic:
        return Dyadic(-self.mantissa, self.scale)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Dyadic(other)
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self + (-other)

    def __lt__(self, other):
        return as_fraction(self) < as_fraction(other)

    def __le__(self, other):
        return as_fraction(self) <= as_fraction(other)

    def __str__(self) -> str:
        return f"{self.mantissa}/2^{self.scale}"


Number = Union[int, Fraction, Dyadic]


def as_fraction(r: Number) -> Fraction:
    if isinstance(r, Dyadic):
        return r.to_fraction()
    return Fraction(r)


@dataclass(frozen=True)
class BitString:
    """Finite digit run; ``bits[i]`` is the digit at position ``offset + i``."""

    bits: tuple[int, ...]
    offset: int = 1

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i):
        return self.bits[i]

    def value(self) -> Fraction:
        total = Fraction(0)
        for i, b in enumerate(self.bits):
            if b:
                total += Fraction(1, 1 << (self.offset + i))
        return total


def frac(r: Number) -> Number:
    """Fractional part in [0, 1). Dyadic input gives Dyadic output."""
    if isinstance(r, Dyadic):
        return Dyadic(r.mantissa & ((1 << r.scale) - 1), r.scale)
    r = Fraction(r)
    return r - (r.numerator // r.denominator)


def bit(r: Number, k: int) -> int:
    """The k-th binary digit of ``frac(r)``, i.e. ``floor(2**k * frac(r)) mod 2``."""
    if k < 1:
        raise InvalidRangeError(f"digit position must be >= 1, got {k}")
    if isinstance(r, Dyadic):
        if k > r.scale:
            return 0
        return (r.mantissa >> (r.scale - k)) & 1
    if isinstance(r, int):
        return 0
    p, q = r.numerator, r.denominator
    if q & (q - 1) == 0:
        b = q.bit_length() - 1
        if k > b:
            return 0
        return (p >> (b - k)) & 1
    # digit k is the leading digit of frac(2**(k-1) * r)
    return 1 if 2 * (p * pow(2, k - 1, q) % q) >= q else 0


def bits_window(r: Number, start: int, stop: int) -> BitString:
    """Digits at positions ``start..stop`` inclusive."""
    if start < 1 or start > stop:
        raise InvalidRangeError(f"invalid digit range {start}..{stop}")
    return BitString(tuple(bit(r, k) for k in range(start, stop + 1)), start)


def scaled_frac(r: Number, e: int) -> Fraction:
    """``frac(2**e * r)`` for ``e >= 0`` without forming ``2**e``."""
    if e < 0:
        raise InvalidRangeError(f"exponent must be >= 0, got {e}")
    r = as_fraction(r)
    p, q = r.numerator, r.denominator
    return Fraction(p * pow(2, e, q) % q, q)


def parse_rational(text: str) -> Fraction:
    """Parse an exact fraction string: optional sign, digits, optional ``/digits``."""
    m = _FRACTION_RE.match(text)
    if not m:
        raise ValueError(f"malformed fraction {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(r: Fraction | int) -> str:
    r = Fraction(r)
    return f"{r.numerator}/{r.denominator}"


def decimal_string(r: Number, places: int = 12) -> str:
    """Decimal rendering rounded half-up to ``places`` digits."""
    r = as_fraction(r)
    sign = "-" if r < 0 else ""
    r = abs(r)
    scaled = (r.numerator * 10**places * 2 + r.denominator) // (2 * r.denominator)
    whole, part = divmod(scaled, 10**places)
    if places == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{part:0{places}d}"
