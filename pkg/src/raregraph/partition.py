"""The fixed split of the positive integers into T and reserved triples.

Triple number k (Cantor index of the pair (i, j)) occupies the digit
positions ``(k+1)**3, (k+1)**3 + 1, (k+1)**3 + 2``.  Cubes are at least 7
apart, so the triples never touch, and at most ``3 * N**(1/3)`` integers in
``[1, N]`` are reserved.  Everything else belongs to T.
"""

from __future__ import annotations

from math import isqrt
from typing import Iterator, NamedTuple

from .errors import InvalidRangeError

__all__ = [
    "TriplePosition",
    "icbrt",
    "pair_index",
    "unpair",
    "s_of",
    "classify",
    "in_T",
    "count_T",
    "triples_upto",
    "T_upto",
]


class TriplePosition(NamedTuple):
    """Digit ``s_of(i, j) + position`` of the triple reserved for (i, j)."""

    i: int
    j: int
    position: int


def icbrt(n: int) -> int:
    """Largest c with c**3 <= n."""
    if n < 0:
        raise InvalidRangeError("cube root of a negative number")
    if n < 2:
        return n
    c = 1 << -(-n.bit_length() // 3)  # power of two >= true root
    while True:
        d = (2 * c + n // (c * c)) // 3
        if d >= c:
            break
        c = d
    while c**3 > n:
        c -= 1
    while (c + 1) ** 3 <= n:
        c += 1
    return c


def _check_positive(**kw):
    for name, v in kw.items():
        if v < 1:
            raise InvalidRangeError(f"{name} must be a positive integer, got {v}")


def pair_index(i: int, j: int) -> int:
    """Cantor diagonal index of (i, j): ``(i+j-1)(i+j-2)/2 + i``."""
    _check_positive(i=i, j=j)
    d = i + j - 1
    return d * (d - 1) // 2 + i


def unpair(k: int) -> tuple[int, int]:
    """Inverse of :func:`pair_index`."""
    _check_positive(k=k)
    d = (1 + isqrt(8 * k - 7)) // 2
    i = k - d * (d - 1) // 2
    return i, d + 1 - i


def s_of(i: int, j: int) -> int:
    """First digit position of the triple reserved for (i, j)."""
    return (pair_index(i, j) + 1) ** 3


def classify(n: int) -> TriplePosition | None:
    """Locate n: ``None`` when n lies in T, else its triple and offset."""
    _check_positive(n=n)
    c = icbrt(n)
    offset = n - c**3
    if c >= 2 and offset <= 2:
        i, j = unpair(c - 1)
        return TriplePosition(i, j, offset)
    return None


def in_T(n: int) -> bool:
    return classify(n) is None


def count_T(N: int) -> int:
    """``M(N) = |[1, N] ∩ T|`` in O(N**(1/3))."""
    _check_positive(N=N)
    reserved = sum(min(3, N - c**3 + 1) for c in range(2, icbrt(N) + 1))
    return N - reserved


def triples_upto(N: int) -> Iterator[tuple[int, int, int]]:
    """Yield ``(i, j, s)`` for every triple whose first position is <= N."""
    k = 1
    while (k + 1) ** 3 <= N:
        i, j = unpair(k)
        yield i, j, (k + 1) ** 3
        k += 1


def T_upto(N: int) -> list[int]:
    """Members of T in [1, N], ascending."""
    reserved = set()
    for _, _, s in triples_upto(N):
        reserved.update((s, s + 1, s + 2))
    return [n for n in range(1, N + 1) if n not in reserved]
