"""Seeded random streams.

Every random choice comes from numpy's PCG64 generator seeded through
``SeedSequence([seed, block])``.  Work is cut into fixed-size blocks, each
with its own stream, so results do not depend on how blocks are spread over
worker processes.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

import numpy as np

BLOCK = 1024
_MASK64 = (1 << 64) - 1

R = TypeVar("R")


def stream(seed: int, *key: int) -> np.random.Generator:
    """Independent PCG64 stream for ``(seed, *key)``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed & _MASK64, *key])))


def randbits(rng: np.random.Generator, k: int) -> int:
    """Uniform integer in ``[0, 2**k)``."""
    if k <= 0:
        return 0
    nbytes = (k + 7) // 8
    return int.from_bytes(rng.bytes(nbytes), "big") >> (8 * nbytes - k)


def randint(rng: np.random.Generator, lo: int, hi: int) -> int:
    """Uniform integer in ``[lo, hi]``."""
    return int(rng.integers(lo, hi + 1))


def blocks(total: int, size: int = BLOCK) -> list[tuple[int, int, int]]:
    """``(block_index, start, stop)`` triples covering ``range(total)``."""
    return [(b, lo, min(lo + size, total)) for b, lo in enumerate(range(0, total, size))]


def run_blocks(fn: Callable[..., R], tasks: Sequence[tuple], workers: int = 1) -> list[R]:
    """Apply ``fn(*task)`` to every task, in order, optionally in processes."""
    if workers <= 1 or len(tasks) <= 1:
        return [fn(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, *t) for t in tasks]
        return [f.result() for f in futures]
