"""Deterministic replicate scheduling.

Results are returned in replicate-index order no matter how many worker
threads run, so downstream floating-point reductions are schedule-independent.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, TypeVar

T = TypeVar("T")


def map_indexed(fn: Callable[[int], T], count: int, threads: int = 1) -> list[T]:
    """Apply ``fn`` to 0..count-1, preserving index order in the result."""
    threads = max(1, int(threads))
    if threads == 1 or count <= 1:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(count)))
