"""Deterministic worker-pool helpers.

Work is split into chunks whose boundaries do not depend on the thread
count, each chunk is a pure function of its inputs, and results are merged
in chunk order, so any thread count reproduces the single-threaded output
byte for byte.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence


def resolve_threads(threads: int | None) -> int:
    if threads is None or threads == 0:
        env = os.environ.get("WEYLSCOPE_THREADS", "")
        try:
            threads = int(env) if env else 1
        except ValueError:
            threads = 1
    return max(1, threads)


def run_ordered(fn: Callable, args_list: Sequence[tuple], threads: int) -> list:
    """Apply fn over the argument tuples, returning results in input order."""
    if threads <= 1 or len(args_list) <= 1:
        return [fn(*args) for args in args_list]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(fn, *args) for args in args_list]
        return [f.result() for f in futures]


def chunk_ranges(lo: int, hi: int, size: int) -> list[tuple[int, int]]:
    """Split [lo, hi] into fixed-size inclusive chunks (thread-count independent)."""
    out = []
    a = lo
    while a <= hi:
        b = min(a + size - 1, hi)
        out.append((a, b))
        a = b + 1
    return out
