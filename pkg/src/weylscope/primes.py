"""Segmented sieving of primes in short windows (x-y, x]."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from .errors import RangeError

MAX_X = 1 << 52  # index arithmetic stays exact in 64-bit with headroom

SEGMENT = 1 << 18  # default segment length, sized for L2 cache

_base_cache: dict[int, np.ndarray] = {}


def _base_primes(limit: int) -> np.ndarray:
    """All primes <= limit via a plain sieve; cached per limit bucket."""
    limit = max(limit, 16)
    key = 1 << max(limit - 1, 1).bit_length()  # round up to a power of two
    cached = _base_cache.get(key)
    if cached is not None:
        return cached
    sieve = np.ones(key + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(key) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    primes = np.flatnonzero(sieve).astype(np.int64)
    _base_cache[key] = primes
    return primes


@dataclass(frozen=True)
class PrimeWindow:
    """Primality bitmap over (x-y, x]; bit i marks x-y+1+i."""

    x: int
    y: int
    bits: np.ndarray = field(repr=False)

    @property
    def lo(self) -> int:
        return self.x - self.y

    def positions(self) -> np.ndarray:
        """The primes in the window, ascending, as int64."""
        return np.flatnonzero(self.bits) + np.int64(self.lo + 1)

    def __contains__(self, n: int) -> bool:
        return self.lo < n <= self.x and bool(self.bits[n - self.lo - 1])


def sieve_window(x: int, y: int, segment: int = SEGMENT) -> PrimeWindow:
    """Sieve the window (x-y, x] with base primes <= sqrt(x).

    Segments of `segment` entries are struck one at a time so the working
    set stays cache-sized; segments are independent and could be sieved in
    parallel, but striking is numpy-vectorized and already memory-bound.
    """
    if not 1 <= y <= x:
        raise RangeError("need 1 <= y <= x")
    if x > MAX_X:
        raise RangeError(f"x exceeds the supported bound 2^52")
    lo = x - y  # window is (lo, x], entry i <-> lo+1+i
    bits = np.ones(y, dtype=bool)
    if lo + 1 <= 1:
        bits[: min(y, 1 - lo)] = False  # mark 0 and 1 composite-like
    base = _base_primes(isqrt(x))
    base = base[base <= isqrt(x)]
    for seg_start in range(0, y, segment):
        seg_end = min(y, seg_start + segment)
        a, b = lo + 1 + seg_start, lo + seg_end  # inclusive number range
        for p in base:
            p = int(p)
            if p * p > b:
                break
            start = max(p * p, ((a + p - 1) // p) * p)
            if start > b:
                continue
            bits[start - lo - 1 : seg_end : p] = False
    return PrimeWindow(x=x, y=y, bits=bits)


def count_primes(w: PrimeWindow) -> int:
    """Number of set bits, i.e. pi(x) - pi(x-y)."""
    return int(np.count_nonzero(w.bits))
