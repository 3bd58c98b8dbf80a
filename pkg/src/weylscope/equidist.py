"""Distribution of the fractional parts {k f(p)} over short prime windows.

Counts use exact integer comparison against the sigma grid (a fractional
part exactly equal to a grid point is NOT below it), so reports are
reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import RangeError
from .numeric import RealAlpha
from .polyops import eval_phase
from .primes import PrimeWindow, count_primes

EXACT_DSTAR_LIMIT = 10**7


@dataclass(frozen=True)
class DistributionReport:
    """Counting function F over a sigma grid, residuals, and star discrepancy."""

    N: int
    grid_size: int
    counts: list[int]  # F(i/grid) for i = 1..grid
    residuals: list[float]  # F(sigma) - sigma*N
    dstar: float  # sup over the grid of |F/N - sigma|
    dstar_exact: float | None = None  # sorted-values D*, when requested

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "grid_size": self.grid_size,
            "counts": self.counts,
            "residuals": self.residuals,
            "dstar": self.dstar,
            "dstar_exact": self.dstar_exact,
        }


def _window_bins(
    alpha: RealAlpha,
    lower_coeffs: Sequence[RealAlpha],
    n: int,
    k: int,
    w: PrimeWindow,
    grid: int,
) -> tuple[np.ndarray, list[int]]:
    """Histogram of floor({k f(p)} * grid) plus the raw fixed-point residues."""
    counts = np.zeros(grid, dtype=np.int64)
    fracs: list[int] = []
    for p in w.positions():
        t = eval_phase(alpha, lower_coeffs, k, int(p), n)
        idx = (t.frac * grid) >> t.bits  # exact floor of {.}*grid
        counts[idx] += 1
        fracs.append(t.frac << (256 - t.bits) if t.bits < 256 else t.frac >> (t.bits - 256))
    return counts, fracs


def count_below(
    alpha: RealAlpha,
    lower_coeffs: Sequence[RealAlpha],
    n: int,
    k: int,
    w: PrimeWindow,
    sigma: float,
) -> int:
    """#{p in the window : {k f(p)} < sigma}, strict inequality, exact compare."""
    if not 0 < sigma <= 1:
        raise RangeError("need 0 < sigma <= 1")
    sig = Fraction(sigma)
    total = 0
    for p in w.positions():
        t = eval_phase(alpha, lower_coeffs, k, int(p), n)
        if t.frac * sig.denominator < sig.numerator << t.bits:
            total += 1
    return total


def distribution_report(
    alpha: RealAlpha,
    lower_coeffs: Sequence[RealAlpha],
    n: int,
    k: int,
    w: PrimeWindow,
    grid_size: int,
    exact_dstar: bool = False,
) -> DistributionReport:
    """Counting function over sigma in {1/grid, ..., 1} with residuals and D*.

    The grid D* is the sup over grid points only; `exact_dstar` additionally
    computes the sorted-values star discrepancy (N <= 1e7).
    """
    if grid_size < 2:
        raise RangeError("need grid_size >= 2")
    bins, fracs = _window_bins(alpha, lower_coeffs, n, k, w, grid_size)
    big_n = int(bins.sum())
    counts = np.cumsum(bins).tolist()
    residuals = [c - (i + 1) / grid_size * big_n for i, c in enumerate(counts)]
    if big_n:
        dstar = max(abs(c / big_n - (i + 1) / grid_size) for i, c in enumerate(counts))
    else:
        dstar = 0.0
    dexact = None
    if exact_dstar:
        if big_n > EXACT_DSTAR_LIMIT:
            raise RangeError("exact D* supported for N <= 1e7")
        dexact = _exact_dstar(fracs, big_n)
    return DistributionReport(
        N=big_n,
        grid_size=grid_size,
        counts=counts,
        residuals=residuals,
        dstar=dstar,
        dstar_exact=dexact,
    )


def _exact_dstar(fracs_256: list[int], big_n: int) -> float:
    """Star discrepancy from sorted points: max over i of
    max(i/N - t_(i), t_(i) - (i-1)/N), with t at 256 fraction bits."""
    if big_n == 0:
        return 0.0
    pts = sorted(fracs_256)
    scale = 2.0**-256
    d = 0.0
    for i, t in enumerate(pts, start=1):
        tv = t * scale
        d = max(d, i / big_n - tv, tv - (i - 1) / big_n)
    return d
