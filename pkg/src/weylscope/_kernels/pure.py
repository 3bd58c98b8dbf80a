"""Pure-Python (numpy-vectorized) kernels.

Twin of the compiled extension `_speedups`: identical semantics, selected
at import time when the extension is unavailable or WEYLSCOPE_PURE is set.
Phase residues travel as little-endian 192-bit limb triples (uint64), all
limb arithmetic is exact mod 2^192, and a residue whose distance to the
nearest integer falls below 2^-100 is treated as zero (callers guarantee
the true distance is either 0 or far above the residue's certified error,
so the guard never misclassifies).
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "pure"

_U64 = np.uint64
_MASK32 = _U64(0xFFFFFFFF)
_SH32 = _U64(32)
_ONE = _U64(1)
_ZERO_EPS = 2.0**-100
_TWO_PI = 2.0 * math.pi

_2M64 = 2.0**-64
_2M128 = 2.0**-128
_2M192 = 2.0**-192


def _mul_limbs(limbs: np.ndarray, mult) -> np.ndarray:
    """(limbs * mult) mod 2^192 for (n,3) uint64 limbs and mult < 2^64.

    Halfword (32-bit) column products with explicit carries; exact.
    """
    limbs = np.atleast_2d(limbs)
    n = limbs.shape[0]
    hw = [limbs[:, i // 2] >> _SH32 if i % 2 else limbs[:, i // 2] & _MASK32 for i in range(6)]
    if isinstance(mult, (int, np.integer)):
        m_half = (_U64(int(mult) & 0xFFFFFFFF), _U64((int(mult) >> 32) & 0xFFFFFFFF))
    else:
        mult = np.asarray(mult, dtype=_U64)
        m_half = (mult & _MASK32, mult >> _SH32)
    cols = [np.zeros(n, dtype=_U64) for _ in range(7)]
    for ai in range(6):
        for bi in range(2):
            oi = ai + bi
            if oi >= 6:
                continue
            p = hw[ai] * m_half[bi]
            cols[oi] += p & _MASK32
            cols[oi + 1] += p >> _SH32
    res_hw = []
    carry = np.zeros(n, dtype=_U64)
    for oi in range(6):
        tot = cols[oi] + carry
        res_hw.append(tot & _MASK32)
        carry = tot >> _SH32
    out = np.empty((n, 3), dtype=_U64)
    for i in range(3):
        out[:, i] = res_hw[2 * i] | (res_hw[2 * i + 1] << _SH32)
    return out


def _add_limbs_inplace(acc: np.ndarray, delta: np.ndarray) -> None:
    """acc = (acc + delta) mod 2^192, elementwise over (n,3) uint64 limbs."""
    d0, d1, d2 = delta[:, 0], delta[:, 1], delta[:, 2]
    r0 = acc[:, 0] + d0
    c0 = (r0 < d0).astype(_U64)
    t1 = acc[:, 1] + d1
    r1 = t1 + c0
    c1 = ((t1 < d1) | (r1 < c0)).astype(_U64)
    acc[:, 0] = r0
    acc[:, 1] = r1
    acc[:, 2] = acc[:, 2] + d2 + c1


def _unit_from_limbs(limbs: np.ndarray) -> np.ndarray:
    """Residue value in [0, 1) as float64 (top 128 bits; plenty for angles)."""
    limbs = np.atleast_2d(limbs)
    return limbs[:, 2].astype(np.float64) * _2M64 + limbs[:, 1].astype(np.float64) * _2M128


def _dist_from_limbs(limbs: np.ndarray) -> np.ndarray:
    """Distance to the nearest integer, folded at limb level so that residues
    within 2^-128 of an integer keep full relative accuracy."""
    limbs = np.atleast_2d(limbs)
    l0, l1, l2 = limbs[:, 0], limbs[:, 1], limbs[:, 2]
    c0 = (l0 == 0).astype(_U64)
    n0 = ~l0 + _ONE
    n1 = ~l1 + c0
    c1 = c0 & (l1 == 0).astype(_U64)
    n2 = ~l2 + c1
    fold = (l2 >> _U64(63)) == _ONE
    f0 = np.where(fold, n0, l0)
    f1 = np.where(fold, n1, l1)
    f2 = np.where(fold, n2, l2)
    return (
        f2.astype(np.float64) * _2M64
        + f1.astype(np.float64) * _2M128
        + f0.astype(np.float64) * _2M192
    )


def _geom_abs(d1: np.ndarray, d_len: np.ndarray, lengths: np.ndarray) -> np.ndarray:
    """|sum of e(lam*u) over L consecutive u| = sin(pi*||L*lam||)/sin(pi*||lam||).

    d1 = ||lam||, d_len = ||L*lam||; lam within 2^-100 of an integer gives L.
    """
    near_int = d1 < _ZERO_EPS
    denom = np.sin(math.pi * np.where(near_int, 0.25, d1))
    vals = np.sin(math.pi * d_len) / denom
    return np.where(near_int, lengths.astype(np.float64), vals)


def _fsum(values: np.ndarray) -> float:
    return float(np.sum(values))


# ---------------------------------------------------------------- kernels


def vsum_abs(t_limbs: np.ndarray, k_lo: int, k_hi: int) -> np.ndarray:
    """|sum_p e(k * t_p)| for each k in [k_lo, k_hi]; t_p given as limbs."""
    nk = k_hi - k_lo + 1
    out = np.empty(nk, dtype=np.float64)
    if t_limbs.shape[0] == 0:
        out[:] = 0.0
        return out
    acc = _mul_limbs(t_limbs, k_lo)
    for i in range(nk):
        theta = _TWO_PI * _unit_from_limbs(acc)
        out[i] = math.hypot(_fsum(np.cos(theta)), _fsum(np.sin(theta)))
        if i + 1 < nk:
            _add_limbs_inplace(acc, t_limbs)
    return out


def pair_stats(alpha_limbs: np.ndarray, n: int, big_k: int, x: int, y: int, m: int):
    """Per-m partials of the pair sums over u in (x-y+m, x].

    Returns (w1, s4, w2re, w2im, s6) where, with t_u = {alpha*(u^n-(u-m)^n)}
    and S_k = sum_u e(k t_u):
      w1 = sum_u |sum_{k<=K} e(k t_u)|   (geometric closed form per u)
      s4 = sum_u |sum_{k<=K} e(k t_u)|^2
      w2 = sum_{1<=k<K} (K-k) * S_k      (direct summation over k)
      s6 = sum_{k<=K} |S_k|
    """
    w = y - m
    if w <= 0:
        return 0.0, 0.0, 0.0, 0.0, 0.0
    u = np.arange(x - w + 1, x + 1, dtype=np.int64)
    big_n = (u**n - (u - m) ** n).astype(np.uint64)
    t_limbs = _mul_limbs(np.broadcast_to(alpha_limbs, (w, 3)), big_n)
    d1 = _dist_from_limbs(t_limbs)
    dk = _dist_from_limbs(_mul_limbs(t_limbs, big_k))
    r = _geom_abs(d1, dk, np.full(w, big_k, dtype=np.int64))
    w1 = _fsum(r)
    s4 = _fsum(r * r)
    w2re = w2im = s6 = 0.0
    acc = t_limbs.copy()
    for k in range(1, big_k + 1):
        theta = _TWO_PI * _unit_from_limbs(acc)
        sre = _fsum(np.cos(theta))
        sim = _fsum(np.sin(theta))
        s6 += math.hypot(sre, sim)
        if k < big_k:
            w2re += (big_k - k) * sre
            w2im += (big_k - k) * sim
            _add_limbs_inplace(acc, t_limbs)
    return w1, s4, w2re, w2im, s6


def w3w4(beta_limbs: np.ndarray, ndims: int, big_k: int, m: int, w: int):
    """Per-m partials of the shifted linear sums over (k, h_1..h_ndims).

    Each term is |sum_{u in I(h)} e(beta * k*m*h_1..h_ndims * u)| with
    |I(h)| = w - sum|h_i|.  Both the magnitude and the length depend only
    on the |h_i|, so magnitude vectors are enumerated once and weighted by
    2^(#nonzero); tuples containing a zero shift have phase 0 and
    contribute their interval length exactly.

    Returns (w3, w4, zero_part): full signed sum, the all-positive
    restriction, and the some-shift-zero subtotal of w3.
    """
    if w <= 0 or not 1 <= ndims <= 3:
        return 0.0, 0.0, 0.0
    zero_per_k = _zero_pattern_sum(ndims, w)
    w3 = 0.0
    w4 = 0.0
    sign_mult = float(1 << ndims)
    for k in range(1, big_k + 1):
        km = k * m
        if ndims == 1:
            pos = _fsum(_axis_terms(beta_limbs, km, w))
        elif ndims == 2:
            pos = 0.0
            for a1 in range(1, w - 1):
                pos += _fsum(_axis_terms(beta_limbs, km * a1, w - a1))
        else:
            pos = 0.0
            for a1 in range(1, w - 2):
                for a2 in range(1, w - 1 - a1):
                    pos += _fsum(_axis_terms(beta_limbs, km * a1 * a2, w - a1 - a2))
        w3 += sign_mult * pos
        w4 += pos
    zero_part = big_k * zero_per_k
    return w3 + zero_part, w4, zero_part


def _axis_terms(beta_limbs: np.ndarray, mult: int, rem: int) -> np.ndarray:
    """Geometric moduli for the innermost magnitude a = 1..rem-1 with
    phase step {beta * mult * a} over intervals of length rem - a."""
    if rem <= 1:
        return np.zeros(0)
    a = np.arange(1, rem, dtype=np.uint64)
    lam = _mul_limbs(np.broadcast_to(beta_limbs, (rem - 1, 3)), a * _U64(mult))
    lengths = np.arange(rem - 1, 0, -1, dtype=np.int64)
    d1 = _dist_from_limbs(lam)
    dl = _dist_from_limbs(_mul_limbs(lam, lengths.astype(np.uint64)))
    return _geom_abs(d1, dl, lengths)


def _zero_pattern_sum(ndims: int, w: int) -> float:
    """sum of 2^(#nonzero) * (w - sum a_i) over magnitude tuples with at
    least one zero entry (phase is 0, so each term equals its length)."""
    if ndims == 1:
        return float(w)
    a = np.arange(1, w, dtype=np.float64)
    one_axis = _fsum(w - a)  # sum over a single positive magnitude
    if ndims == 2:
        return float(w) + 2 * (2.0 * one_axis)
    # ndims == 3: all-zero + one-positive (3 slots) + two-positive (3 pairs)
    s = np.arange(2, w, dtype=np.float64)
    two_axis = _fsum((s - 1.0) * (w - s))  # sum over a1,a2 >= 1 of (w-a1-a2)+
    return float(w) + 3 * (2.0 * one_axis) + 3 * (4.0 * two_axis)


def tau_min(beta_limbs: np.ndarray, v_lo: int, v_hi: int, nfold: int, y: float,
            base_primes: np.ndarray) -> float:
    """sum over v in (v_lo, v_hi] of tau_nfold(v) * min(y, 1/(2*||beta*v||)).

    Factors the block against the base primes (<= sqrt(v_hi)), multiplying
    the per-prime C(e + nfold - 1, nfold - 1) factors; tau values are exact.
    """
    blen = v_hi - v_lo
    if blen <= 0:
        return 0.0
    v = np.arange(v_lo + 1, v_hi + 1, dtype=np.uint64)
    residual = v.copy()
    taus = np.ones(blen, dtype=_U64)
    comb = np.array([math.comb(e + nfold - 1, nfold - 1) for e in range(66)], dtype=_U64)
    for p in base_primes:
        p = int(p)
        if p * p > v_hi:
            break
        first = (v_lo // p + 1) * p - (v_lo + 1)
        if first >= blen:
            continue
        seg = residual[first::p]
        e = np.ones(len(seg), dtype=np.int64)
        seg //= _U64(p)
        while True:
            mask = seg % _U64(p) == 0
            if not mask.any():
                break
            seg[mask] //= _U64(p)
            e[mask] += 1
        taus[first::p] *= comb[e]
    taus[residual > 1] *= _U64(nfold)
    d = _dist_from_limbs(_mul_limbs(np.broadcast_to(beta_limbs, (blen, 3)), v))
    safe = np.where(d < _ZERO_EPS, 1.0, d)
    weights = np.where(d < _ZERO_EPS, float(y), np.minimum(float(y), 0.5 / safe))
    return _fsum(taus.astype(np.float64) * weights)


def lemma2_lhs_abs(coeffs_mod64, x: int, y: int) -> float:
    """|sum_{x-y<u<=x} e(f(u))| with f's coefficients scaled by 2^64 (mod 2^64)."""
    u = np.arange(x - y + 1, x + 1, dtype=np.uint64)
    return _abs_poly_sum([int(c) for c in coeffs_mod64], u)


def _abs_poly_sum(coeffs: list[int], u: np.ndarray) -> float:
    if len(u) == 0:
        return 0.0
    acc = np.zeros(len(u), dtype=_U64)
    for c in reversed(coeffs):
        acc = acc * u + _U64(c)  # uint64 wrap == mod 2^64, exact
    theta = _TWO_PI * (acc.astype(np.float64) * _2M64)
    return math.hypot(_fsum(np.cos(theta)), _fsum(np.sin(theta)))


def _diff_coeffs_mod64(coeffs: list[int], h: int) -> list[int]:
    """Coefficients of g(u+h) - g(u) mod 2^64 (exact dyadic phase arithmetic)."""
    s = len(coeffs) - 1
    mask = (1 << 64) - 1
    out = [0] * max(s, 1)
    for r in range(1, s + 1):
        a = coeffs[r]
        if a == 0:
            continue
        hpow = 1
        for i in range(r - 1, -1, -1):
            hpow = (hpow * h) % (1 << 64)
            out[i] = (out[i] + a * math.comb(r, i) * hpow) & mask
    return out


def lemma2_rhs(coeffs_mod64, j: int, x: int, y: int) -> float:
    """sum over |h_1|,..,|h_j| < y of |sum_{u in I(h)} e(Delta_j f(u))|.

    I(h) = (x - y + sum|negative h|, x - sum(positive h)]; tuples with
    sum|h_i| >= y give empty intervals and are pruned.
    """
    base = [int(c) for c in coeffs_mod64]
    total = 0.0
    stack_h: list[int] = []

    def rec(level_coeffs: list[int], depth: int, habs: int, neg: int, pos: int) -> float:
        if depth == j:
            lo = x - y + neg
            hi = x - pos
            if hi <= lo:
                return 0.0
            u = np.arange(lo + 1, hi + 1, dtype=np.uint64)
            return _abs_poly_sum(level_coeffs, u)
        sub = 0.0
        for h in range(-(y - 1), y):
            if habs + abs(h) >= y:
                continue
            sub += rec(_diff_coeffs_mod64(level_coeffs, h), depth + 1,
                       habs + abs(h), neg + max(-h, 0), pos + max(h, 0))
        return sub

    return total + rec(base, 0, 0, 0, 0)
