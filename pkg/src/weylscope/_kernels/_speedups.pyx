# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: 192-bit limb phase arithmetic and the hot summation loops.

Semantics match `pure.py` exactly (same limb format, same 2^-100 near-integer
guard, Neumaier-compensated accumulation); only the execution strategy
differs.  All heavy loops run with the GIL released so callers can thread.
"""

import numpy as np

from libc.math cimport M_PI, cos, fabs, hypot, sin

ctypedef unsigned long long u64
ctypedef long long i64

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

BACKEND_NAME = "cython"

cdef double ZERO_EPS = 2.0 ** -100
cdef double TWO_PI = 2.0 * M_PI
cdef double P2M64 = 2.0 ** -64
cdef double P2M128 = 2.0 ** -128
cdef double P2M192 = 2.0 ** -192

# C(r, i) for r, i <= 7, filled at import
cdef u64[8][8] BINOM


def _init_binom():
    cdef long r, i
    for r in range(8):
        for i in range(8):
            BINOM[r][i] = 0
        BINOM[r][0] = 1
    for r in range(1, 8):
        for i in range(1, r + 1):
            BINOM[r][i] = BINOM[r - 1][i - 1] + BINOM[r - 1][i]


_init_binom()


cdef inline void mul3(u64 a0, u64 a1, u64 a2, u64 k,
                      u64* r0, u64* r1, u64* r2) noexcept nogil:
    cdef u128 p = <u128> a0 * k
    r0[0] = <u64> p
    p = (<u128> a1) * k + (p >> 64)
    r1[0] = <u64> p
    p = (<u128> a2) * k + (p >> 64)
    r2[0] = <u64> p


cdef inline void add3(u64* a0, u64* a1, u64* a2, u64 b0, u64 b1, u64 b2) noexcept nogil:
    cdef u128 s = <u128> a0[0] + b0
    a0[0] = <u64> s
    s = (<u128> a1[0]) + b1 + (s >> 64)
    a1[0] = <u64> s
    a2[0] = a2[0] + b2 + <u64> (s >> 64)


cdef inline double unit3(u64 l1, u64 l2) noexcept nogil:
    return <double> l2 * P2M64 + <double> l1 * P2M128


cdef inline double dist3(u64 l0, u64 l1, u64 l2) noexcept nogil:
    cdef u64 f0, f1, f2
    if l2 >> 63:
        # fold: distance of the complement 2^192 - t
        f0 = ~l0 + 1
        f1 = ~l1
        f2 = ~l2
        if l0 == 0:  # f0 wrapped to zero, propagate the carry
            f1 += 1
            if f1 == 0:
                f2 += 1
    else:
        f0 = l0
        f1 = l1
        f2 = l2
    return <double> f2 * P2M64 + <double> f1 * P2M128 + <double> f0 * P2M192


cdef inline double geom_abs(double d1, double dlen, double length) noexcept nogil:
    if d1 < ZERO_EPS:
        return length
    return sin(M_PI * dlen) / sin(M_PI * d1)


cdef inline void neum_add(double* s, double* c, double x) noexcept nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


def vsum_abs(object t_limbs_obj, long k_lo, long k_hi):
    """|sum_p e(k * t_p)| for each k in [k_lo, k_hi]."""
    t_arr = np.ascontiguousarray(t_limbs_obj, dtype=np.uint64)
    cdef u64[:, ::1] t = t_arr
    cdef Py_ssize_t npts = t.shape[0]
    cdef Py_ssize_t nk = k_hi - k_lo + 1
    if nk <= 0:
        return np.zeros(0, dtype=np.float64)
    out_arr = np.zeros(nk, dtype=np.float64)
    cdef double[::1] out = out_arr
    if npts == 0:
        return out_arr
    acc_arr = np.empty((npts, 3), dtype=np.uint64)
    cdef u64[:, ::1] acc = acc_arr
    cdef Py_ssize_t i, p
    cdef double sre, cre, sim, cim, theta
    with nogil:
        for p in range(npts):
            mul3(t[p, 0], t[p, 1], t[p, 2], <u64> k_lo,
                 &acc[p, 0], &acc[p, 1], &acc[p, 2])
        for i in range(nk):
            sre = cre = sim = cim = 0.0
            for p in range(npts):
                theta = TWO_PI * unit3(acc[p, 1], acc[p, 2])
                neum_add(&sre, &cre, cos(theta))
                neum_add(&sim, &cim, sin(theta))
            out[i] = hypot(sre + cre, sim + cim)
            if i + 1 < nk:
                for p in range(npts):
                    add3(&acc[p, 0], &acc[p, 1], &acc[p, 2], t[p, 0], t[p, 1], t[p, 2])
    return out_arr


def pair_stats(object alpha_limbs, long n, long big_k, long x, long y, long m):
    """Per-m partials (w1, s4, w2re, w2im, s6); see the pure twin for the sums."""
    cdef u64 a0 = int(alpha_limbs[0])
    cdef u64 a1 = int(alpha_limbs[1])
    cdef u64 a2 = int(alpha_limbs[2])
    cdef long w = y - m
    if w <= 0:
        return 0.0, 0.0, 0.0, 0.0, 0.0
    t_arr = np.empty((w, 3), dtype=np.uint64)
    acc_arr = np.empty((w, 3), dtype=np.uint64)
    cdef u64[:, ::1] t = t_arr
    cdef u64[:, ::1] acc = acc_arr
    cdef double w1 = 0.0, w1c = 0.0, s4 = 0.0, s4c = 0.0
    cdef double w2re = 0.0, w2im = 0.0, s6 = 0.0, s6c = 0.0
    cdef double sre, cre, sim, cim, theta, d1, dk, r
    cdef long iu, k, j
    cdef i64 u, nn, pw1, pw2
    cdef u64 g0, g1, g2
    with nogil:
        for iu in range(w):
            u = x - w + 1 + iu
            pw1 = 1
            pw2 = 1
            for j in range(n):
                pw1 *= u
                pw2 *= u - m
            nn = pw1 - pw2
            mul3(a0, a1, a2, <u64> nn, &t[iu, 0], &t[iu, 1], &t[iu, 2])
            d1 = dist3(t[iu, 0], t[iu, 1], t[iu, 2])
            mul3(t[iu, 0], t[iu, 1], t[iu, 2], <u64> big_k, &g0, &g1, &g2)
            dk = dist3(g0, g1, g2)
            r = geom_abs(d1, dk, <double> big_k)
            neum_add(&w1, &w1c, r)
            neum_add(&s4, &s4c, r * r)
            acc[iu, 0] = t[iu, 0]
            acc[iu, 1] = t[iu, 1]
            acc[iu, 2] = t[iu, 2]
        for k in range(1, big_k + 1):
            sre = cre = sim = cim = 0.0
            for iu in range(w):
                theta = TWO_PI * unit3(acc[iu, 1], acc[iu, 2])
                neum_add(&sre, &cre, cos(theta))
                neum_add(&sim, &cim, sin(theta))
            sre += cre
            sim += cim
            neum_add(&s6, &s6c, hypot(sre, sim))
            if k < big_k:
                w2re += (big_k - k) * sre
                w2im += (big_k - k) * sim
                for iu in range(w):
                    add3(&acc[iu, 0], &acc[iu, 1], &acc[iu, 2], t[iu, 0], t[iu, 1], t[iu, 2])
    return w1 + w1c, s4 + s4c, w2re, w2im, s6 + s6c


cdef double _axis_sum(u64 b0, u64 b1, u64 b2, u64 mult, long rem) noexcept nogil:
    """sum over a = 1..rem-1 of |geometric(beta*mult*a, rem-a)|.

    Plain accumulation: one axis holds < 2^31 nonnegative terms, so the
    relative error stays ~n*eps and the caller compensates across axes.
    """
    cdef double tot = 0.0, d1, dl
    cdef u64 s0 = 0, s1 = 0, s2 = 0
    cdef u64 e0, e1, e2, g0, g1, g2
    cdef long a, L
    if rem <= 1:
        return 0.0
    mul3(b0, b1, b2, mult, &e0, &e1, &e2)  # per-step increment beta*mult
    for a in range(1, rem):
        add3(&s0, &s1, &s2, e0, e1, e2)
        L = rem - a
        d1 = dist3(s0, s1, s2)
        mul3(s0, s1, s2, <u64> L, &g0, &g1, &g2)
        dl = dist3(g0, g1, g2)
        tot = tot + geom_abs(d1, dl, <double> L)
    return tot


def w3w4(object beta_limbs, long ndims, long big_k, long m, long w):
    """Per-m partials (w3, w4, zero_part); see the pure twin for the layout."""
    cdef u64 b0 = int(beta_limbs[0])
    cdef u64 b1 = int(beta_limbs[1])
    cdef u64 b2 = int(beta_limbs[2])
    if w <= 0 or ndims < 1 or ndims > 3:
        return 0.0, 0.0, 0.0
    cdef double w3 = 0.0, w3c = 0.0, w4 = 0.0, w4c = 0.0, posc = 0.0
    cdef double pos, zero_per_k = 0.0
    cdef double one_axis = 0.0, two_axis = 0.0
    cdef double sign_mult = <double> (1 << ndims)
    cdef long k, a1, a2, s
    cdef u64 km
    with nogil:
        # zero-shift tuples contribute their interval length, independent of k
        if ndims == 1:
            zero_per_k = <double> w
        elif ndims == 2:
            for s in range(1, w):
                one_axis += <double> (w - s)
            zero_per_k = <double> w + 4.0 * one_axis
        else:
            for s in range(1, w):
                one_axis += <double> (w - s)
            for s in range(2, w):
                two_axis += <double> ((s - 1) * (w - s))
            zero_per_k = <double> w + 6.0 * one_axis + 12.0 * two_axis
        for k in range(1, big_k + 1):
            km = <u64> (k * m)
            pos = 0.0
            posc = 0.0
            if ndims == 1:
                pos = _axis_sum(b0, b1, b2, km, w)
            elif ndims == 2:
                for a1 in range(1, w - 1):
                    neum_add(&pos, &posc, _axis_sum(b0, b1, b2, km * <u64> a1, w - a1))
            else:
                for a1 in range(1, w - 2):
                    for a2 in range(1, w - 1 - a1):
                        neum_add(&pos, &posc,
                                 _axis_sum(b0, b1, b2, km * <u64> (a1 * a2), w - a1 - a2))
            pos += posc
            neum_add(&w3, &w3c, sign_mult * pos)
            neum_add(&w4, &w4c, pos)
    return (w3 + w3c) + big_k * zero_per_k, w4 + w4c, big_k * zero_per_k


def tau_min(object beta_limbs, long v_lo, long v_hi, long nfold, double y,
            object base_primes):
    """sum over v in (v_lo, v_hi] of tau_nfold(v) * min(y, 1/(2*||beta*v||))."""
    cdef u64 b0 = int(beta_limbs[0])
    cdef u64 b1 = int(beta_limbs[1])
    cdef u64 b2 = int(beta_limbs[2])
    cdef long blen = v_hi - v_lo
    if blen <= 0:
        return 0.0
    primes_arr = np.ascontiguousarray(base_primes, dtype=np.int64)
    cdef i64[::1] primes = primes_arr
    res_arr = np.empty(blen, dtype=np.uint64)
    tau_arr = np.ones(blen, dtype=np.uint64)
    cdef u64[::1] residual = res_arr
    cdef u64[::1] taus = tau_arr
    cdef u64[66] comb
    cdef long e, i, ip
    cdef i64 p, first
    cdef double tot = 0.0, totc = 0.0, d, weight
    cdef u64 s0 = 0, s1 = 0, s2 = 0
    comb[0] = 1
    for e in range(1, 66):
        # C(e + nfold - 1, nfold - 1) by the ratio recurrence, exact in u64
        comb[e] = comb[e - 1] * <u64> (e + nfold - 1) // <u64> e
    with nogil:
        for i in range(blen):
            residual[i] = <u64> (v_lo + 1 + i)
        for ip in range(primes.shape[0]):
            p = primes[ip]
            if p * p > v_hi:
                break
            first = (v_lo // p + 1) * p - (v_lo + 1)
            i = first
            while i < blen:
                e = 0
                while residual[i] % <u64> p == 0:
                    residual[i] //= <u64> p
                    e += 1
                taus[i] *= comb[e]
                i += p
        mul3(b0, b1, b2, <u64> v_lo, &s0, &s1, &s2)
        for i in range(blen):
            add3(&s0, &s1, &s2, b0, b1, b2)
            d = dist3(s0, s1, s2)
            if d < ZERO_EPS:
                weight = y
            else:
                weight = 0.5 / d
                if weight > y:
                    weight = y
            if residual[i] > 1:
                taus[i] *= <u64> nfold
            neum_add(&tot, &totc, <double> taus[i] * weight)
    return tot + totc


cdef double _poly_abs_sum(u64* coeffs, long deg, long lo, long hi) noexcept nogil:
    """|sum over u in (lo, hi] of e(g(u))| with g's coefficients mod 2^64."""
    cdef double sre = 0.0, cre = 0.0, sim = 0.0, cim = 0.0, theta
    cdef u64 acc, uu
    cdef long u, d
    if hi <= lo:
        return 0.0
    for u in range(lo + 1, hi + 1):
        uu = <u64> u
        acc = 0
        for d in range(deg, -1, -1):
            acc = acc * uu + coeffs[d]
        theta = TWO_PI * (<double> acc * P2M64)
        neum_add(&sre, &cre, cos(theta))
        neum_add(&sim, &cim, sin(theta))
    return hypot(sre + cre, sim + cim)


cdef void _diff_mod64(u64* src, long s, long h, u64* dst) noexcept nogil:
    """dst = coefficients of src(u+h) - src(u) mod 2^64 (degree s-1)."""
    cdef u64 hu = <u64> (<i64> h)  # two's complement == h mod 2^64
    cdef u64 hpow
    cdef long r, i
    for i in range(s if s > 0 else 1):
        dst[i] = 0
    for r in range(1, s + 1):
        if src[r] == 0:
            continue
        hpow = 1
        for i in range(r - 1, -1, -1):
            hpow = hpow * hu
            dst[i] = dst[i] + src[r] * BINOM[r][i] * hpow


def lemma2_lhs_abs(object coeffs_mod64, long x, long y):
    """|sum_{x-y<u<=x} e(f(u))| with f's coefficients scaled by 2^64 (mod 2^64)."""
    carr = np.ascontiguousarray(coeffs_mod64, dtype=np.uint64)
    cdef u64[::1] cv = carr
    cdef u64[8] cbuf
    cdef long deg = cv.shape[0] - 1, i
    if deg > 7:
        raise ValueError("kernel supports degree <= 7")
    for i in range(deg + 1):
        cbuf[i] = cv[i]
    cdef double out
    with nogil:
        out = _poly_abs_sum(cbuf, deg, x - y, x)
    return out


def lemma2_rhs(object coeffs_mod64, long j, long x, long y):
    """sum over shift vectors |h_i| < y of |sum_{u in I(h)} e(Delta_j f(u))|."""
    carr = np.ascontiguousarray(coeffs_mod64, dtype=np.uint64)
    cdef u64[::1] cv = carr
    cdef long deg = cv.shape[0] - 1
    if deg > 7:
        raise ValueError("kernel supports degree <= 7")
    if j < 1 or j > 3:
        raise ValueError("kernel supports 1 <= j <= 3")
    cdef u64[8] f0
    cdef u64[8] f1
    cdef u64[8] f2
    cdef u64[8] f3
    cdef long i, h1, h2, h3, a1, a2, a3, neg, pos
    for i in range(deg + 1):
        f0[i] = cv[i]
    cdef double tot = 0.0, totc = 0.0
    with nogil:
        for h1 in range(-(y - 1), y):
            a1 = h1 if h1 >= 0 else -h1
            _diff_mod64(f0, deg, h1, f1)
            if j == 1:
                neg = -h1 if h1 < 0 else 0
                pos = h1 if h1 > 0 else 0
                neum_add(&tot, &totc, _poly_abs_sum(f1, deg - 1, x - y + neg, x - pos))
                continue
            for h2 in range(-(y - 1), y):
                a2 = h2 if h2 >= 0 else -h2
                if a1 + a2 >= y:
                    continue
                _diff_mod64(f1, deg - 1, h2, f2)
                if j == 2:
                    neg = (-h1 if h1 < 0 else 0) + (-h2 if h2 < 0 else 0)
                    pos = (h1 if h1 > 0 else 0) + (h2 if h2 > 0 else 0)
                    neum_add(&tot, &totc,
                             _poly_abs_sum(f2, deg - 2, x - y + neg, x - pos))
                    continue
                for h3 in range(-(y - 1), y):
                    a3 = h3 if h3 >= 0 else -h3
                    if a1 + a2 + a3 >= y:
                        continue
                    _diff_mod64(f2, deg - 2, h3, f3)
                    neg = ((-h1 if h1 < 0 else 0) + (-h2 if h2 < 0 else 0)
                           + (-h3 if h3 < 0 else 0))
                    pos = ((h1 if h1 > 0 else 0) + (h2 if h2 > 0 else 0)
                           + (h3 if h3 > 0 else 0))
                    neum_add(&tot, &totc,
                             _poly_abs_sum(f3, deg - 3, x - y + neg, x - pos))
    return tot + totc
