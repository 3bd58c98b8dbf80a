"""Exact polynomial arithmetic and iterated finite differences.

Coefficients are exact big rationals throughout; floating/fixed point
enters only at phase evaluation (eval_phase).  The j-fold difference
operator is provided both recursively (repeated shift-and-subtract) and in
the closed multinomial form; the two must agree exactly, which the test
suite exercises as a property.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PrecisionExhausted, RangeError
from .numeric import DEFAULT_BITS, Mod1Fixed, RealAlpha, frac_mul, frac_mul_err

MAX_DEGREE = 32


def binom(r: int, i: int) -> int:
    """Exact binomial coefficient C(r, i) for 0 <= i <= r <= 64."""
    if not 0 <= i <= r <= 64:
        raise RangeError(f"binom needs 0 <= i <= r <= 64, got ({r}, {i})")
    return math.comb(r, i)


@dataclass(frozen=True)
class Polynomial:
    """Exact-coefficient polynomial; coeffs[d] is the degree-d coefficient."""

    coeffs: tuple[Fraction, ...]

    @classmethod
    def make(cls, coeffs: Sequence[Fraction | int]) -> "Polynomial":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        if len(cs) - 1 > MAX_DEGREE:
            raise RangeError(f"degree above {MAX_DEGREE} is not supported")
        return cls(tuple(cs))

    @classmethod
    def monomial(cls, degree: int, coeff: Fraction | int = 1) -> "Polynomial":
        return cls.make([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Highest nonzero index; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, d: int) -> Fraction:
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else Fraction(0)

    def __call__(self, u: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial.make([self.coeff(d) + other.coeff(d) for d in range(n)])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial.make([self.coeff(d) - other.coeff(d) for d in range(n)])

    def scale(self, c: Fraction | int) -> "Polynomial":
        return Polynomial.make([ci * c for ci in self.coeffs])

    def shift(self, h: int) -> "Polynomial":
        """The polynomial u -> f(u + h), expanded exactly."""
        out = [Fraction(0)] * len(self.coeffs)
        for r, a in enumerate(self.coeffs):
            if a == 0:
                continue
            hp = Fraction(1)
            for i in range(r, -1, -1):  # term a * C(r,i) h^(r-i) u^i
                out[i] += a * math.comb(r, i) * hp
                hp *= h
        return Polynomial.make(out)

    def strip_constant(self) -> "Polynomial":
        return Polynomial.make((Fraction(0),) + self.coeffs[1:])


@dataclass(frozen=True)
class ShiftVector:
    """Shift amounts h_1, ..., h_j for the iterated difference operator."""

    h: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.h) < 1:
            raise RangeError("need at least one shift")

    @classmethod
    def make(cls, values: Sequence[int]) -> "ShiftVector":
        return cls(tuple(int(v) for v in values))

    def __len__(self) -> int:
        return len(self.h)

    def __iter__(self):
        return iter(self.h)


def delta_recursive(f: Polynomial, h: ShiftVector) -> Polynomial:
    """Iterated difference: apply g -> g(u+h_i) - g(u) for each shift in turn."""
    if len(h) > f.degree:
        raise RangeError("more shifts than the polynomial degree")
    g = f
    for hi in h:
        g = g.shift(hi) - g
    return g


def delta_closed_form(f: Polynomial, h: ShiftVector) -> Polynomial:
    """The j-fold difference assembled from the nested multinomial sums.

    h_1...h_j times a sum over multi-indices (i_0, ..., i_j) with
    i_0 + ... + i_j <= s - j of

        a_{s-i_0} * prod_t C(s - (t-1) - i_0 - ... - i_{t-1}, i_t + 1)
                  * h_1^{i_1} ... h_j^{i_j} * u^{s - j - i_0 - ... - i_j}.

    Valid for 1 <= j <= s - 1; the constant term of f never enters (its
    difference is zero), matching delta_recursive exactly.
    """
    s = f.degree
    j = len(h)
    if not 1 <= j <= s - 1:
        raise RangeError("closed form needs 1 <= j <= degree - 1")
    hs = list(h)
    out = [Fraction(0)] * (s - j + 1)

    def descend(t: int, used: int, weight: Fraction) -> None:
        # t = 1..j indexes the shift whose exponent i_t is being chosen;
        # `used` is i_0 + ... + i_{t-1}.
        if t > j:
            out[s - j - used] += weight
            return
        for i_t in range(0, s - j - used + 1):
            c = math.comb(s - (t - 1) - used, i_t + 1)
            descend(t + 1, used + i_t, weight * c * Fraction(hs[t - 1]) ** i_t)

    for i0 in range(0, s - j + 1):
        a = f.coeff(s - i0)
        if a != 0:
            descend(1, i0, a)
    hprod = Fraction(1)
    for hi in hs:
        hprod *= hi
    return Polynomial.make([c * hprod for c in out])


def pair_difference_poly(n: int, m: int) -> Polynomial:
    """The degree-(n-1) polynomial f with m * f(u) = u^n - (u-m)^n exactly.

    Coefficient law: the degree-(n-i) coefficient is (-1)^(i-1) C(n,i) m^(i-1)
    for i = 1..n, including the degree-0 term (-1)^(n-1) m^(n-1), which the
    exact identity requires.
    """
    if n < 2 or m < 1:
        raise RangeError("need n >= 2 and m >= 1")
    coeffs = [Fraction(0)] * n
    for i in range(1, n + 1):
        coeffs[n - i] = Fraction((-1) ** (i - 1) * math.comb(n, i) * m ** (i - 1))
    return Polynomial.make(coeffs)


def eval_phase(
    alpha: RealAlpha,
    lower_coeffs: Sequence[RealAlpha],
    k: int,
    u: int,
    n: int,
    bits: int | None = None,
) -> Mod1Fixed:
    """{k * (alpha*u^n + c_{n-1} u^{n-1} + ... + c_1 u)} with certified error <= 2^-64.

    `lower_coeffs` lists c_1, ..., c_{n-1} by ascending degree (may be
    shorter; missing entries are zero).  Each monomial is reduced through
    frac_mul, so rational coefficients contribute exactly.
    """
    if k < 1 or u < 1 or n < 1:
        raise RangeError("need k >= 1, u >= 1, n >= 1")
    if len(lower_coeffs) > n - 1:
        raise RangeError("too many lower-order coefficients for the stated degree")
    p = bits if bits is not None else (alpha.bits if not alpha.is_rational else DEFAULT_BITS)
    total = Mod1Fixed.zero(p)
    err = 0.0
    for d, c in [(n, alpha)] + [
        (d, c) for d, c in enumerate(lower_coeffs, start=1) if c is not None
    ]:
        nd = k * u**d
        if c.is_rational:
            term = frac_mul(nd, c, bits=p)
            err += frac_mul_err(nd, c, bits=p)
        else:
            term = _as_bits(frac_mul(nd, c), p)
            err += frac_mul_err(nd, c)
            if c.frac.bits > p:
                err += math.ldexp(1.0, -p)  # truncation to the working width
        total = total.add(term)
    if err > 2.0**-64:
        raise PrecisionExhausted(f"combined certified phase error {err:.3g} exceeds 2^-64")
    return total


def eval_phase_err(
    alpha: RealAlpha,
    lower_coeffs: Sequence[RealAlpha],
    k: int,
    u: int,
    n: int,
    bits: int | None = None,
) -> float:
    """Certified error bound of eval_phase for the same arguments."""
    p = bits if bits is not None else (alpha.bits if not alpha.is_rational else DEFAULT_BITS)
    err = 0.0
    for d, c in [(n, alpha)] + [
        (d, c) for d, c in enumerate(lower_coeffs, start=1) if c is not None
    ]:
        nd = k * u**d
        if c.is_rational:
            err += frac_mul_err(nd, c, bits=p)
        else:
            err += frac_mul_err(nd, c)
            if c.frac.bits > p:
                err += math.ldexp(1.0, -p)
    return err


def _as_bits(t: Mod1Fixed, bits: int) -> Mod1Fixed:
    if t.bits == bits:
        return t
    if t.bits > bits:
        return Mod1Fixed(t.frac >> (t.bits - bits), bits)
    return Mod1Fixed(t.frac << (bits - t.bits), bits)
