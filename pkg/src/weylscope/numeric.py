"""Exact and high-precision arithmetic for phases modulo 1.

The workhorse type is :class:`Mod1Fixed`, an unsigned P-bit fixed-point
residue in [0, 1).  Default P = 192: a phase N*alpha with N up to ~2^110
still keeps more than 80 certified fractional bits, which covers every
desk-scale run without adaptive precision.

Rational coefficients are always reduced by exact modular arithmetic and
only *represented* in fixed point afterwards, so the rational path doubles
as a bit-exact oracle for the fixed-point path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import PrecisionExhausted, RangeError

DEFAULT_BITS = 192

#: hard ceiling on any certified phase error (spec of frac_mul / eval_phase)
PHASE_ERR_LIMIT = 2.0**-64

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Mod1Fixed:
    """A residue frac/2^bits in [0, 1); arithmetic wraps modulo 2^bits."""

    frac: int
    bits: int = DEFAULT_BITS

    def __post_init__(self) -> None:
        if self.bits < 8:
            raise RangeError(f"need at least 8 fraction bits, got {self.bits}")
        if not 0 <= self.frac < (1 << self.bits):
            raise RangeError("fixed-point residue out of range")

    @classmethod
    def zero(cls, bits: int = DEFAULT_BITS) -> "Mod1Fixed":
        return cls(0, bits)

    @classmethod
    def from_fraction(cls, value: Fraction, bits: int = DEFAULT_BITS) -> "Mod1Fixed":
        """Represent {value}; error < 2^-bits (floor of the true residue)."""
        num, den = value.numerator % value.denominator, value.denominator
        return cls((num << bits) // den, bits)

    @classmethod
    def from_float(cls, value: float, bits: int = DEFAULT_BITS) -> "Mod1Fixed":
        """Exact embedding of a float's fractional part (floats are dyadic)."""
        return cls.from_fraction(Fraction(value), bits)

    def add(self, other: "Mod1Fixed") -> "Mod1Fixed":
        self._check_bits(other)
        return Mod1Fixed((self.frac + other.frac) & ((1 << self.bits) - 1), self.bits)

    def mul_int(self, n: int) -> "Mod1Fixed":
        return Mod1Fixed((self.frac * n) & ((1 << self.bits) - 1), self.bits)

    def neg(self) -> "Mod1Fixed":
        """The residue of 1 - t (equivalently -t mod 1)."""
        return Mod1Fixed((-self.frac) & ((1 << self.bits) - 1), self.bits)

    def to_float(self) -> float:
        """Nearest-double conversion; error ~2^-54 relative to the residue."""
        if self.bits <= 64:
            return math.ldexp(self.frac, -self.bits)
        top = self.frac >> (self.bits - 64)
        rest = (self.frac >> max(0, self.bits - 128)) & ((1 << 64) - 1) if self.bits > 64 else 0
        return math.ldexp(top, -64) + math.ldexp(rest, -128)

    def _check_bits(self, other: "Mod1Fixed") -> None:
        if self.bits != other.bits:
            raise RangeError("mixed fixed-point widths")


@dataclass(frozen=True)
class RealAlpha:
    """A real coefficient: an exact rational or a certified fixed-point value.

    Rational variant: value = num/den with gcd(|num|, den) = 1, den > 0.
    Fixed variant: value = intpart + frac/2^P + delta with |delta| <= err
    and err <= 2^-P.
    """

    kind: str  # "rational" | "fixed"
    num: int = 0
    den: int = 1
    intpart: int = 0
    frac: Mod1Fixed = Mod1Fixed(0)
    err: float = 0.0

    @classmethod
    def from_rational(cls, num: int, den: int) -> "RealAlpha":
        if den == 0:
            raise RangeError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(abs(num), den)
        return cls(kind="rational", num=num // g, den=den // g)

    @classmethod
    def from_fraction(cls, value: Fraction) -> "RealAlpha":
        return cls.from_rational(value.numerator, value.denominator)

    @classmethod
    def from_fixed(cls, intpart: int, frac: Mod1Fixed, err: float) -> "RealAlpha":
        if err < 0 or err > math.ldexp(1.0, -frac.bits):
            raise RangeError("certified error must lie in [0, 2^-P]")
        return cls(kind="fixed", intpart=intpart, frac=frac, err=err)

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    @property
    def bits(self) -> int:
        return self.frac.bits if self.kind == "fixed" else DEFAULT_BITS

    def as_fraction(self) -> Fraction:
        """Exact value (rational) or the center of the certified interval."""
        if self.is_rational:
            return Fraction(self.num, self.den)
        return self.intpart + Fraction(self.frac.frac, 1 << self.frac.bits)

    def to_float(self) -> float:
        if self.is_rational:
            return self.num / self.den
        return self.intpart + self.frac.to_float()

    def interval(self) -> tuple[Fraction, Fraction]:
        """Certified enclosure [lo, hi] of the value."""
        c = self.as_fraction()
        if self.is_rational:
            return c, c
        e = Fraction(self.err)
        return c - e, c + e

    def describe(self) -> str:
        if self.is_rational:
            return f"{self.num}/{self.den}"
        return f"fixed({self.to_float():.15g}, P={self.frac.bits})"


def frac_mul(n: int, alpha: RealAlpha, bits: int | None = None) -> Mod1Fixed:
    """Fractional part {n * alpha} as a Mod1Fixed.

    Rational alpha: exact modular reduction (n*num mod den), then a single
    representation rounding < 2^-P.  Fixed alpha: the stored residue is
    scaled exactly mod 2^P, so the certified error is n * alpha.err; calls
    whose certified error would exceed 2^-64 are rejected.
    """
    if n < 0:
        raise RangeError("frac_mul requires n >= 0")
    if alpha.is_rational:
        p = bits if bits is not None else DEFAULT_BITS
        r = (n * alpha.num) % alpha.den
        return Mod1Fixed((r << p) // alpha.den, p)
    if bits is not None and bits != alpha.frac.bits:
        raise RangeError("fixed alpha has its own precision; do not override it")
    if n * alpha.err + math.ldexp(1.0, -alpha.frac.bits) > PHASE_ERR_LIMIT:
        raise PrecisionExhausted(
            f"certified phase error {n * alpha.err:.3g} exceeds 2^-64 (n={n})"
        )
    return alpha.frac.mul_int(n)


def frac_mul_err(n: int, alpha: RealAlpha, bits: int | None = None) -> float:
    """Certified error bound of frac_mul(n, alpha) against the true {n*alpha}."""
    if alpha.is_rational:
        return math.ldexp(1.0, -(bits if bits is not None else DEFAULT_BITS))
    return n * alpha.err + math.ldexp(1.0, -alpha.frac.bits)


def e_of(t: Mod1Fixed) -> complex:
    """The unit-modulus exponential exp(2*pi*i*t)."""
    theta = TWO_PI * t.to_float()
    return complex(math.cos(theta), math.sin(theta))


def dist_to_nearest_int(t: Mod1Fixed) -> float:
    """Distance from t to the nearest integer, in [0, 1/2].

    Computed at the fixed-point level (min of the residue and its
    complement) so that ||t|| == ||1-t|| holds exactly.
    """
    half = min(t.frac, ((1 << t.bits) - t.frac) & ((1 << t.bits) - 1))
    return Mod1Fixed(half, t.bits).to_float() if half else 0.0


class ComplexAcc:
    """Neumaier-compensated complex accumulator for unit-modulus terms.

    Single-owner: accumulate sequentially, then merge partial accumulators
    in a fixed order for deterministic parallel reductions.  The absolute
    error after n terms is O(n * machine epsilon).
    """

    __slots__ = ("re", "im", "c_re", "c_im", "count")

    def __init__(self) -> None:
        self.re = 0.0
        self.im = 0.0
        self.c_re = 0.0
        self.c_im = 0.0
        self.count = 0

    def add(self, z: complex) -> None:
        self.re, self.c_re = _neumaier_step(self.re, self.c_re, z.real)
        self.im, self.c_im = _neumaier_step(self.im, self.c_im, z.imag)
        self.count += 1

    def merge(self, other: "ComplexAcc") -> None:
        self.re, self.c_re = _neumaier_step(self.re, self.c_re, other.re)
        self.re, self.c_re = _neumaier_step(self.re, self.c_re, other.c_re)
        self.im, self.c_im = _neumaier_step(self.im, self.c_im, other.im)
        self.im, self.c_im = _neumaier_step(self.im, self.c_im, other.c_im)
        self.count += other.count

    def value(self) -> complex:
        return complex(self.re + self.c_re, self.im + self.c_im)


def _neumaier_step(total: float, comp: float, x: float) -> tuple[float, float]:
    t = total + x
    if abs(total) >= abs(x):
        comp += (total - t) + x
    else:
        comp += (x - t) + total
    return t, comp


def compensated_sum(terms: Iterable[complex]) -> complex:
    """Sum a stream of complex terms with Neumaier compensation.

    Deterministic for a fixed input order; for unit-modulus terms the
    result differs from the exact sum by O(count * machine epsilon).
    """
    acc = ComplexAcc()
    for z in terms:
        acc.add(z)
    return acc.value()


def kahan_sum(values: Iterable[float]) -> float:
    """Neumaier-compensated real sum (deterministic for a fixed order)."""
    total = 0.0
    comp = 0.0
    for x in values:
        total, comp = _neumaier_step(total, comp, x)
    return total + comp


def phase_bound_check(err: float) -> None:
    """Reject a combined certified phase error above 2^-64."""
    if err > PHASE_ERR_LIMIT:
        raise PrecisionExhausted(f"certified phase error {err:.3g} exceeds 2^-64")


def mod1_to_limbs(t: Mod1Fixed) -> tuple[int, int, int]:
    """Top 192 bits of t as three little-endian 64-bit limbs (kernel format)."""
    f = t.frac
    if t.bits >= 192:
        f >>= t.bits - 192
    else:
        f <<= 192 - t.bits
    mask = (1 << 64) - 1
    return (f & mask, (f >> 64) & mask, (f >> 128) & mask)


def phases_to_limb_array(phases: Sequence[Mod1Fixed]):
    """Pack phases into an (n, 3) uint64 array for the kernels."""
    import numpy as np

    out = np.empty((len(phases), 3), dtype=np.uint64)
    for i, t in enumerate(phases):
        out[i, 0], out[i, 1], out[i, 2] = mod1_to_limbs(t)
    return out
