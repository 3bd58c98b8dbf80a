"""Continued-fraction convergents a/q with alpha = a/q + theta/q^2, |theta| <= 1.

For fixed-point alpha the partial quotients are extracted from a certified
enclosure [lo, hi]: a digit is emitted only while floor(lo) == floor(hi),
so no uncertified convergent is ever returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PrecisionExhausted, RangeError
from .numeric import RealAlpha


@dataclass(frozen=True)
class Convergent:
    """Rational approximation a/q with theta = q*(q*alpha - a), |theta| <= 1."""

    a: int
    q: int
    theta: float

    def as_fraction(self) -> Fraction:
        return Fraction(self.a, self.q)


def _floor(v: Fraction) -> int:
    return v.numerator // v.denominator


def continued_fraction(alpha: RealAlpha, q_max: int) -> list[Convergent]:
    """All continued-fraction convergents with q <= q_max, in emission order.

    Each returned convergent satisfies |alpha - a/q| <= 1/q^2 (checked
    internally).  Raises PrecisionExhausted if a fixed-point alpha's
    enclosure is too wide to certify every convergent up to q_max.
    """
    if q_max < 1:
        raise RangeError("q_max must be >= 1")
    lo, hi = alpha.interval()
    if alpha.kind == "fixed" and Fraction(alpha.err) >= Fraction(1, 2 * q_max * q_max):
        raise PrecisionExhausted(
            "alpha's certified error is too large for convergents up to q_max"
        )
    center = alpha.as_fraction()
    out: list[Convergent] = []
    p_prev, q_prev = 1, 0
    p_cur, q_cur = 0, 1  # overwritten by the zeroth digit
    first = True
    while True:
        flo, fhi = _floor(lo), _floor(hi)
        if flo != fhi:
            # Digit uncertain.  After the zeroth digit every partial quotient
            # is >= 1, so the smallest possible next denominator is known; if
            # even that exceeds q_max nothing certifiable was lost.
            if not first and max(min(flo, fhi), 1) * q_cur + q_prev > q_max:
                break
            raise PrecisionExhausted("cannot certify the next partial quotient")
        a = flo
        if first:
            p_cur, q_cur = a, 1
            first = False
        else:
            p_cur, p_prev = a * p_cur + p_prev, p_cur
            q_cur, q_prev = a * q_cur + q_prev, q_cur
        if q_cur > q_max:
            break
        theta_frac = q_cur * (q_cur * center - p_cur)
        if abs(center - Fraction(p_cur, q_cur)) > Fraction(1, q_cur * q_cur):
            raise AssertionError("convergent failed its own approximation bound")
        out.append(Convergent(a=p_cur, q=q_cur, theta=float(theta_frac)))
        lo_rem, hi_rem = lo - a, hi - a
        if lo_rem == 0 and hi_rem == 0:
            break  # exact rational, expansion terminated
        if lo_rem <= 0:
            if alpha.is_rational:
                break
            raise PrecisionExhausted("enclosure straddles a rational point")
        lo, hi = 1 / hi_rem, 1 / lo_rem
    return out


def verify_approx(c: Convergent, alpha: RealAlpha) -> bool:
    """True iff |alpha - a/q| <= 1/q^2 within the certified error."""
    if c.q < 1:
        return False
    center = alpha.as_fraction()
    err = Fraction(alpha.err) if alpha.kind == "fixed" else Fraction(0)
    return abs(center - Fraction(c.a, c.q)) <= Fraction(1, c.q * c.q) + err


def best_q_in_range(alpha: RealAlpha, q_min: int, q_max: int) -> Convergent | None:
    """The convergent with the smallest q in [q_min, q_max], or None."""
    if not 1 <= q_min <= q_max:
        raise RangeError("need 1 <= q_min <= q_max")
    for c in continued_fraction(alpha, q_max):
        if c.q >= q_min:
            return c
    return None
