"""Seeded randomized verification suites, shared by the CLI and the tests."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .bounds import lemma4_check
from .diophantine import Convergent
from .numeric import DEFAULT_BITS, Mod1Fixed, RealAlpha
from .polyops import Polynomial, ShiftVector, delta_closed_form, delta_recursive
from .weyl import lemma2_check


def random_int_polynomial(rng: random.Random, max_deg: int = 7) -> Polynomial:
    """Integer-coefficient polynomial, degree 2..max_deg, coefficients in [-9, 9]."""
    deg = rng.randint(2, max_deg)
    coeffs = [rng.randint(-9, 9) for _ in range(deg)]
    lead = 0
    while lead == 0:
        lead = rng.randint(-9, 9)
    return Polynomial.make(coeffs + [lead])


def lemma1_suite(count: int = 200, seed: int = 0) -> dict:
    """Exact equality of the closed-form and recursive j-fold differences.

    Each polynomial is checked at every valid depth j = 1..degree-1 with
    fresh shifts in [-5, 5]; equality is exact rational equality.
    """
    rng = random.Random(seed)
    checked = failures = 0
    for _ in range(count):
        f = random_int_polynomial(rng)
        for j in range(1, f.degree):
            h = ShiftVector.make([rng.randint(-5, 5) for _ in range(j)])
            closed = delta_closed_form(f, h)
            recursive = delta_recursive(f - Polynomial.make([f(0)]), h)
            checked += 1
            if closed != recursive:
                failures += 1
    return {"instances": count, "checks": checked, "failures": failures,
            "pass": failures == 0, "seed": seed}


def random_dyadic_polynomial(rng: random.Random, deg: int) -> Polynomial:
    """Coefficients uniform in [0, 1) at 64 dyadic bits, nonzero leading term."""
    coeffs = [Fraction(rng.getrandbits(64), 1 << 64) for _ in range(deg)]
    lead = Fraction(0)
    while lead == 0:
        lead = Fraction(rng.getrandbits(64), 1 << 64)
    return Polynomial.make(coeffs + [lead])


def lemma2_suite(count: int = 50, seed: int = 0) -> dict:
    """Randomized differencing-inequality instances (x <= 500, y <= 100)."""
    rng = random.Random(seed)
    failures = 0
    worst = 0.0
    for _ in range(count):
        deg = rng.randint(2, 4)
        j = rng.randint(1, min(3, deg - 1))
        y = rng.randint(2, 100)
        x = rng.randint(y, 500)
        f = random_dyadic_polynomial(rng, deg)
        res = lemma2_check(f, x, y, j)
        if not res.passed:
            failures += 1
        if res.rhs > 0:
            worst = max(worst, res.lhs / res.rhs)
    return {"instances": count, "failures": failures, "pass": failures == 0,
            "worst_ratio": worst, "seed": seed}


def lemma4_suite(count: int = 100, seed: int = 0) -> dict:
    """Randomized explicit-constant minimum-sum bound instances (q <= 500)."""
    rng = random.Random(seed)
    failures = 0
    worst = 0.0
    for _ in range(count):
        q = rng.randint(1, 500)
        a = rng.randint(1, 3 * q)
        while math.gcd(a, q) != 1:
            a = rng.randint(1, 3 * q)
        alpha = RealAlpha.from_rational(a, q)
        beta = Mod1Fixed(rng.getrandbits(DEFAULT_BITS), DEFAULT_BITS)
        x = rng.randint(1, 5000)
        y = rng.uniform(1.0, 1000.0)
        conv = Convergent(a=a, q=q, theta=0.0)
        rep = lemma4_check(conv, alpha, beta, x, y)
        if not rep.passed:
            failures += 1
        worst = max(worst, rep.ratio)
    return {"instances": count, "failures": failures, "pass": failures == 0,
            "worst_ratio": worst, "seed": seed}
