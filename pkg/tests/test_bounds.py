import itertools
import math
import random
from fractions import Fraction

import pytest

from weylscope.bounds import (
    corollary_regime,
    lemma3_check,
    lemma4_check,
    minsum,
    reference_bounds,
    tau_r,
    tau_r_sieve,
    theorem_bound,
)
from weylscope.diophantine import Convergent
from weylscope.errors import ApproximationError, PrecisionExhausted, RangeError
from weylscope.numeric import DEFAULT_BITS, Mod1Fixed, RealAlpha
from weylscope.presets import preset_alpha
from weylscope.suites import lemma4_suite


def tau_brute(h: int, r: int) -> int:
    count = 0
    for combo in itertools.product(range(1, h + 1), repeat=r - 1):
        prod = math.prod(combo)
        if h % prod == 0:
            count += 1
    return count


class TestTauR:
    def test_examples(self):
        assert tau_r(6, 2) == 4
        assert tau_r(1, 3) == 1
        assert tau_r(4, 3) == 6

    def test_brute_force(self):
        for h in range(1, 30):
            for r in (2, 3):
                assert tau_r(h, r) == tau_brute(h, r)

    def test_multiplicative(self):
        rng = random.Random(0)
        for _ in range(150):
            a, b = rng.randint(1, 1000), rng.randint(1, 1000)
            if math.gcd(a, b) != 1:
                continue
            for r in (2, 3, 4):
                assert tau_r(a * b, r) == tau_r(a, r) * tau_r(b, r)

    def test_prime_value(self):
        for p in (2, 3, 5, 97, 104729):
            for r in range(2, 7):
                assert tau_r(p, r) == r

    def test_large_argument(self):
        assert tau_r(2**40, 2) == 41

    def test_range(self):
        with pytest.raises(RangeError):
            tau_r(5, 7)
        with pytest.raises(RangeError):
            tau_r(0, 2)

    def test_sieve_matches_factorization(self):
        for r in (2, 3):
            sieve = tau_r_sieve(400, r)
            for h in range(1, 401):
                assert sieve[h] == tau_r(h, r)


class TestLemma3:
    def test_small_sum(self):
        rep = lemma3_check(10, 2, 1)
        assert rep.lhs == 27  # 1+2+2+3+2+4+2+4+3+4

    def test_unit(self):
        assert lemma3_check(1, 2, 1).lhs == 1

    def test_ratio_below_one_at_scale(self):
        rep = lemma3_check(10**5, 2, 2)
        assert rep.ratio < 1
        assert rep.passed is None  # implied constant: report-only

    def test_range(self):
        with pytest.raises(RangeError):
            lemma3_check(10**7, 2, 1)
        with pytest.raises(RangeError):
            lemma3_check(100, 4, 1)


class TestMinsum:
    def test_half(self):
        got = minsum(RealAlpha.from_rational(1, 2), Mod1Fixed.zero(), 4, 10.0)
        assert got == pytest.approx(24.0)  # 2 + 10 + 2 + 10

    def test_zero_alpha(self):
        beta = Mod1Fixed.from_fraction(Fraction(1, 2))
        got = minsum(RealAlpha.from_rational(0, 1), beta, 5, 100.0)
        assert got == pytest.approx(10.0)

    def test_brute_force_oracle(self):
        alpha = preset_alpha("golden")
        got = minsum(alpha, Mod1Fixed.zero(alpha.frac.bits), 100, 50.0)
        want = 0.0
        for h in range(1, 101):
            d = (Fraction(alpha.as_fraction()) * h) % 1
            d = float(min(d, 1 - d))
            want += min(50.0, 1.0 / d)
        assert got == pytest.approx(want, abs=1e-6)

    def test_monotone_in_x_and_y(self):
        alpha = RealAlpha.from_rational(7, 23)
        beta = Mod1Fixed.from_fraction(Fraction(1, 5))
        prev = 0.0
        for x in (10, 20, 40, 80):
            cur = minsum(alpha, beta, x, 30.0)
            assert cur >= prev
            prev = cur
        assert minsum(alpha, beta, 50, 10.0) <= minsum(alpha, beta, 50, 20.0)

    def test_precision_exhausted_near_zero(self):
        # alpha ~ 1/3 with coarse certification: h=3 lands within the error
        coarse = RealAlpha.from_fixed(
            0, Mod1Fixed.from_fraction(Fraction(1, 3), 48), 2.0**-48
        )
        with pytest.raises(PrecisionExhausted):
            minsum(coarse, Mod1Fixed.zero(48), 10, 5.0)


class TestLemma4:
    def test_arithmetic_example(self):
        alpha = RealAlpha.from_rational(1, 2)
        rep = lemma4_check(Convergent(1, 2, 0.0), alpha, Mod1Fixed.zero(), 4, 10.0)
        assert rep.lhs == pytest.approx(24.0)
        assert rep.rhs == pytest.approx(6 * 3 * (10 + 2 * math.log(2)))
        assert rep.passed

    def test_q1_integer_alpha(self):
        alpha = RealAlpha.from_rational(5, 1)
        beta = Mod1Fixed.from_fraction(Fraction(1, 3))
        x, y = 50, 7.0
        rep = lemma4_check(Convergent(5, 1, 0.0), alpha, beta, x, y)
        assert rep.lhs == pytest.approx(x * 3.0)
        assert rep.rhs == pytest.approx(6 * (x + 1) * y)
        assert rep.passed

    def test_bad_approximation_rejected(self):
        alpha = preset_alpha("golden")
        with pytest.raises(ApproximationError):
            lemma4_check(Convergent(1, 2, 0.0), alpha, Mod1Fixed.zero(alpha.frac.bits), 10, 5.0)

    def test_randomized_suite(self):
        rep = lemma4_suite(100, seed=0)
        assert rep["pass"]
        assert rep["worst_ratio"] <= 1.0


class TestTheoremBound:
    def test_hand_formula(self):
        big_k, x, y, n, q = 100, 10**6, 10**4, 2, 10**3
        got = theorem_bound(big_k, x, y, n, q)
        bracket = 1 / q + 1 / y + q / (big_k * y**n) + big_k ** -(2 ** (n - 1))
        want = big_k * y * bracket ** (1 / 2 ** (n + 1)) * math.log(x) ** (n**2 / 2 ** (n + 1))
        assert got == pytest.approx(want, rel=1e-12)

    def test_bracket_term_monotone_in_k(self):
        # each K-dependent bracket term is nonincreasing in K
        for n in (2, 3, 4):
            prev = None
            for big_k in (1, 2, 5, 10, 100, 1000):
                terms = (1 / big_k / 10.0**n, big_k ** -(2 ** (n - 1)))
                if prev is not None:
                    assert all(t <= p + 1e-18 for t, p in zip(terms, prev))
                prev = terms

    def test_q_scan_dips_then_rises(self):
        big_k, x, y, n = 100, 10**6, 10**4, 2
        vals = [theorem_bound(big_k, x, y, n, q) for q in (1, 10, 100, 10**3, 10**5, 10**6, 10**7)]
        low = vals.index(min(vals))
        assert 0 < low < len(vals) - 1
        assert vals[0] > vals[low] < vals[-1]

    def test_range(self):
        with pytest.raises(RangeError):
            theorem_bound(10, 100, 100, 2, 1)


class TestCorollaryRegime:
    def test_explicit_evaluation(self):
        x = round(math.exp(10))
        in_regime, predicted = corollary_regime(10**9, x, 10**9, 2, 10**9, 2.0)
        assert not in_regime  # q threshold is 10^20-ish, q = 1e9 fails
        assert predicted == pytest.approx(10**9 * 10**9 * math.log(x) ** -2.0)

    def test_q_below_threshold(self):
        assert not corollary_regime(10**6, 10**6, 10**6, 2, 1, 2.0)[0]

    def test_regime_reachable(self):
        # tiny log makes the thresholds easy to clear
        x = 3
        ok, _ = corollary_regime(10**6, x, 10**6, 2, 10**3, 2.0)
        assert ok

    def test_range(self):
        with pytest.raises(RangeError):
            corollary_regime(10, 100, 10, 2, 5, 1.0)


class TestReferenceBounds:
    def test_q_equals_x(self):
        x = 10**4
        got = reference_bounds(10, x, x, 0.0)
        assert got == pytest.approx(10 * x * (math.sqrt(1 / x + 1) + x**-0.2))

    def test_eps_zero(self):
        got = reference_bounds(5, 10**4, 100, 0.0)
        want = 5 * 10**4 * (math.sqrt(1 / 100 + 100 / 10**4) + (10**4) ** -0.2)
        assert got == pytest.approx(want, rel=1e-12)

    def test_second_implementation(self):
        big_k, x, q, eps = 10**3, 10**6, 10**3, 0.01
        got = reference_bounds(big_k, x, q, eps)
        want = big_k * math.exp((1 + eps) * math.log(x)) * (
            math.sqrt(1.0 / q + q / x) + math.exp(-0.2 * math.log(x))
        )
        assert got == pytest.approx(want, rel=1e-12)
