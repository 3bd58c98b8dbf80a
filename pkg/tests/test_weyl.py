import cmath
import math
import random
from fractions import Fraction

import pytest

from weylscope.errors import RangeError
from weylscope.numeric import Mod1Fixed, RealAlpha, frac_mul
from weylscope.polyops import Polynomial, ShiftVector, eval_phase
from weylscope.presets import preset_alpha, preset_frac_512
from weylscope.primes import count_primes, sieve_window
from weylscope.weyl import (
    Interval,
    abs_ksum,
    lemma2_check,
    prime_weyl_sum,
    proof_chain,
    v_sum,
    v_sum_per_k,
    weyl_interval,
    weyl_sum_integers,
)


def e_unit(t) -> complex:
    return cmath.exp(2j * math.pi * float(t))


class TestWeylInterval:
    def test_zero_shift(self):
        iv = weyl_interval(100, 10, ShiftVector.make([0]))
        assert (iv.lo, iv.hi) == (90, 100)

    def test_positive_shift(self):
        iv = weyl_interval(100, 10, ShiftVector.make([3]))
        assert (iv.lo, iv.hi) == (90, 97)

    def test_mixed_shifts(self):
        iv = weyl_interval(100, 10, ShiftVector.make([3, -2]))
        assert (iv.lo, iv.hi) == (92, 97)

    def test_empty_allowed(self):
        iv = weyl_interval(100, 10, ShiftVector.make([8, -7]))
        assert iv.length == 0

    def test_defining_recursion(self):
        rng = random.Random(0)
        for _ in range(200):
            x = rng.randint(50, 500)
            y = rng.randint(2, min(x, 60))
            j = rng.randint(1, 4)
            hs = [rng.randint(-y, y) for _ in range(j)]
            prev = weyl_interval(x, y, ShiftVector.make(hs[:1]))
            base = Interval(x - y, x)
            assert prev == base.intersect(base.shifted(-hs[0]))
            for depth in range(2, j + 1):
                cur = weyl_interval(x, y, ShiftVector.make(hs[:depth]))
                assert cur == prev.intersect(prev.shifted(-hs[depth - 1]))
                assert cur.length <= prev.length
                prev = cur

    def test_length_bounded_by_y(self):
        rng = random.Random(1)
        for _ in range(100):
            x, y = rng.randint(20, 400), rng.randint(1, 19)
            hs = [rng.randint(-5, 5) for _ in range(rng.randint(1, 3))]
            assert weyl_interval(x, y, ShiftVector.make(hs)).length <= y


class TestWeylSumIntegers:
    def test_constant_phase(self):
        val = weyl_sum_integers(lambda u: Mod1Fixed.zero(), Interval(90, 100))
        assert abs(val - 10) < 1e-12

    def test_alternating(self):
        phase = lambda u: Mod1Fixed.from_fraction(Fraction(u, 2))  # noqa: E731
        val = weyl_sum_integers(phase, Interval(0, 4))
        assert abs(val) < 1e-12

    def test_golden_square_against_512bit_oracle(self):
        alpha = preset_alpha("golden")
        _, frac512 = preset_frac_512("golden")
        phase = lambda u: eval_phase(alpha, [], 1, u, 2)  # noqa: E731
        got = weyl_sum_integers(phase, Interval(10**4 - 100, 10**4))
        want = 0j
        for u in range(10**4 - 99, 10**4 + 1):
            r = (u * u * frac512) % (1 << 512)
            want += e_unit(r / (1 << 512))
        assert abs(got - want) < 1e-9
        assert abs(got) <= 100


class TestPrimeWeylSum:
    def test_zero_coefficients(self):
        w = sieve_window(100, 100)
        val = prime_weyl_sum(RealAlpha.from_rational(0, 1), [], 2, 1, w)
        assert abs(val - count_primes(w)) < 1e-12

    def test_half_linear(self):
        w = sieve_window(10, 10)
        val = prime_weyl_sum(RealAlpha.from_rational(1, 2), [], 1, 1, w)
        assert abs(val - (-2)) < 1e-12  # e(1)+e(3/2)+e(5/2)+e(7/2)

    def test_brute_force_oracle(self):
        alpha = preset_alpha("golden")
        w = sieve_window(10**5, 10**3)
        got = prime_weyl_sum(alpha, [], 2, 3, w)
        want = sum(e_unit((3 * Fraction(alpha.as_fraction()) * p * p) % 1)
                   for p in map(int, w.positions()))
        assert abs(got - want) < 1e-6
        assert abs(got) <= count_primes(w)


class TestVSum:
    def test_alpha_zero(self):
        w = sieve_window(1000, 100)
        got = v_sum(7, RealAlpha.from_rational(0, 1), [], 2, w)
        assert abs(got - 7 * count_primes(w)) < 1e-9

    def test_k1_matches_single_sum(self):
        alpha = preset_alpha("sqrt2")
        w = sieve_window(2000, 150)
        got = v_sum(1, alpha, [], 3, w)
        want = abs(prime_weyl_sum(alpha, [], 3, 1, w))
        assert abs(got - want) < 1e-9

    def test_brute_force_oracle(self):
        alpha = preset_alpha("golden")
        w = sieve_window(10**4, 500)
        got = v_sum(10, alpha, [], 2, w)
        af = Fraction(alpha.as_fraction())
        want = 0.0
        for k in range(1, 11):
            s = sum(e_unit((k * af * p * p) % 1) for p in map(int, w.positions()))
            want += abs(s)
        assert abs(got - want) < 1e-6

    def test_monotone_in_k(self):
        alpha = preset_alpha("pi")
        w = sieve_window(3000, 200)
        per_k = v_sum_per_k(25, alpha, [], 2, w)
        partial = 0.0
        prev = 0.0
        for k in range(25):
            partial += per_k[k]
            assert partial >= prev
            prev = partial

    def test_threads_byte_identical(self):
        alpha = preset_alpha("golden")
        w = sieve_window(10**5, 10**4)
        a = v_sum(40, alpha, [], 3, w, threads=1)
        b = v_sum(40, alpha, [], 3, w, threads=4)
        assert a == b

    def test_bound(self):
        alpha = preset_alpha("e")
        w = sieve_window(5000, 300)
        assert 0 <= v_sum(15, alpha, [], 2, w) <= 15 * count_primes(w)


class TestAbsKsum:
    def test_against_direct_summation(self):
        rng = random.Random(2)
        for _ in range(300):
            t = Mod1Fixed(rng.getrandbits(192), 192)
            big_k = rng.randint(1, 60)
            want = abs(sum(e_unit(Fraction(t.frac * k % (1 << 192), 1 << 192))
                           for k in range(1, big_k + 1)))
            assert abs(abs_ksum(t, big_k) - want) < 1e-8

    def test_integer_phase(self):
        assert abs_ksum(Mod1Fixed.zero(), 17) == 17.0


class TestLemma2Check:
    def test_golden_square(self):
        f = Polynomial.make([0, 0, preset_alpha("golden").as_fraction()])
        res = lemma2_check(f, 50, 10, 1)
        assert res.passed

    def test_zero_polynomial_equality_case(self):
        res = lemma2_check(Polynomial.make([]), 40, 8, 1)
        assert res.passed
        assert res.lhs == pytest.approx(8.0**2, rel=1e-12)
        assert res.lhs <= res.rhs * (1 + 1e-9)
        # j = 1 on the zero phase is the Cauchy equality case
        assert res.rhs == pytest.approx(res.lhs, rel=1e-9)

    def test_zero_polynomial_deeper(self):
        for j in (2, 3):
            res = lemma2_check(Polynomial.make([]), 30, 6, j)
            assert res.passed

    def test_non_dyadic_exact_path(self):
        f = Polynomial.make([0, Fraction(1, 3), Fraction(2, 7)])
        res = lemma2_check(f, 40, 12, 1)
        assert res.passed
        # cross-check the exact-rational path against the dyadic kernel on
        # a dyadic polynomial
        g = Polynomial.make([0, Fraction(1, 4), Fraction(3, 8)])
        from weylscope.weyl import _lemma2_sides_exact

        lhs_e, rhs_e = _lemma2_sides_exact(g, 40, 12, 1)
        res_k = lemma2_check(g, 40, 12, 1)
        assert res_k.lhs == pytest.approx(lhs_e**2, rel=1e-10)
        assert res_k.rhs == pytest.approx(float(24) ** 0 * rhs_e, rel=1e-10)

    def test_cost_caps(self):
        f = Polynomial.make([0, 0, 0, 0, 0, Fraction(1, 2)])
        with pytest.raises(RangeError):
            lemma2_check(f, 500, 300, 1)
        with pytest.raises(RangeError):
            lemma2_check(f, 500, 50, 4)
        with pytest.raises(RangeError):
            lemma2_check(Polynomial.make([0, 0, 1]), 50, 10, 2)  # j > deg-1


class TestProofChain:
    def test_example_n2_golden(self):
        rep = proof_chain(10, 2000, 100, 2, preset_alpha("golden"))
        assert rep.all_passed()
        asserted = [c for c in rep.checks if c.passed is not None]
        assert len(asserted) == 7  # C7/C8 skipped for n=2
        assert rep.W3 == rep.W4

    def test_example_n3_rational(self):
        rep = proof_chain(20, 5000, 50, 3, RealAlpha.from_rational(355, 113))
        assert rep.all_passed()
        assert len(rep.checks) == 9
        assert all(c.passed for c in rep.checks)

    def test_alpha_zero_degenerate(self):
        rep = proof_chain(10, 2000, 100, 2, RealAlpha.from_rational(0, 1))
        assert rep.all_passed()
        assert rep.V == pytest.approx(10 * rep.pi_w, rel=1e-12)
        c1 = rep.checks[0]
        assert c1.lhs == pytest.approx(c1.rhs, rel=1e-9)  # Cauchy equality

    def test_check_records_satisfy_slack_invariant(self):
        rep = proof_chain(15, 1500, 60, 3, preset_alpha("sqrt2"))
        for c in rep.checks:
            if c.passed is not None:
                assert c.passed == (c.lhs <= c.rhs * (1 + 1e-9) or abs(c.lhs - c.rhs) < 1e-6)

    def test_thread_determinism(self):
        alpha = preset_alpha("golden")
        a = proof_chain(10, 1000, 50, 3, alpha, threads=1)
        b = proof_chain(10, 1000, 50, 3, alpha, threads=3)
        assert a.V == b.V and a.W1 == b.W1 and a.W2 == b.W2
        assert a.W3 == b.W3 and a.W4 == b.W4
        assert [(c.lhs, c.rhs) for c in a.checks] == [(c.lhs, c.rhs) for c in b.checks]

    def test_cost_caps(self):
        alpha = preset_alpha("golden")
        with pytest.raises(RangeError):
            proof_chain(1000, 10**6, 10**5, 4, alpha)
        with pytest.raises(RangeError):
            proof_chain(10, 10**16, 10, 4, alpha)
        with pytest.raises(RangeError):
            proof_chain(10, 100, 10, 1, alpha)

    def test_report_dict_shape(self):
        rep = proof_chain(5, 500, 30, 2, preset_alpha("e"))
        d = rep.to_dict()
        assert set(d) >= {"V", "W1", "W2", "W3", "W4", "checks", "params", "ratio"}
        assert len(d["checks"]) == 9
