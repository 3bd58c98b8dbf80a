from fractions import Fraction

import pytest

from weylscope.diophantine import best_q_in_range, continued_fraction, verify_approx
from weylscope.errors import PrecisionExhausted, RangeError
from weylscope.numeric import Mod1Fixed, RealAlpha
from weylscope.presets import preset_alpha


def qs(convs):
    return [(c.a, c.q) for c in convs]


class TestContinuedFraction:
    def test_rational_terminates(self):
        convs = continued_fraction(RealAlpha.from_rational(22, 7), 100)
        assert qs(convs)[-1] == (22, 7)
        assert convs[-1].theta == 0.0

    def test_golden_fibonacci(self):
        convs = continued_fraction(preset_alpha("golden"), 6)
        assert qs(convs) == [(1, 1), (2, 1), (3, 2), (5, 3), (8, 5)]

    def test_sqrt2(self):
        convs = continued_fraction(preset_alpha("sqrt2"), 15)
        assert qs(convs) == [(1, 1), (3, 2), (7, 5), (17, 12)]

    def test_every_convergent_verifies(self):
        for name in ("golden", "sqrt2", "e", "pi"):
            alpha = preset_alpha(name)
            for c in continued_fraction(alpha, 10**6):
                assert verify_approx(c, alpha)
                assert abs(c.theta) <= 1.0 + 1e-12

    def test_determinant_identity(self):
        convs = continued_fraction(preset_alpha("pi"), 10**9)
        for prev, cur in zip(convs, convs[1:]):
            assert cur.a * prev.q - prev.a * cur.q in (-1, 1)

    def test_q_nondecreasing_then_strict(self):
        convs = continued_fraction(preset_alpha("e"), 10**6)
        denoms = [c.q for c in convs]
        assert all(b >= a for a, b in zip(denoms, denoms[1:]))
        assert all(b > a for a, b in zip(denoms[1:], denoms[2:]))

    def test_negative_alpha(self):
        convs = continued_fraction(RealAlpha.from_rational(-7, 3), 10)
        assert convs[-1].as_fraction() == Fraction(-7, 3)

    def test_precision_exhausted_on_wide_enclosure(self):
        coarse = RealAlpha.from_fixed(0, Mod1Fixed.from_fraction(Fraction(1, 3), 32), 2.0**-32)
        with pytest.raises(PrecisionExhausted):
            continued_fraction(coarse, 10**6)

    def test_q_max_validation(self):
        with pytest.raises(RangeError):
            continued_fraction(preset_alpha("golden"), 0)


class TestVerifyApprox:
    def test_golden_one_over_one(self):
        from weylscope.diophantine import Convergent

        alpha = preset_alpha("golden")
        assert verify_approx(Convergent(1, 1, 0.0), alpha)
        assert verify_approx(Convergent(2, 1, 0.0), alpha)
        assert not verify_approx(Convergent(1, 2, 0.0), alpha)


class TestBestQInRange:
    def test_golden_examples(self):
        alpha = preset_alpha("golden")
        best = best_q_in_range(alpha, 3, 10)
        assert (best.a, best.q) == (5, 3)
        assert best_q_in_range(alpha, 4, 4) is None

    def test_exact_rational(self):
        best = best_q_in_range(RealAlpha.from_rational(22, 7), 7, 7)
        assert (best.a, best.q) == (22, 7)

    def test_range_validation(self):
        with pytest.raises(RangeError):
            best_q_in_range(preset_alpha("golden"), 5, 3)
