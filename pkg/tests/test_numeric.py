import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weylscope.errors import PrecisionExhausted, RangeError
from weylscope.numeric import (
    ComplexAcc,
    Mod1Fixed,
    RealAlpha,
    compensated_sum,
    dist_to_nearest_int,
    e_of,
    frac_mul,
    kahan_sum,
    mod1_to_limbs,
)
from weylscope.presets import preset_alpha, preset_frac_512


def mk(frac: Fraction, bits: int = 192) -> Mod1Fixed:
    return Mod1Fixed.from_fraction(frac, bits)


class TestEOf:
    def test_zero(self):
        assert e_of(mk(Fraction(0))) == 1 + 0j

    def test_half(self):
        z = e_of(mk(Fraction(1, 2)))
        assert abs(z - (-1 + 0j)) < 1e-12

    def test_quarter(self):
        z = e_of(mk(Fraction(1, 4)))
        assert abs(z - 1j) < 1e-12

    def test_unit_modulus(self):
        rng = random.Random(1)
        for _ in range(200):
            t = Mod1Fixed(rng.getrandbits(192), 192)
            assert abs(abs(e_of(t)) - 1.0) < 1e-12

    def test_conjugate_symmetry(self):
        rng = random.Random(2)
        for _ in range(300):
            t = Mod1Fixed(rng.getrandbits(192), 192)
            assert abs(e_of(t) * e_of(t.neg()) - 1.0) < 1e-11


class TestFracMul:
    def test_exact_integer_product(self):
        assert frac_mul(3, RealAlpha.from_rational(1, 3)).frac == 0

    def test_residue_two_thirds(self):
        t = frac_mul(5, RealAlpha.from_rational(1, 3))
        assert t.frac == (2 << 192) // 3

    def test_against_512bit_oracle(self):
        # {N * golden} at P=192 versus direct 512-bit integer arithmetic
        alpha = preset_alpha("golden")
        _, frac512 = preset_frac_512("golden")
        n = 10**20
        got = frac_mul(n, alpha)
        want = (n * frac512) % (1 << 512)
        diff = abs((got.frac << (512 - 192)) - want)
        diff = min(diff, (1 << 512) - diff)
        assert diff <= 1 << (512 - 100)  # agreement to 2^-100

    def test_rejects_negative(self):
        with pytest.raises(RangeError):
            frac_mul(-1, RealAlpha.from_rational(1, 3))

    def test_precision_exhausted(self):
        alpha = preset_alpha("golden")
        with pytest.raises(PrecisionExhausted):
            frac_mul(1 << 160, alpha)

    @given(st.integers(0, 10**12), st.integers(0, 10**12))
    def test_rational_additivity(self, n1, n2):
        alpha = RealAlpha.from_rational(355, 113)
        lhs = frac_mul(n1 + n2, alpha)
        rhs = frac_mul(n1, alpha).add(frac_mul(n2, alpha))
        # exact in the rational path: residues reduced before representation
        assert abs(lhs.frac - rhs.frac) <= 1


class TestDist:
    def test_quarter(self):
        assert dist_to_nearest_int(mk(Fraction(1, 4))) == 0.25

    def test_symmetry_value(self):
        assert dist_to_nearest_int(mk(Fraction(3, 4))) == 0.25

    def test_maximum(self):
        assert dist_to_nearest_int(mk(Fraction(1, 2))) == 0.5

    def test_exact_fixed_point_symmetry(self):
        rng = random.Random(3)
        for _ in range(500):
            t = Mod1Fixed(rng.getrandbits(192), 192)
            assert dist_to_nearest_int(t) == dist_to_nearest_int(t.neg())


class TestCompensatedSum:
    def test_empty(self):
        assert compensated_sum([]) == 0

    def test_cancel(self):
        assert compensated_sum([1 + 0j, -1 + 0j]) == 0

    def test_million_copies(self):
        z = e_of(mk(Fraction(1, 3)))
        total = compensated_sum(z for _ in range(10**6))
        want = 10**6 * cmath.exp(2j * math.pi / 3)
        assert abs(total - want) < 1e-9

    def test_permutation_against_trig_oracle(self):
        # 10^4 unit terms with rational phases; oracle via mpmath at 50 digits
        import mpmath as mp

        mp.mp.dps = 50
        rng = random.Random(4)
        phases = [Fraction(rng.randrange(720), 720) for _ in range(10**4)]
        oracle = sum(mp.expjpi(2 * mp.mpf(p.numerator) / p.denominator) for p in phases)
        oracle = complex(float(oracle.real), float(oracle.imag))
        for _ in range(3):
            rng.shuffle(phases)
            got = compensated_sum(e_of(mk(p)) for p in phases)
            assert abs(got - oracle) < 1e-10

    def test_merge_matches_sequential(self):
        rng = random.Random(5)
        zs = [e_of(Mod1Fixed(rng.getrandbits(192), 192)) for _ in range(2000)]
        seq = ComplexAcc()
        for z in zs:
            seq.add(z)
        left, right = ComplexAcc(), ComplexAcc()
        for z in zs[:1000]:
            left.add(z)
        for z in zs[1000:]:
            right.add(z)
        left.merge(right)
        assert abs(seq.value() - left.value()) < 1e-12
        assert left.count == 2000


class TestMod1Fixed:
    def test_wraparound(self):
        a = mk(Fraction(3, 4))
        assert a.add(a).to_float() == 0.5

    def test_rejects_out_of_range(self):
        with pytest.raises(RangeError):
            Mod1Fixed(1 << 192, 192)

    def test_limb_packing_roundtrip(self):
        rng = random.Random(6)
        for _ in range(100):
            t = Mod1Fixed(rng.getrandbits(192), 192)
            l0, l1, l2 = mod1_to_limbs(t)
            assert (l2 << 128) | (l1 << 64) | l0 == t.frac

    def test_limb_packing_other_widths(self):
        t = Mod1Fixed(1, 64)  # value 2^-64, upscaled exactly to 192 bits
        l0, l1, l2 = mod1_to_limbs(t)
        assert (l0, l1, l2) == (0, 0, 1)
        t = Mod1Fixed(1, 256)  # value 2^-256 truncates away at 192 bits
        assert mod1_to_limbs(t) == (0, 0, 0)


def test_kahan_sum_matches_fsum():
    rng = random.Random(7)
    xs = [rng.uniform(-1, 1) * 10 ** rng.randint(-8, 8) for _ in range(5000)]
    assert abs(kahan_sum(xs) - math.fsum(xs)) < 1e-6 * max(1.0, abs(math.fsum(xs)))
