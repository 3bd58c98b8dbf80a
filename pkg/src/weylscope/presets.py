"""Built-in irrational coefficients as certified 512-bit fixed-point constants.

The constants were computed offline at 700-bit working precision with two
independent libraries (mpmath and gmpy2/MPFR) and rounded to nearest at 512
fraction bits, so each stored residue is within 2^-513 of the true value.
Baking them in keeps runs reproducible and avoids runtime transcendental
evaluation.
"""

from __future__ import annotations

import math

from .errors import RangeError
from .numeric import Mod1Fixed, RealAlpha

PRESET_BITS = 512

# name -> (integer part, fractional part * 2^512, rounded to nearest)
_PRESETS: dict[str, tuple[int, int]] = {
    "golden": (1, 0x9E3779B97F4A7C15F39CC0605CEDC8341082276BF3A27251F86C6A11D0C18E952767F0B153D27B7F0347045B5BF1827F01886F0928403002C1D64BA40F335E37),
    "sqrt2": (1, 0x6A09E667F3BCC908B2FB1366EA957D3E3ADEC17512775099DA2F590B0667322A95F90608757145875163FCDFB907B6721EE950BC8738F694F0090E6C7BF44ED2),
    "e": (2, 0xB7E151628AED2A6ABF7158809CF4F3C762E7160F38B4DA56A784D9045190CFEF324E7738926CFBE5F4BF8D8D8C31D763DA06C80ABB1185EB4F7C7B5757F59585),
    "pi": (3, 0x243F6A8885A308D313198A2E03707344A4093822299F31D0082EFA98EC4E6C89452821E638D01377BE5466CF34E90C6CC0AC29B7C97C50DD3F84D5B5B5470918),
}

PRESET_NAMES = tuple(sorted(_PRESETS))


def preset_frac_512(name: str) -> tuple[int, int]:
    """(integer part, 512-bit fractional residue) of a preset constant."""
    try:
        return _PRESETS[name]
    except KeyError:
        raise RangeError(f"unknown preset {name!r}; choose from {PRESET_NAMES}") from None


def preset_alpha(name: str, bits: int = 192) -> RealAlpha:
    """A preset constant as a certified fixed-point RealAlpha at `bits` precision.

    For bits <= 512 the stored residue is rounded to nearest, giving a
    certified error of 2^-(bits+1) + 2^-513 <= 2^-bits.
    """
    intpart, frac512 = preset_frac_512(name)
    if not 8 <= bits <= PRESET_BITS:
        raise RangeError(f"preset precision must lie in [8, {PRESET_BITS}] bits")
    shift = PRESET_BITS - bits
    if shift:
        frac = (frac512 + (1 << (shift - 1))) >> shift  # round to nearest
        if frac >> bits:  # carried past 1: fold into the integer part
            intpart += 1
            frac = 0
        err = math.ldexp(1.0, -(bits + 1)) + math.ldexp(1.0, -(PRESET_BITS + 1))
    else:
        frac = frac512
        err = math.ldexp(1.0, -(PRESET_BITS + 1))
    return RealAlpha.from_fixed(intpart, Mod1Fixed(frac, bits), err)


def preset_value_fraction(name: str):
    """Center of the preset's 512-bit enclosure as an exact Fraction."""
    from fractions import Fraction

    intpart, frac512 = preset_frac_512(name)
    return intpart + Fraction(frac512, 1 << PRESET_BITS)
