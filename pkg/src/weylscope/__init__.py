"""weylscope: short Weyl exponential sums over primes.

Evaluates sums of |sum_{x-y<p<=x} e(k f(p))| for polynomial phases,
certifies every exact-constant inequality in the Cauchy/differencing
majorization chain numerically, and measures the equidistribution of the
fractional parts {k f(p)} in short intervals.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND_NAME
from .bounds import (
    BoundReport,
    corollary_regime,
    lemma3_check,
    lemma4_check,
    minsum,
    reference_bounds,
    tau_r,
    theorem_bound,
)
from .diophantine import Convergent, best_q_in_range, continued_fraction, verify_approx
from .equidist import DistributionReport, count_below, distribution_report
from .errors import ApproximationError, PrecisionExhausted, RangeError, WeylscopeError
from .numeric import (
    ComplexAcc,
    Mod1Fixed,
    RealAlpha,
    compensated_sum,
    dist_to_nearest_int,
    e_of,
    frac_mul,
)
from .polyops import (
    Polynomial,
    ShiftVector,
    binom,
    delta_closed_form,
    delta_recursive,
    eval_phase,
    pair_difference_poly,
)
from .presets import PRESET_NAMES, preset_alpha
from .primes import PrimeWindow, count_primes, sieve_window
from .weyl import (
    ChainReport,
    Interval,
    lemma2_check,
    prime_weyl_sum,
    proof_chain,
    v_sum,
    weyl_interval,
    weyl_sum_integers,
)

__all__ = [
    "ApproximationError",
    "BACKEND_NAME",
    "BoundReport",
    "ChainReport",
    "ComplexAcc",
    "Convergent",
    "DistributionReport",
    "Interval",
    "Mod1Fixed",
    "PRESET_NAMES",
    "PrecisionExhausted",
    "PrimeWindow",
    "Polynomial",
    "RangeError",
    "RealAlpha",
    "ShiftVector",
    "WeylscopeError",
    "best_q_in_range",
    "binom",
    "compensated_sum",
    "continued_fraction",
    "corollary_regime",
    "count_below",
    "count_primes",
    "delta_closed_form",
    "delta_recursive",
    "dist_to_nearest_int",
    "distribution_report",
    "e_of",
    "eval_phase",
    "frac_mul",
    "lemma2_check",
    "lemma3_check",
    "lemma4_check",
    "minsum",
    "pair_difference_poly",
    "preset_alpha",
    "prime_weyl_sum",
    "proof_chain",
    "reference_bounds",
    "sieve_window",
    "tau_r",
    "theorem_bound",
    "v_sum",
    "verify_approx",
    "weyl_interval",
    "weyl_sum_integers",
]
