"""Benchmark the compiled kernels against the pure-numpy fallback.

Wall-clock timings are diagnostics and go to stderr; the stdout report
carries only deterministic content (workload parameters and the maximum
relative disagreement between backends), so repeated runs stay
byte-identical.
"""

from __future__ import annotations

import math
import sys
import time

import numpy as np

from ._kernels import available_backends
from .numeric import frac_mul, mod1_to_limbs, phases_to_limb_array
from .polyops import eval_phase
from .presets import preset_alpha
from .primes import sieve_window

_SCALES = {
    "small": {"vsum": (10**5, 2000, 50, 2), "chain_m": (3, 8, 40), "tau": 20000},
    "medium": {"vsum": (10**6, 10**4, 200, 3), "chain_m": (3, 20, 120), "tau": 200000},
}


def _rel_diff(a, b) -> float:
    a = np.atleast_1d(np.asarray(a, dtype=np.float64))
    b = np.atleast_1d(np.asarray(b, dtype=np.float64))
    scale = np.maximum(np.maximum(np.abs(a), np.abs(b)), 1.0)
    return float(np.max(np.abs(a - b) / scale))


def run_bench(scale: str, threads: int) -> dict:
    cfg = _SCALES[scale]
    backends = available_backends()
    alpha = preset_alpha("golden")
    workloads = []

    x, y, big_k, n = cfg["vsum"]
    w = sieve_window(x, y)
    limbs = phases_to_limb_array(
        [eval_phase(alpha, [], 1, int(p), n) for p in w.positions()]
    )
    results = {}
    timings = {}
    for name, mod in backends.items():
        t0 = time.perf_counter()
        results[name] = mod.vsum_abs(limbs, 1, big_k)
        timings[name] = time.perf_counter() - t0
    workloads.append(_workload("vsum_abs", {"x": x, "y": y, "K": big_k, "n": n},
                               results, timings))

    big_k, m, wlen = cfg["chain_m"]
    beta_limbs = np.array(mod1_to_limbs(frac_mul(1, alpha)), dtype=np.uint64)
    results = {}
    timings = {}
    for name, mod in backends.items():
        t0 = time.perf_counter()
        results[name] = mod.w3w4(beta_limbs, 2, big_k, m, wlen)
        timings[name] = time.perf_counter() - t0
    workloads.append(_workload("w3w4", {"K": big_k, "m": m, "w": wlen},
                               results, timings))

    vmax = cfg["tau"]
    from .primes import _base_primes

    base = _base_primes(math.isqrt(vmax) + 1)
    results = {}
    timings = {}
    for name, mod in backends.items():
        t0 = time.perf_counter()
        results[name] = mod.tau_min(beta_limbs, 0, vmax, 4, 100.0, base)
        timings[name] = time.perf_counter() - t0
    workloads.append(_workload("tau_min", {"vmax": vmax, "nfold": 4}, results, timings))

    return {
        "scale": scale,
        "backends": sorted(backends),
        "active_default": __import__("weylscope._kernels", fromlist=["BACKEND_NAME"]).BACKEND_NAME,
        "workloads": workloads,
    }


def _workload(name: str, params: dict, results: dict, timings: dict) -> dict:
    names = sorted(results)
    diff = 0.0
    if len(names) == 2:
        diff = _rel_diff(results[names[0]], results[names[1]])
    for bname in names:
        print(f"bench {name} [{bname}]: {timings[bname]:.4f}s", file=sys.stderr)
    if len(names) == 2 and timings[names[1]] > 0:
        ratio = timings[names[1]] / max(timings[names[0]], 1e-12)
        print(f"bench {name}: {names[1]}/{names[0]} time ratio {ratio:.1f}x", file=sys.stderr)
    return {"workload": name, "params": params, "backends": names,
            "max_rel_diff": diff}
