"""Command-line surface: reproducible, machine-readable runs of every module.

Output is a single JSON object (or CSV key/value table) on stdout; human
diagnostics go to stderr.  Exit codes: 0 success, 1 validation error,
2 precision exhausted, 3 a failed asserted inequality.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .bounds import corollary_regime, lemma3_check, lemma4_check, reference_bounds, theorem_bound
from .diophantine import best_q_in_range, continued_fraction
from .equidist import distribution_report
from .errors import PrecisionExhausted, RangeError, WeylscopeError
from .numeric import DEFAULT_BITS, Mod1Fixed, RealAlpha
from .parallel import resolve_threads
from .polyops import Polynomial, eval_phase
from .presets import PRESET_NAMES, preset_alpha
from .primes import count_primes, sieve_window
from .suites import lemma1_suite, lemma2_suite, lemma4_suite
from .weyl import (
    Interval,
    lemma2_check,
    proof_chain,
    select_theorem_q,
    v_sum,
    weyl_sum_integers,
)

SCHEMA = "weylscope/1"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PRECISION = 2
EXIT_FAILED_CHECK = 3


def parse_alpha(spec: str, bits: int = DEFAULT_BITS) -> RealAlpha:
    """Parse 'a/q', a decimal string, or a preset name into a RealAlpha."""
    spec = spec.strip()
    if spec in PRESET_NAMES:
        return preset_alpha(spec, bits=min(bits, 512))
    try:
        if "/" in spec:
            num, den = spec.split("/", 1)
            return RealAlpha.from_rational(int(num), int(den))
        return RealAlpha.from_fraction(Fraction(spec))
    except (ValueError, ZeroDivisionError) as exc:
        raise RangeError(f"cannot parse alpha spec {spec!r}: {exc}") from exc


def parse_mod1(spec: str, bits: int) -> Mod1Fixed:
    try:
        return Mod1Fixed.from_fraction(Fraction(spec), bits)
    except ValueError as exc:
        raise RangeError(f"cannot parse residue {spec!r}: {exc}") from exc


def _flatten(prefix: str, obj, rows: list) -> None:
    if isinstance(obj, dict):
        for key in obj:
            _flatten(f"{prefix}.{key}" if prefix else str(key), obj[key], rows)
    elif isinstance(obj, (list, tuple)):
        for i, item in enumerate(obj):
            _flatten(f"{prefix}[{i}]", item, rows)
    else:
        rows.append((prefix, obj))


def emit(report: dict, fmt: str, output: str | None) -> None:
    report = {"schema": SCHEMA, **report}
    if fmt == "json":
        text = json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"
    else:
        rows: list = []
        _flatten("", report, rows)
        lines = ["key,value"]
        for key, val in rows:
            sval = json.dumps(val) if isinstance(val, str) else repr(val)
            lines.append(f"{key},{sval}")
        text = "\n".join(lines) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="weylscope", description=__doc__)
    top.add_argument("--version", action="version", version=f"weylscope {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, alpha: bool = True) -> argparse.ArgumentParser:
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", default=None, help="write the report here instead of stdout")
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (default: WEYLSCOPE_THREADS or 1)")
        p.add_argument("--precision-bits", type=int, default=DEFAULT_BITS)
        p.add_argument("--seed", type=int, default=0)
        if alpha:
            p.add_argument("--alpha", required=True,
                           help="'a/q', a decimal string, or one of: " + ", ".join(PRESET_NAMES))
        return p

    p = common(sub.add_parser("sieve", help="primes in the window (x-y, x]"), alpha=False)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)

    p = common(sub.add_parser("cf", help="continued-fraction convergents of alpha"))
    p.add_argument("--q-max", type=int, required=True)
    p.add_argument("--q-min", type=int, default=None,
                   help="also report the smallest convergent with q in [q-min, q-max]")

    p = common(sub.add_parser("sum", help="integer Weyl sum over (x-y, x]"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--lower", default="",
                   help="comma-separated lower coefficients c1,c2,... (degree 1 up)")

    p = common(sub.add_parser("vsum", help="sum of moduli of prime Weyl sums"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--K", dest="big_k", type=int, required=True)

    p = common(sub.add_parser("chain", help="majorization-chain report with checks C1-C9"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--K", dest="big_k", type=int, required=True)

    p = common(sub.add_parser("lemma1", help="closed-form vs recursive difference suite"),
               alpha=False)
    p.add_argument("--count", type=int, default=200)

    p = common(sub.add_parser("lemma2", help="differencing inequality (single or suite)"))
    p.add_argument("--count", type=int, default=None, help="run a randomized suite")
    p.add_argument("--x", type=int, default=None)
    p.add_argument("--y", type=int, default=None)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--degree", type=int, default=2)

    p = common(sub.add_parser("lemma3", help="divisor-power sum ratio report"), alpha=False)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = common(sub.add_parser("lemma4", help="explicit minimum-sum bound check"))
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--beta", default="0")
    p.add_argument("--q", type=int, default=None,
                   help="denominator of the convergent to use (default: best q <= x)")
    p.add_argument("--count", type=int, default=None, help="run a randomized suite instead")

    p = common(sub.add_parser("theorem", help="main bound, regime check, reference bound"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--K", dest="big_k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--A", dest="a_const", type=float, default=2.0)
    p.add_argument("--eps", type=float, default=0.01)

    p = common(sub.add_parser("equidist", help="fractional-part distribution report"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--sigma-grid", type=int, default=100)
    p.add_argument("--exact-dstar", action="store_true")

    p = common(sub.add_parser("bench", help="compare compiled and pure kernels"), alpha=False)
    p.add_argument("--scale", choices=("small", "medium"), default="small")

    return top


def _run(args: argparse.Namespace) -> tuple[dict, int]:
    bits = args.precision_bits
    threads = resolve_threads(args.threads)
    cmd = args.command

    if cmd == "sieve":
        w = sieve_window(args.x, args.y)
        report = {"command": cmd, "x": args.x, "y": args.y, "count": count_primes(w)}
        if args.y <= 10_000:
            report["primes"] = [int(p) for p in w.positions()]
        return report, EXIT_OK

    if cmd == "cf":
        alpha = parse_alpha(args.alpha, bits)
        convs = continued_fraction(alpha, args.q_max)
        report = {
            "command": cmd,
            "alpha": alpha.describe(),
            "q_max": args.q_max,
            "convergents": [{"a": c.a, "q": c.q, "theta": c.theta} for c in convs],
        }
        if args.q_min is not None:
            best = best_q_in_range(alpha, args.q_min, args.q_max)
            report["best_in_range"] = (
                {"a": best.a, "q": best.q, "theta": best.theta} if best else None
            )
        return report, EXIT_OK

    if cmd == "sum":
        alpha = parse_alpha(args.alpha, bits)
        lower = [parse_alpha(tok, bits) for tok in args.lower.split(",") if tok.strip()]
        phase = lambda u: eval_phase(alpha, lower, args.k, u, args.n)  # noqa: E731
        val = weyl_sum_integers(phase, Interval(args.x - args.y, args.x))
        return {
            "command": cmd, "alpha": alpha.describe(), "n": args.n, "k": args.k,
            "x": args.x, "y": args.y, "re": val.real, "im": val.imag, "abs": abs(val),
        }, EXIT_OK

    if cmd == "vsum":
        alpha = parse_alpha(args.alpha, bits)
        w = sieve_window(args.x, args.y)
        val = v_sum(args.big_k, alpha, [], args.n, w, threads)
        q_used, rhs = select_theorem_q(alpha, args.big_k, args.x, args.y, args.n)
        return {
            "command": cmd, "alpha": alpha.describe(),
            "V": val, "K": args.big_k, "x": args.x, "y": args.y, "n": args.n,
            "pi_w": count_primes(w), "q_used": q_used, "theorem_rhs": rhs,
            "ratio": val / rhs if rhs else None,
            "k_exceeds_y": args.big_k > args.y,
        }, EXIT_OK

    if cmd == "chain":
        alpha = parse_alpha(args.alpha, bits)
        rep = proof_chain(args.big_k, args.x, args.y, args.n, alpha, threads)
        code = EXIT_OK if rep.all_passed() else EXIT_FAILED_CHECK
        return {"command": cmd, **rep.to_dict()}, code

    if cmd == "lemma1":
        rep = lemma1_suite(args.count, args.seed)
        return ({"command": cmd, **rep},
                EXIT_OK if rep["pass"] else EXIT_FAILED_CHECK)

    if cmd == "lemma2":
        if args.count is not None:
            rep = lemma2_suite(args.count, args.seed)
            return ({"command": cmd, **rep},
                    EXIT_OK if rep["pass"] else EXIT_FAILED_CHECK)
        if args.x is None or args.y is None:
            raise RangeError("single lemma2 run needs --x and --y")
        alpha = parse_alpha(args.alpha, bits)
        f = Polynomial.make([0] * args.degree + [alpha.as_fraction()])
        res = lemma2_check(f, args.x, args.y, args.j)
        return ({
            "command": cmd, "alpha": alpha.describe(), "degree": args.degree,
            "x": args.x, "y": args.y, "j": args.j,
            "lhs": res.lhs, "rhs": res.rhs, "pass": res.passed,
        }, EXIT_OK if res.passed else EXIT_FAILED_CHECK)

    if cmd == "lemma3":
        rep = lemma3_check(args.x, args.r, args.k)
        return {"command": cmd, **rep.to_dict()}, EXIT_OK

    if cmd == "lemma4":
        if args.count is not None:
            rep = lemma4_suite(args.count, args.seed)
            return ({"command": cmd, **rep},
                    EXIT_OK if rep["pass"] else EXIT_FAILED_CHECK)
        alpha = parse_alpha(args.alpha, bits)
        beta_bits = alpha.frac.bits if alpha.kind == "fixed" else bits
        beta = parse_mod1(args.beta, beta_bits)
        if args.q is not None:
            conv = best_q_in_range(alpha, args.q, args.q)
            if conv is None:
                raise RangeError(f"alpha has no convergent with q = {args.q}")
        else:
            convs = continued_fraction(alpha, max(args.x, 1))
            if not convs:
                raise RangeError("no convergent with q <= x")
            conv = convs[-1]
        rep = lemma4_check(conv, alpha, beta, args.x, args.y)
        return ({"command": cmd, "alpha": alpha.describe(), **rep.to_dict()},
                EXIT_OK if rep.passed else EXIT_FAILED_CHECK)

    if cmd == "theorem":
        alpha_desc = None
        rhs = theorem_bound(args.big_k, args.x, args.y, args.n, args.q)
        in_regime, predicted = corollary_regime(
            args.big_k, args.x, args.y, args.n, args.q, args.a_const
        )
        ref = reference_bounds(args.big_k, args.x, args.q, args.eps)
        return {
            "command": cmd, "K": args.big_k, "x": args.x, "y": args.y,
            "n": args.n, "q": args.q, "A": args.a_const, "eps": args.eps,
            "theorem_rhs": rhs, "in_regime": in_regime, "predicted": predicted,
            "reference_bound": ref, "alpha": alpha_desc,
        }, EXIT_OK

    if cmd == "equidist":
        alpha = parse_alpha(args.alpha, bits)
        w = sieve_window(args.x, args.y)
        rep = distribution_report(
            alpha, [], args.n, args.k, w, args.sigma_grid, exact_dstar=args.exact_dstar
        )
        return {
            "command": cmd, "alpha": alpha.describe(), "n": args.n, "k": args.k,
            "x": args.x, "y": args.y, **rep.to_dict(),
        }, EXIT_OK

    if cmd == "bench":
        from .bench import run_bench

        return {"command": cmd, **run_bench(args.scale, threads)}, EXIT_OK

    raise RangeError(f"unknown command {cmd!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse validation failure -> exit 1
        return EXIT_OK if exc.code in (0, None) else EXIT_VALIDATION
    try:
        report, code = _run(args)
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (RangeError, WeylscopeError, ValueError) as exc:
        print(f"invalid run configuration: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    emit(report, args.format, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
