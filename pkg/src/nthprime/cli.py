"""Command-line interface.

Exit codes: 0 success, 1 domain error, 2 verification failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from .bounds import dusart_interval, threshold_B
from .errors import NthPrimeError
from .logint import li, li_inverse
from .nth_prime import Algorithm, nth_prime_binary_search, nth_prime_cramer, nth_prime_sieve_bound
from .prime_count import pi
from .report import bench_sweep, verify
from .sieve import segment_size_from_env

EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_int(text: str) -> int:
    """Integer, also accepting forms like 1e6 or 10**7 or 1_000_000."""
    text = text.strip().replace("_", "")
    try:
        if "**" in text:
            b, e = text.split("**")
            return int(b) ** int(e)
        if "e" in text.lower():
            mant, exp = text.lower().split("e")
            value = float(mant) * 10 ** int(exp)
            if value != int(value):
                raise ValueError
            return int(round(value))
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def parse_grid(spec: str) -> list[int]:
    """``a,b,c`` or ``lo:hi:k`` (k log-spaced points, endpoints included)."""
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"bad grid {spec!r}, want lo:hi:count")
        lo, hi, k = (parse_int(p) for p in parts)
        if not 1 <= lo <= hi or k < 1:
            raise argparse.ArgumentTypeError(f"bad grid {spec!r}")
        return sorted({int(round(v)) for v in np.geomspace(lo, hi, k)})
    return sorted({parse_int(p) for p in spec.split(",") if p.strip()})


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _cmd_pi(args) -> int:
    ev = pi(args.x)
    _emit(args, {"x": ev.x, "pi": ev.count, "cost": ev.cost}, str(ev.count))
    return EXIT_OK


def _cmd_nth(args) -> int:
    algo = Algorithm(args.algo)
    if algo is Algorithm.BINARY_SEARCH:
        res = nth_prime_binary_search(args.n)
    elif algo is Algorithm.SIEVE_TO_BOUND:
        res = nth_prime_sieve_bound(args.n, segment_size=args.segment_size)
    else:
        res = nth_prime_cramer(args.n, segment_size=args.segment_size, threads=args.threads)
    d = res.as_dict()
    stats = "\n".join(f"  {k}: {v}" for k, v in d.items() if k not in ("n", "prime"))
    _emit(args, d, f"{res.prime}\n{stats}")
    return EXIT_OK


def _cmd_li(args) -> int:
    v = li(args.x, args.eps)
    _emit(args, {"x": v.x, "li": str(v.value), "eps": v.eps}, str(v.value))
    return EXIT_OK


def _cmd_li_inv(args) -> int:
    r = li_inverse(args.n, args.tol)
    payload = {
        "n": r.n, "alpha": r.alpha, "residual": r.residual,
        "evals": r.evals, "bracket_widenings": r.bracket_widenings,
    }
    _emit(args, payload, f"{r.alpha!r}")
    return EXIT_OK


def _cmd_bounds(args) -> int:
    b = dusart_interval(args.n)
    big_b = threshold_B(args.n, args.c)
    lo, hi = b.as_integers
    payload = {"n": args.n, "L": b.lo, "R": b.hi, "L_int": lo, "R_int": hi, "B": big_b, "c": args.c}
    _emit(args, payload, f"L = {b.lo:.6f}\nR = {b.hi:.6f}\nB = {big_b:.6f}")
    return EXIT_OK


def _cmd_bench(args) -> int:
    report = bench_sweep(
        args.grid,
        args.algos,
        repeats=args.repeats,
        exclude_base=args.exclude_base,
        segment_size=args.segment_size,
        timeout=args.timeout,
    )
    text = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.format == "json":
        print(text)
    else:
        for e in report.entries:
            t = "-" if e.wall_time_ns is None else f"{e.wall_time_ns / 1e6:.3f} ms"
            print(f"{e.algorithm:7s} n={e.n:<12d} {t:>14s} result={e.result} {e.error or ''}")
        for algo, s in report.slopes.items():
            print(f"slope {algo}: {s}")
        print(f"crossover n0: {report.diagnostics.get('crossover_n0')}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = verify(args.max_n)
    text = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.format == "json":
        print(text)
    else:
        print(f"checked {report.checked}, failures {len(report.failures)}")
        for f in report.failures:
            print(f"  {f}")
    return EXIT_OK if report.ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--segment-size", type=parse_int, default=None)
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="nthprime", description="Compute and check the nth prime.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("pi", parents=[common], help="count primes <= x")
    s.add_argument("x", type=parse_int)
    s.set_defaults(func=_cmd_pi)

    s = sub.add_parser("nth", parents=[common], help="the nth prime")
    s.add_argument("n", type=parse_int)
    s.add_argument("--algo", choices=[a.value for a in Algorithm], default="cramer")
    s.set_defaults(func=_cmd_nth)

    s = sub.add_parser("li", parents=[common], help="logarithmic integral")
    s.add_argument("x", type=float)
    s.add_argument("--eps", type=float, default=1e-9)
    s.set_defaults(func=_cmd_li)

    s = sub.add_parser("li-inv", parents=[common], help="solve li(alpha) = n")
    s.add_argument("n", type=parse_int)
    s.add_argument("--tol", type=float, default=1e-3)
    s.set_defaults(func=_cmd_li_inv)

    s = sub.add_parser("bounds", parents=[common], help="bracket for p_n and threshold B(n)")
    s.add_argument("n", type=parse_int)
    s.add_argument("--c", type=float, default=1.0)
    s.set_defaults(func=_cmd_bounds)

    s = sub.add_parser("bench", parents=[common], help="timing sweep")
    s.add_argument("--grid", type=parse_grid, required=True)
    s.add_argument("--algos", type=lambda t: [a.strip() for a in t.split(",")],
                   default=["binary", "sieve", "cramer"])
    s.add_argument("--out")
    s.add_argument("--repeats", type=int, default=3)
    s.add_argument("--timeout", type=float, default=None)
    s.add_argument("--exclude-base", action="store_true",
                   help="sieve base primes outside the timed region")
    s.set_defaults(func=_cmd_bench)

    s = sub.add_parser("verify", parents=[common], help="run all empirical checks")
    s.add_argument("--max-n", type=parse_int, default=100_000)
    s.add_argument("--out")
    s.set_defaults(func=_cmd_verify)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "bench":
            bad = [a for a in args.algos if a not in {x.value for x in Algorithm}]
            if bad:
                raise UsageError(f"unknown algorithm(s): {', '.join(bad)}")
        if args.segment_size is None:
            args.segment_size = segment_size_from_env()
        if args.segment_size < 1:
            raise UsageError("--segment-size must be >= 1")
    except UsageError as exc:
        print(f"nthprime: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"nthprime: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (NthPrimeError, ValueError) as exc:
        print(f"nthprime: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
