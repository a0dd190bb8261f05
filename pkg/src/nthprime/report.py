"""Benchmark sweeps and the verification harness, with JSON reports."""

from __future__ import annotations

import json
import math
import statistics
import time
from dataclasses import asdict, dataclass, field
from math import isqrt

import mpmath
import numpy as np

from . import __version__
from .bounds import dusart_interval, threshold_B
from .errors import CapacityError
from .logint import li, li_inverse
from .nth_prime import (
    DEFAULT_C0,
    MIN_WINDOW_N,
    SCHOENFELD_MIN_X,
    Algorithm,
    cramer_window,
    nth_prime_binary_search,
    nth_prime_cramer,
    nth_prime_sieve_bound,
    schoenfeld_check,
    sieve_limit,
)
from .oracle import li_quadrature, prime_table
from .prime_count import PI_METHOD
from .sieve import DEFAULT_SEGMENT_SIZE, MAX_SIEVE_LIMIT, simple_sieve

VERIFY_KINDS = ("dusart_containment", "schoenfeld", "cross_algorithm", "li_accuracy", "pi_budget")

LI_TOLERANCE = 1e-9


@dataclass
class BenchEntry:
    n: int
    algorithm: str
    wall_time_ns: int | None
    pi_evals: int
    cells_sieved: int
    widenings: int
    result: int | None
    error: str | None = None


@dataclass
class BenchReport:
    entries: list[BenchEntry]
    metadata: dict
    slopes: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> BenchReport:
        return cls(
            entries=[BenchEntry(**e) for e in data["entries"]],
            metadata=data["metadata"],
            slopes=data.get("slopes", {}),
            diagnostics=data.get("diagnostics", {}),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> BenchReport:
        return cls.from_dict(json.loads(text))


@dataclass
class VerifyReport:
    max_n: int
    checked: int
    failures: list[dict]
    checked_by_kind: dict
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def loglog_slope(ns, times) -> float | None:
    """Least-squares slope of log(time) against log(n)."""
    pts = [(n, t) for n, t in zip(ns, times) if t]
    if len(pts) < 2:
        return None
    x = np.log([p[0] for p in pts])
    y = np.log([p[1] for p in pts])
    return float(np.polyfit(x, y, 1)[0])


def window_diagnostics(grid, c0: float = DEFAULT_C0) -> dict:
    """Window size vs threshold B(n, 1) per grid point, and the crossover n0.

    n0 is the smallest grid point from which every window is below B.
    """
    rows = []
    for n in grid:
        if n < max(6, MIN_WINDOW_N):
            continue
        w = cramer_window(n, li_inverse(n).alpha, c0)
        rows.append({"n": n, "window_size": w.size, "threshold_B": threshold_B(n, 1.0)})
    n0 = None
    for row in reversed(rows):
        if row["window_size"] < row["threshold_B"]:
            n0 = row["n"]
        else:
            break
    return {"windows": rows, "crossover_n0": n0}


def _run(algo: Algorithm, n: int, base, segment_size: int):
    if algo is Algorithm.BINARY_SEARCH:
        return nth_prime_binary_search(n)
    if algo is Algorithm.SIEVE_TO_BOUND:
        return nth_prime_sieve_bound(n, base=base, segment_size=segment_size)
    return nth_prime_cramer(n, base=base, segment_size=segment_size)


def bench_sweep(
    grid,
    algos,
    repeats: int = 3,
    exclude_base: bool = False,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    timeout: float | None = None,
    max_sieve_limit: int = MAX_SIEVE_LIMIT,
    slope_range: tuple[int, int] | None = None,
) -> BenchReport:
    """Time every (n, algorithm) pair; median of ``repeats`` runs.

    With ``exclude_base`` the base primes are sieved outside the timed region.
    An entry over ``timeout`` seconds is recorded as such and larger n are
    skipped for that algorithm.
    """
    grid = [int(n) for n in grid]
    if not grid or grid != sorted(grid):
        raise ValueError("grid must be non-empty and ascending")
    algos = [Algorithm(a) for a in algos]
    entries: list[BenchEntry] = []
    for algo in algos:
        # untimed warm-up so one-off import and cache costs stay out of the first entry
        _run(algo, 1000, None, segment_size)
        gave_up = None
        for n in grid:
            if gave_up is not None:
                entries.append(BenchEntry(n, algo.value, None, 0, 0, 0, None, gave_up))
                continue
            base = None
            if exclude_base and algo is not Algorithm.BINARY_SEARCH and n >= 6:
                base = simple_sieve(isqrt(sieve_limit(n)) + 1)
            if algo is Algorithm.SIEVE_TO_BOUND and sieve_limit(n) > max_sieve_limit:
                entries.append(BenchEntry(n, algo.value, None, 0, 0, 0, None, "capacity"))
                continue
            times = []
            try:
                for _ in range(repeats):
                    t0 = time.perf_counter_ns()
                    res = _run(algo, n, base, segment_size)
                    times.append(time.perf_counter_ns() - t0)
                    if timeout is not None and times[-1] > timeout * 1e9:
                        gave_up = "timeout"
                        break
            except CapacityError:
                entries.append(BenchEntry(n, algo.value, None, 0, 0, 0, None, "capacity"))
                continue
            entries.append(
                BenchEntry(
                    n, algo.value, int(statistics.median(times)), res.pi_evals,
                    res.cells_sieved, res.widenings, res.prime, gave_up,
                )
            )
    lo, hi = slope_range or (grid[0], grid[-1])
    slopes = {}
    for algo in algos:
        rows = [e for e in entries if e.algorithm == algo.value and lo <= e.n <= hi]
        slopes[algo.value] = loglog_slope([e.n for e in rows], [e.wall_time_ns for e in rows])
    metadata = {
        "version": __version__,
        "pi_method_name": PI_METHOD,
        "c0": DEFAULT_C0,
        "segment_size": segment_size,
        "repeats": repeats,
        "exclude_base": exclude_base,
        "slope_range": [lo, hi],
    }
    return BenchReport(entries, metadata, slopes, window_diagnostics(grid))


def results_agree(report: BenchReport) -> bool:
    by_n: dict[int, set] = {}
    for e in report.entries:
        if e.result is not None:
            by_n.setdefault(e.n, set()).add(e.result)
    return all(len(v) == 1 for v in by_n.values())


def _log_grid(lo: float, hi: float, count: int) -> list[int]:
    return sorted({int(round(v)) for v in np.geomspace(lo, hi, count)})


def verify(max_n: int = 100_000) -> VerifyReport:
    """Run every empirical check up to ``max_n`` and collect failures."""
    if max_n < 6:
        raise ValueError("max_n must be >= 6")
    failures: list[dict] = []
    checked = {k: 0 for k in VERIFY_KINDS}
    notes: dict = {}

    def fail(kind, key, value, details):
        failures.append({"kind": kind, key: value, "details": details})

    table = prime_table(dusart_interval(max_n).as_integers[1])

    # bracket containment and width, every n
    for n in range(6, max_n + 1):
        b = dusart_interval(n)
        p = int(table[n - 1])
        checked["dusart_containment"] += 1
        if not b.lo < p < b.hi:
            fail("dusart_containment", "n", n, f"p_n={p} outside ({b.lo!r}, {b.hi!r})")
        elif abs(b.width - n) > math.ulp(b.hi):
            fail("dusart_containment", "n", n, f"R - L = {b.width!r} != n")

    # all algorithms vs the oracle, plus the binary-search evaluation budget
    sample = set(range(1, min(max_n, 1000) + 1))
    if max_n > 1000:
        sample |= set(_log_grid(1000, max_n, 25))
    widened = []
    for n in sorted(sample):
        expected = int(table[n - 1])
        results = {
            "binary": nth_prime_binary_search(n),
            "sieve": nth_prime_sieve_bound(n),
            "cramer": nth_prime_cramer(n),
        }
        checked["cross_algorithm"] += 1
        got = {k: r.prime for k, r in results.items()}
        if any(v != expected for v in got.values()):
            fail("cross_algorithm", "n", n, f"expected {expected}, got {got}")
        if results["cramer"].widenings:
            widened.append(n)
        if n >= 6:
            checked["pi_budget"] += 1
            budget = math.floor(math.log2(n)) + 2
            if results["binary"].pi_evals > budget:
                fail("pi_budget", "n", n, f"{results['binary'].pi_evals} evaluations > {budget}")
    notes["cramer_widened_n"] = widened

    # conditional bound between pi and li
    x_hi = max(10**4, dusart_interval(max_n).as_integers[1])
    for x in _log_grid(SCHOENFELD_MIN_X, x_hi, 200):
        checked["schoenfeld"] += 1
        r = schoenfeld_check(x)
        if not r < 0:
            fail("schoenfeld", "x", x, f"residual {r!r} >= 0")

    # li series vs quadrature
    for x in np.geomspace(2, 1e9, 50):
        x = float(x)
        checked["li_accuracy"] += 1
        with mpmath.workdps(30):
            err = float(abs(li(x, LI_TOLERANCE / 10).value - li_quadrature(x)))
        if err > LI_TOLERANCE:
            fail("li_accuracy", "x", x, f"|li - quadrature| = {err:.3e}")

    notes["li_bracket_widened_n"] = [
        n for n in _log_grid(6, max_n, 60) if li_inverse(n).bracket_widenings
    ]
    return VerifyReport(max_n, sum(checked.values()), failures, checked, notes)
