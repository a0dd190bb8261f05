"""Exit criteria. Each test prints one PASS/FAIL line in the terminal summary."""

import math

import mpmath
import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from nthprime.bounds import dusart_interval, threshold_B
from nthprime.cli import main
from nthprime.logint import li, li_float, li_inverse
from nthprime.nth_prime import (
    CALIBRATION_GRID,
    DEFAULT_C0,
    gap_ratio,
    nth_prime_binary_search,
    nth_prime_cramer,
    nth_prime_sieve_bound,
    schoenfeld_check,
)
from nthprime.oracle import li_quadrature
from nthprime.prime_count import pi
from nthprime.report import bench_sweep

LARGE_N = (10**5, 10**6, 5 * 10**6, 10**7)
TESTED_N = tuple(range(1, 10**4 + 1)) + LARGE_N


def record(number, title, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def all_results():
    return {
        n: (nth_prime_binary_search(n), nth_prime_sieve_bound(n), nth_prime_cramer(n))
        for n in TESTED_N
    }


def test_c1_correctness_vs_oracle(oracle_primes, all_results):
    assert int(oracle_primes[-1]) == 179424673
    bad = [
        n for n, rs in all_results.items()
        if any(r.prime != int(oracle_primes[n - 1]) for r in rs)
    ]
    record(1, "three algorithms equal the sieve oracle", not bad,
           f"{len(all_results)} n checked, mismatches {bad[:5]}")


def test_c2_pi_checkpoints(oracle_primes):
    bad = []
    for k in range(1, 9):
        expected = int(np.searchsorted(oracle_primes, 10**k, side="right"))
        if pi(10**k).count != expected:
            bad.append(k)
    assert pi(10**6).count == 78498 and pi(10**8).count == 5761455
    record(2, "pi(10^k), k=1..8", not bad, f"mismatched k: {bad}")


def test_c3_dusart_containment(oracle_primes):
    violations, width_bad = [], []
    for n in range(6, 10**5 + 1):
        b = dusart_interval(n)
        if not b.lo < oracle_primes[n - 1] < b.hi:
            violations.append(n)
        if abs((b.hi - b.lo) - n) > math.ulp(b.hi):
            width_bad.append(n)
    record(3, "L < p_n < R for 6 <= n <= 1e5, R - L = n", not violations and not width_bad,
           f"containment violations {len(violations)}, width violations {len(width_bad)}")


def test_c4_pi_evaluation_budget(all_results):
    over = [
        n for n, (b, _, _) in all_results.items()
        if n >= 6 and b.pi_evals > math.floor(math.log2(n)) + 2
    ]
    worst = max(
        b.pi_evals - (math.floor(math.log2(n)) + 2)
        for n, (b, _, _) in all_results.items() if n >= 6
    )
    record(4, "binary search uses <= floor(log2 n) + 2 pi calls", not over,
           f"violations {len(over)}, tightest margin {worst}")


def test_c5_schoenfeld():
    xs = np.geomspace(2657, 10**8, 200).round().astype(int)
    residuals = [schoenfeld_check(int(x)) for x in xs]
    record(5, "Schoenfeld residual < 0 on 200 x in [2657, 1e8]", max(residuals) < 0,
           f"max residual {max(residuals):.3f}")


def test_c6_li_accuracy_and_round_trip():
    worst = 0.0
    for x in np.geomspace(2, 1e9, 50):
        x = float(x)
        with mpmath.workdps(30):
            worst = max(worst, float(abs(li(x, 1e-10).value - li_quadrature(x))))
    grid = [10**k for k in range(2, 8)] + [int(10 ** (k + 0.5)) for k in range(2, 7)]
    residual = max(abs(li_float(li_inverse(n, 0.5).alpha) - n) for n in grid)
    record(6, "li vs quadrature <= 1e-9; li_inverse residual <= 0.5",
           worst <= 1e-9 and residual <= 0.5,
           f"max |li - quad| {worst:.2e}, max round-trip residual {residual:.2e}")


def test_c7_cramer_window(all_results):
    bad = [
        n for n, (_, _, c) in all_results.items()
        if n >= 6 and (c.widenings != 0 or c.pi_evals != 1)
    ]
    worst = max(gap_ratio(n) for n in CALIBRATION_GRID)
    record(7, "calibrated window: no widenings, one pi call, ratio < c0/2",
           not bad and worst < DEFAULT_C0 / 2,
           f"c0={DEFAULT_C0}, max ratio {worst:.6f} vs c0/2={DEFAULT_C0 / 2}, "
           f"widened/extra-eval n: {bad[:5]}")


def test_c8_crossover_and_slopes():
    grid = sorted({int(round(v)) for v in np.geomspace(10**5, 10**7, 9)})
    report = bench_sweep(grid, ["binary", "cramer"], repeats=3)
    diag_rows = report.diagnostics["windows"]
    n0 = report.diagnostics["crossover_n0"]
    above = [r for r in diag_rows if n0 is not None and r["n"] >= n0]
    windows_ok = n0 is not None and all(r["window_size"] < r["threshold_B"] for r in above)
    # window vs B over a wider grid as well
    wide = [
        (n, nth_prime_cramer(n).cells_sieved, threshold_B(n, 1.0))
        for n in (10**3, 10**4, 10**5, 10**6, 10**7)
    ]
    windows_ok = windows_ok and all(cells < b for _, cells, b in wide)
    s_bin, s_cr = report.slopes["binary"], report.slopes["cramer"]
    record(8, "window < B above n0; cramer slope <= binary slope + 0.1",
           windows_ok and s_cr <= s_bin + 0.1,
           f"n0={n0}, slope binary {s_bin:.3f}, cramer {s_cr:.3f}")


def test_c9_verify_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    code_a = main(["verify", "--max-n", "100000", "--out", str(a)])
    code_b = main(["verify", "--max-n", "100000", "--out", str(b)])
    same = a.read_bytes() == b.read_bytes()
    record(9, "verify --max-n 100000 twice gives identical reports",
           same and code_a == code_b == 0, f"exit codes {code_a}/{code_b}, identical={same}")
