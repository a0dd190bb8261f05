import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nthprime.bounds import dusart_interval
from nthprime.errors import DomainError
from nthprime.logint import li_inverse
from nthprime.nth_prime import (
    CALIBRATION_GRID,
    DEFAULT_C0,
    MIN_WINDOW_N,
    SCHOENFELD_K,
    Algorithm,
    calibrate_c0,
    cramer_window,
    gap_ratio,
    nth_prime,
    nth_prime_binary_search,
    nth_prime_cramer,
    nth_prime_sieve_bound,
    schoenfeld_check,
)
from nthprime.oracle import is_prime_trial
from nthprime.prime_count import pi
from nthprime.sieve import simple_sieve

ALGOS = [nth_prime_binary_search, nth_prime_sieve_bound, nth_prime_cramer]


@pytest.mark.parametrize("algo", ALGOS)
def test_first_primes(algo):
    assert [algo(n).prime for n in range(1, 11)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_examples():
    assert nth_prime_binary_search(1).prime == 2
    assert nth_prime_binary_search(6).prime == 13
    assert nth_prime_sieve_bound(10).prime == 29
    r = nth_prime_sieve_bound(6)
    assert r.prime == 13 and r.cells_sieved == 14  # [2, 15]
    r = nth_prime_cramer(6)
    assert r.prime == 13 and r.widenings == 0


def test_million():
    b = nth_prime_binary_search(10**6)
    assert b.prime == 15485863
    assert b.pi_evals <= math.floor(math.log2(10**6)) + 2 == 21
    c = nth_prime_cramer(10**6)
    assert c.prime == 15485863 and c.pi_evals == 1 and c.widenings == 0


@pytest.mark.parametrize("algo", ALGOS)
def test_domain(algo):
    with pytest.raises(DomainError):
        algo(0)


def test_agreement_to_ten_thousand(small_primes):
    for n in range(1, 10_001, 7):
        expected = int(small_primes[n - 1])
        assert nth_prime_binary_search(n).prime == expected
        assert nth_prime_sieve_bound(n).prime == expected
        assert nth_prime_cramer(n).prime == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(6, 300_000))
def test_result_invariants(n):
    r = nth_prime_cramer(n)
    assert is_prime_trial(r.prime)
    assert pi(r.prime).count == n
    b = nth_prime_binary_search(n)
    assert b.prime == r.prime
    assert b.pi_evals <= math.floor(math.log2(n)) + 2


def test_binary_search_returns_minimal_x():
    # pi is flat between primes; the smallest x with pi(x) = n is the prime itself
    n = 1000
    p = nth_prime_binary_search(n).prime
    assert pi(p).count == n and pi(p - 1).count == n - 1


def test_binary_search_with_custom_oracle():
    calls = []

    def counting(x):
        calls.append(x)
        return pi(x).count

    r = nth_prime_binary_search(500, count=counting)
    assert r.prime == 3571 and r.pi_evals == len(calls)


def test_nth_prime_dispatch():
    for algo in Algorithm:
        r = nth_prime(100, algo)
        assert r.prime == 541 and r.algorithm is algo
    assert nth_prime(100, "binary").algorithm is Algorithm.BINARY_SEARCH


def test_window_width_example():
    alpha = li_inverse(10**6).alpha
    w = cramer_window(10**6, alpha, 1.0)
    assert w.width == pytest.approx(9.80e6, rel=1e-3)
    assert w.width == pytest.approx(9801313.640907895, rel=1e-12)


def test_window_clipped_to_bracket_for_huge_c():
    n = 10**6
    w = cramer_window(n, li_inverse(n).alpha, 1e6)
    lo, hi = dusart_interval(n).as_integers
    assert (w.interval.lo, w.interval.hi) == (lo - 1, hi + 1)


def test_window_contains_p_million():
    w = cramer_window(10**6, li_inverse(10**6).alpha, DEFAULT_C0)
    assert w.interval.lo <= 15485863 <= w.interval.hi
    assert w.interval.lo >= 2


@pytest.mark.parametrize("n", [10**5, 10**6, 10**7])
def test_window_centered_up_to_clipping(n):
    alpha = li_inverse(n).alpha
    w = cramer_window(n, alpha, DEFAULT_C0)
    b_lo, b_hi = dusart_interval(n).as_integers
    assert w.interval.lo == max(math.floor(alpha - w.width), b_lo - 1)
    assert w.interval.hi == min(math.ceil(alpha + w.width), b_hi + 1)
    assert w.interval.hi == math.ceil(alpha + w.width)


def test_window_domain():
    with pytest.raises(DomainError):
        cramer_window(5, 10.0)
    with pytest.raises(DomainError):
        cramer_window(100, 500.0, 0)


def test_widening_and_fallback_keep_correctness():
    # a tiny constant forces misses; the answer must not change
    n = 50_000
    expected = nth_prime_binary_search(n).prime
    r = nth_prime_cramer(n, c0=1e-9)
    assert r.prime == expected
    assert r.widenings == 4
    assert r.pi_evals > 1
    r = nth_prime_cramer(n, c0=1e-9, max_widenings=0)
    assert r.prime == expected and r.widenings == 0


def test_widening_recovers_before_fallback():
    n = 50_000
    ratio = gap_ratio(n)
    r = nth_prime_cramer(n, c0=ratio / 3)
    assert r.prime == nth_prime_binary_search(n).prime
    assert 1 <= r.widenings <= 2


def test_precomputed_base_is_used():
    base = simple_sieve(20_000)
    r = nth_prime_cramer(10**6, base=base)
    assert r.prime == 15485863
    assert nth_prime_sieve_bound(10**5, base=base).prime == 1299709


def test_calibrated_constant_reproduces():
    c0, worst = calibrate_c0()
    assert c0 == pytest.approx(DEFAULT_C0)
    assert worst < DEFAULT_C0 / 2
    assert MIN_WINDOW_N == CALIBRATION_GRID[0] == 1000
    assert CALIBRATION_GRID[-1] == 10**7


def test_schoenfeld_examples():
    assert SCHOENFELD_K == pytest.approx(0.039788735772973836, rel=1e-15)
    assert schoenfeld_check(10**4) < 0
    r = schoenfeld_check(10**6)
    # |78498 - 78627.549| - 1000 * ln(1e6) / (8 pi)
    assert r == pytest.approx(129.5491594622 - 549.7016991596, abs=1e-6)
    with pytest.raises(DomainError):
        schoenfeld_check(2656)
