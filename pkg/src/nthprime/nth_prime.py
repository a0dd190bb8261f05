"""Three ways to find the nth prime.

* ``nth_prime_binary_search``: bisect the p_n bracket with exact pi(x).
* ``nth_prime_sieve_bound``: sieve from 2 up to the bracket's upper end.
* ``nth_prime_cramer``: solve li(alpha) = n, sieve a short window around
  alpha whose half-width grows like sqrt(n) (ln n)^3.5, then locate p_n
  inside it with a single pi evaluation.

The window width rests on the Riemann hypothesis plus Cramer's gap
conjecture; neither is assumed for correctness. A window that misses p_n is
widened, and after ``max_widenings`` attempts the search falls back to
binary search.
"""

from __future__ import annotations

import enum
import logging
import math
import time
from dataclasses import dataclass
from math import isqrt
from typing import Callable, Iterable

from .bounds import Interval, dusart_interval
from .errors import DomainError
from .logint import li_float, li_inverse
from .prime_count import pi
from .sieve import DEFAULT_SEGMENT_SIZE, iter_segments, segmented_sieve, simple_sieve

SMALL_PRIMES = (2, 3, 5, 7, 11)

SCHOENFELD_K = 1 / (8 * math.pi)
SCHOENFELD_MIN_X = 2657

# Window constant: 2 * max |alpha - p_n| / (sqrt(n) (ln n)^3.5) over
# CALIBRATION_GRID, rounded up. Reproduce with calibrate_c0().
DEFAULT_C0 = 0.0114
CALIBRATION_GRID = tuple(round(10 ** (k / 4)) for k in range(12, 29))
# below the calibrated range the window is the whole bracket
MIN_WINDOW_N = CALIBRATION_GRID[0]

MAX_WIDENINGS = 4

log = logging.getLogger(__name__)


class Algorithm(str, enum.Enum):
    BINARY_SEARCH = "binary"
    SIEVE_TO_BOUND = "sieve"
    CRAMER_INTERVAL = "cramer"


@dataclass
class NthPrimeResult:
    n: int
    prime: int
    algorithm: Algorithm
    pi_evals: int = 0
    cells_sieved: int = 0
    widenings: int = 0
    wall_time_ns: int = 0

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "prime": self.prime,
            "algorithm": self.algorithm.value,
            "pi_evals": self.pi_evals,
            "cells_sieved": self.cells_sieved,
            "widenings": self.widenings,
            "wall_time_ns": self.wall_time_ns,
        }


@dataclass(frozen=True)
class CramerWindow:
    alpha: float
    width: float
    interval: Interval  # integer endpoints; lo > hi means the clipped window is empty
    constant: float

    @property
    def size(self) -> int:
        return max(0, int(self.interval.hi) - int(self.interval.lo) + 1)


def _check_n(n) -> int:
    n = int(n)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return n


def _small(n: int, algorithm: Algorithm, start: int) -> NthPrimeResult:
    return NthPrimeResult(
        n, SMALL_PRIMES[n - 1], algorithm, wall_time_ns=time.perf_counter_ns() - start
    )


def nth_prime_binary_search(
    n: int, count: Callable[[int], int] | None = None
) -> NthPrimeResult:
    """Smallest x with pi(x) = n, by bisection over the p_n bracket.

    Uses at most ceil(log2(n + 2)) <= floor(log2 n) + 2 evaluations of the
    counting function. ``count`` replaces the default exact pi.
    """
    start = time.perf_counter_ns()
    n = _check_n(n)
    if n <= len(SMALL_PRIMES):
        return _small(n, Algorithm.BINARY_SEARCH, start)
    if count is None:
        count = lambda x: pi(x).count  # noqa: E731
    lo, hi = dusart_interval(n).as_integers
    lo += 1  # L < p_n strictly; p_n <= hi by the upper bound
    evals = 0
    while lo < hi:
        mid = (lo + hi) // 2
        evals += 1
        if count(mid) >= n:
            hi = mid
        else:
            lo = mid + 1
    return NthPrimeResult(
        n, lo, Algorithm.BINARY_SEARCH, pi_evals=evals,
        wall_time_ns=time.perf_counter_ns() - start,
    )


def sieve_limit(n: int) -> int:
    """Upper sieve limit ceil(R); 15 for n < 6."""
    n = _check_n(n)
    if n < 6:
        return 15
    return dusart_interval(n).as_integers[1]


def nth_prime_sieve_bound(
    n: int, base=None, segment_size: int = DEFAULT_SEGMENT_SIZE
) -> NthPrimeResult:
    """Sieve [2, ceil(R)] segment by segment and count up to the nth prime."""
    start = time.perf_counter_ns()
    n = _check_n(n)
    limit = sieve_limit(n)
    if base is None:
        base = simple_sieve(isqrt(limit))
    seen = 0
    cells = 0
    for a, b, primes in iter_segments(2, limit, base, segment_size):
        cells += b - a + 1
        if seen + primes.size >= n:
            prime = int(primes[n - seen - 1])
            return NthPrimeResult(
                n, prime, Algorithm.SIEVE_TO_BOUND, cells_sieved=cells,
                wall_time_ns=time.perf_counter_ns() - start,
            )
        seen += primes.size
    raise AssertionError(f"fewer than {n} primes below {limit}; the upper bound failed")


def window_width(n: int, c: float) -> float:
    return c * math.sqrt(n) * math.log(n) ** 3.5


def cramer_window(n: int, alpha: float, c: float = DEFAULT_C0) -> CramerWindow:
    """Integer window [floor(alpha - w), ceil(alpha + w)] with w = c sqrt(n) (ln n)^3.5.

    Clipped to [2, inf) and to the p_n bracket widened by one on each side.
    """
    n = int(n)
    if n < 6:
        raise DomainError(f"cramer_window needs n >= 6, got {n}")
    if not c > 0:
        raise DomainError(f"c must be positive, got {c}")
    width = window_width(n, c)
    b_lo, b_hi = dusart_interval(n).as_integers
    if math.isinf(width):
        lo, hi = b_lo - 1, b_hi + 1
    else:
        lo = max(math.floor(alpha - width), b_lo - 1)
        hi = min(math.ceil(alpha + width), b_hi + 1)
    return CramerWindow(alpha, width, Interval(max(lo, 2), hi), c)


def nth_prime_cramer(
    n: int,
    c0: float = DEFAULT_C0,
    max_widenings: int = MAX_WIDENINGS,
    base=None,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    li_tol: float = 1e-3,
    threads: int = 1,
) -> NthPrimeResult:
    """nth prime from a sieved window around li^-1(n) plus one pi evaluation.

    ``base`` (primes up to sqrt of the largest window end) may be supplied to
    keep base-prime sieving out of the measured cost.
    """
    start = time.perf_counter_ns()
    n = _check_n(n)
    if n <= len(SMALL_PRIMES):
        return _small(n, Algorithm.CRAMER_INTERVAL, start)
    alpha = li_inverse(n, tol=li_tol).alpha
    c = c0 if n >= MIN_WINDOW_N else math.inf
    evals = cells = widenings = 0
    while True:
        window = cramer_window(n, alpha, c)
        lo, hi = int(window.interval.lo), int(window.interval.hi)
        if lo <= hi:
            window_base = base if base is not None else simple_sieve(isqrt(hi))
            primes = segmented_sieve(lo, hi, window_base, segment_size, threads)
            cells += hi - lo + 1
            if primes.size:
                # anchor: global index of the smallest prime in the window
                m = pi(int(primes[0])).count
                evals += 1
                if m <= n and n - m < primes.size:
                    return NthPrimeResult(
                        n, int(primes[n - m]), Algorithm.CRAMER_INTERVAL,
                        pi_evals=evals, cells_sieved=cells, widenings=widenings,
                        wall_time_ns=time.perf_counter_ns() - start,
                    )
        if widenings >= max_widenings:
            break
        widenings += 1
        c *= 2
        log.info("window for n=%d missed p_n; widening to c=%g", n, c)
    log.warning("window for n=%d missed p_n after %d widenings; binary search", n, widenings)
    fallback = nth_prime_binary_search(n)
    return NthPrimeResult(
        n, fallback.prime, Algorithm.CRAMER_INTERVAL,
        pi_evals=evals + fallback.pi_evals, cells_sieved=cells, widenings=widenings,
        wall_time_ns=time.perf_counter_ns() - start,
    )


ALGORITHMS = {
    Algorithm.BINARY_SEARCH: nth_prime_binary_search,
    Algorithm.SIEVE_TO_BOUND: nth_prime_sieve_bound,
    Algorithm.CRAMER_INTERVAL: nth_prime_cramer,
}


def nth_prime(n: int, algorithm: Algorithm | str = Algorithm.CRAMER_INTERVAL) -> NthPrimeResult:
    return ALGORITHMS[Algorithm(algorithm)](n)


def gap_ratio(n: int, p_n: int | None = None, alpha: float | None = None) -> float:
    """|alpha - p_n| / (sqrt(n) (ln n)^3.5), the quantity the window constant bounds."""
    if p_n is None:
        p_n = nth_prime_binary_search(n).prime
    if alpha is None:
        alpha = li_inverse(n).alpha
    return abs(alpha - p_n) / window_width(n, 1.0)


def calibrate_c0(grid: Iterable[int] = CALIBRATION_GRID) -> tuple[float, float]:
    """Return (c0, max ratio) with c0 = 2 * max gap_ratio over ``grid``, rounded up to 3 digits."""
    worst = max(gap_ratio(n) for n in grid)
    scale = 10 ** (math.floor(math.log10(2 * worst)) - 2)
    return math.ceil(2 * worst / scale) * scale, worst


def schoenfeld_check(x: int) -> float:
    """|pi(x) - li(x)| - sqrt(x) ln(x) / (8 pi); negative where the bound holds."""
    x = int(x)
    if x < SCHOENFELD_MIN_X:
        raise DomainError(f"the bound is checked for x >= {SCHOENFELD_MIN_X}, got {x}")
    return abs(pi(x).count - li_float(x)) - SCHOENFELD_K * math.sqrt(x) * math.log(x)
