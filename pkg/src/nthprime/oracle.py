"""Reference computations that share no code path with the fast ones.

Used by ``verify`` and by the test suite.
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt

import mpmath
import numpy as np


def is_prime_trial(m: int) -> bool:
    m = int(m)
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    for d in range(3, isqrt(m) + 1, 2):
        if m % d == 0:
            return False
    return True


def primes_upto(limit: int) -> np.ndarray:
    """Plain full-table Eratosthenes, no odd-only trick, no segmentation."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def li_quadrature(x, dps: int = 30) -> mpmath.mpf:
    """Principal-value li(x) by numerical quadrature.

    The pole at t = 1 is removed by subtracting 1/(t - 1), whose principal
    value over [0, 2] is zero:

        li(x) = int_0^2 (1/ln t - 1/(t - 1)) dt + int_2^x dt/ln t
    """
    with mpmath.workdps(dps):
        x = mpmath.mpf(x)
        head = mpmath.quad(lambda t: 1 / mpmath.log(t) - 1 / (t - 1), [0, 1, 2])
        if x == 2:
            return +head
        # log-spaced breakpoints keep each panel well resolved
        pts = [mpmath.mpf(2)]
        while pts[-1] * 8 < x:
            pts.append(pts[-1] * 8)
        pts.append(x)
        return head + mpmath.quad(lambda t: 1 / mpmath.log(t), pts)


@lru_cache(maxsize=4)
def prime_table(limit: int) -> np.ndarray:
    return primes_upto(limit)
