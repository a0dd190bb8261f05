"""Exact prime counting.

``pi`` uses the combinatorial partial-sieve recurrence over the set of
values ``{x // k}``: for every prime ``p <= sqrt(x)`` in turn, the count
``S(v)`` of integers in ``[2, v]`` that survive sieving by primes below ``p``
is updated as ``S(v) -= S(v // p) - S(p - 1)`` for all ``v >= p*p``.  This is
Legendre's ``phi`` recurrence evaluated on all ``O(sqrt x)`` distinct
quotients at once, costing ``O(x**0.75 / log x)`` element updates.

``phi`` and ``pi_legendre`` give the textbook recursive form and are used to
cross-check ``pi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import numpy as np

from .errors import PiOverflowError, PreconditionError
from .sieve import simple_sieve

PI_METHOD = "partial-sieve over floor quotients (Legendre phi recurrence, O(x^3/4))"

# correctness is checked up to 1e11; beyond this the quotient tables get large
MAX_PI_ARG = 10**14

# below this the pure-Python loop beats numpy call overhead
_NUMPY_CUTOFF = 1 << 15


@dataclass(frozen=True)
class PiEvaluation:
    x: int
    count: int
    cost: int  # element updates (pi) or phi calls (pi_legendre)


def _lucy_python(x: int) -> tuple[int, int]:
    r = isqrt(x)
    small = [max(v - 1, 0) for v in range(r + 1)]
    large = [0] + [x // i - 1 for i in range(1, r + 1)]
    cost = 0
    for p in range(2, r + 1):
        if small[p] == small[p - 1]:
            continue
        sp = small[p - 1]
        p2 = p * p
        lim = min(r, x // p2)
        k = min(lim, r // p)
        for i in range(1, k + 1):
            large[i] -= large[i * p] - sp
        xp = x // p
        for i in range(k + 1, lim + 1):
            large[i] -= small[xp // i] - sp
        for v in range(r, p2 - 1, -1):
            small[v] -= small[v // p] - sp
        cost += lim + max(0, r - p2 + 1)
    return large[1], cost


def _lucy_numpy(x: int) -> tuple[int, int]:
    r = isqrt(x)
    small = np.arange(-1, r, dtype=np.int64)
    small[0] = 0
    idx = np.arange(1, r + 1, dtype=np.int64)
    large = np.empty(r + 1, dtype=np.int64)
    large[0] = 0
    large[1:] = x // idx - 1
    values = np.arange(r + 1, dtype=np.int64)
    cost = 0
    for p in range(2, r + 1):
        if small[p] == small[p - 1]:
            continue
        sp = small[p - 1]
        p2 = p * p
        lim = min(r, x // p2)
        k = min(lim, r // p)
        # right-hand sides are evaluated before assignment, which matches the
        # sequential update order (every read is of a not-yet-updated entry)
        if k:
            large[1 : k + 1] -= large[p : k * p + 1 : p] - sp
        if lim > k:
            large[k + 1 : lim + 1] -= small[(x // p) // idx[k:lim]] - sp
        if p2 <= r:
            small[p2:] -= small[values[p2:] // p] - sp
        cost += lim + max(0, r - p2 + 1)
    return int(large[1]), cost


def pi(x: int) -> PiEvaluation:
    """Exact number of primes <= x."""
    x = int(x)
    if x < 0:
        raise ValueError(f"pi is defined for x >= 0, got {x}")
    if x > MAX_PI_ARG:
        raise PiOverflowError(f"pi({x}) exceeds the supported range x <= {MAX_PI_ARG}")
    if x < 2:
        return PiEvaluation(x, 0, 0)
    if x < _NUMPY_CUTOFF:
        count, cost = _lucy_python(x)
    else:
        count, cost = _lucy_numpy(x)
    return PiEvaluation(x, count, cost)


# Small-a tables: phi(x, a) = (x // Q) * phi(Q, a) + phi(x % Q, a), Q = p_1 * ... * p_a
_WHEEL_PRIMES = (2, 3, 5, 7, 11, 13)


@lru_cache(maxsize=None)
def _wheel_table(a: int) -> tuple[int, np.ndarray]:
    q = 1
    for p in _WHEEL_PRIMES[:a]:
        q *= p
    coprime = np.ones(q + 1, dtype=bool)
    coprime[0] = False
    for p in _WHEEL_PRIMES[:a]:
        coprime[::p] = False
    return q, np.cumsum(coprime)


class _Phi:
    def __init__(self, primes):
        self.primes = [int(p) for p in primes]
        self.calls = 0
        self.wheel = 0
        while (
            self.wheel < min(len(_WHEEL_PRIMES), len(self.primes))
            and self.primes[self.wheel] == _WHEEL_PRIMES[self.wheel]
        ):
            self.wheel += 1
        self.memo: dict[tuple[int, int], int] = {}

    def __call__(self, x: int, a: int) -> int:
        self.calls += 1
        if a == 0 or x == 0:
            return x
        if x <= self.primes[a - 1]:
            return 1
        if a <= self.wheel:
            q, table = _wheel_table(a)
            return (x // q) * int(table[q]) + int(table[x % q])
        key = (x, a)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        value = self(x, a - 1) - self(x // self.primes[a - 1], a - 1)
        self.memo[key] = value
        return value


def phi(x: int, a: int, base) -> int:
    """Count of 1 <= m <= x with no prime factor among the first ``a`` of ``base``."""
    x, a = int(x), int(a)
    if x < 0 or a < 0:
        raise ValueError("phi needs x >= 0 and a >= 0")
    if len(base) < a:
        raise PreconditionError(f"phi(x, {a}) needs {a} base primes, got {len(base)}")
    return _Phi(base[:a])(x, a)


def pi_legendre(x: int) -> PiEvaluation:
    """pi(x) = phi(x, a) + a - 1 with a = pi(sqrt x); slow, for cross-checks."""
    x = int(x)
    if x < 2:
        return PiEvaluation(x, 0, 0)
    base = simple_sieve(isqrt(x))
    a = len(base)
    f = _Phi(base)
    return PiEvaluation(x, f(x, a) + a - 1, f.calls)
