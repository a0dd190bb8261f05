"""Sieve of Eratosthenes, plain and segmented.

Prime lists are returned as ascending ``numpy.int64`` arrays.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from math import isqrt

import numpy as np

from .errors import CapacityError, PreconditionError

DEFAULT_SEGMENT_SIZE = 1 << 18

# bool array entries; the odd-only table for simple_sieve needs limit/2 bytes
MAX_SIEVE_LIMIT = 4 * 10**9

_EMPTY = np.empty(0, dtype=np.int64)


def segment_size_from_env(default: int = DEFAULT_SEGMENT_SIZE) -> int:
    raw = os.environ.get("NTHPRIME_SEGMENT_SIZE")
    if not raw:
        return default
    size = int(raw)
    if size < 1:
        raise ValueError(f"NTHPRIME_SEGMENT_SIZE must be >= 1, got {raw!r}")
    return size


def simple_sieve(limit: int, max_limit: int = MAX_SIEVE_LIMIT) -> np.ndarray:
    """Return all primes <= limit.

    Odd-only table internally; the output is the same as a full sieve.
    """
    limit = int(limit)
    if limit < 0:
        raise ValueError(f"limit must be >= 0, got {limit}")
    if limit > max_limit:
        raise CapacityError(f"simple_sieve({limit}) exceeds the sieve budget of {max_limit}")
    if limit < 2:
        return _EMPTY.copy()
    # index i stands for 2*i + 1
    size = (limit - 1) // 2 + 1
    odd = np.ones(size, dtype=bool)
    odd[0] = False
    for i in range(1, (isqrt(limit) - 1) // 2 + 1):
        if odd[i]:
            p = 2 * i + 1
            odd[p * p // 2 :: p] = False
    primes = 2 * np.flatnonzero(odd).astype(np.int64) + 1
    return np.concatenate(([2], primes)).astype(np.int64)


def _check_base(hi: int, base: np.ndarray) -> np.ndarray:
    """Return the base primes needed for a window ending at hi, or raise."""
    root = isqrt(hi)
    base = np.asarray(base, dtype=np.int64)
    needed = base[base <= root]
    if root < 2:
        return needed
    reference = simple_sieve(root)
    if needed.size != reference.size or not np.array_equal(needed, reference):
        missing = np.setdiff1d(reference, needed)
        raise PreconditionError(
            f"base primes do not cover sqrt({hi}) = {root}; "
            f"missing {missing.size} prime(s), first {missing[:5].tolist()}"
        )
    return needed


def _mark_segment(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """Boolean primality flags for lo..hi (inclusive); base must be checked."""
    flags = np.ones(hi - lo + 1, dtype=bool)
    if lo < 2:
        flags[: 2 - lo] = False
    root = isqrt(hi)
    for p in base:
        p = int(p)
        if p > root:
            break
        start = max(p * p, -(-lo // p) * p)
        if start > hi:
            continue
        flags[start - lo :: p] = False
    return flags


def _segments(lo: int, hi: int, segment_size: int):
    start = lo
    while start <= hi:
        stop = min(start + segment_size - 1, hi)
        yield start, stop
        start = stop + 1


def _normalize(lo: int, hi: int, segment_size: int) -> tuple[int, int]:
    lo, hi = int(lo), int(hi)
    if lo < 0 or hi < 0:
        raise ValueError("window endpoints must be non-negative")
    if lo > hi:
        raise ValueError(f"empty window: lo={lo} > hi={hi}")
    if segment_size < 1:
        raise ValueError(f"segment_size must be >= 1, got {segment_size}")
    return max(lo, 2), hi


def segmented_sieve(
    lo: int,
    hi: int,
    base,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> np.ndarray:
    """Return the primes in [lo, hi] using base primes up to sqrt(hi).

    The window is processed ``segment_size`` integers at a time, so memory is
    bounded by the segment rather than the window. With ``threads > 1``
    segments are sieved concurrently and merged in segment order.

    Raises PreconditionError if ``base`` is missing any prime <= isqrt(hi).
    """
    lo, hi = _normalize(lo, hi, segment_size)
    if lo > hi:
        return _EMPTY.copy()
    needed = _check_base(hi, base)

    def work(seg):
        a, b = seg
        return a + np.flatnonzero(_mark_segment(a, b, needed)).astype(np.int64)

    segs = list(_segments(lo, hi, segment_size))
    if threads > 1 and len(segs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, segs))
    else:
        parts = [work(s) for s in segs]
    if not parts:
        return _EMPTY.copy()
    return np.concatenate(parts)


def count_primes_in(
    lo: int,
    hi: int,
    base,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> int:
    """Number of primes in [lo, hi]; same contract as :func:`segmented_sieve`."""
    lo, hi = _normalize(lo, hi, segment_size)
    if lo > hi:
        return 0
    needed = _check_base(hi, base)

    def work(seg):
        return int(np.count_nonzero(_mark_segment(seg[0], seg[1], needed)))

    segs = list(_segments(lo, hi, segment_size))
    if threads > 1 and len(segs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return sum(pool.map(work, segs))
    return sum(work(s) for s in segs)


def iter_segments(lo: int, hi: int, base, segment_size: int = DEFAULT_SEGMENT_SIZE):
    """Yield ``(a, b, primes)`` per segment of [lo, hi], in order.

    Lets callers stop early, e.g. when counting up to the nth prime.
    """
    lo, hi = _normalize(lo, hi, segment_size)
    if lo > hi:
        return
    needed = _check_base(hi, base)
    for a, b in _segments(lo, hi, segment_size):
        yield a, b, a + np.flatnonzero(_mark_segment(a, b, needed)).astype(np.int64)
