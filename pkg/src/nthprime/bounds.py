"""Explicit bracket for the nth prime and the interval-size break-even point."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    @property
    def as_integers(self) -> tuple[int, int]:
        """Outward-rounded integer endpoints (floor lo, ceil hi)."""
        return math.floor(self.lo), math.ceil(self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi


def dusart_interval(n: int) -> Interval:
    """Open bracket (L, R) around p_n, valid for n >= 6.

    L = n (ln n + ln ln n - 1) and R = n (ln n + ln ln n), so R - L = n.
    """
    n = int(n)
    if n < 6:
        raise DomainError(f"the bracket holds for n >= 6, got n={n}")
    hi = n * (math.log(n) + math.log(math.log(n)))
    return Interval(hi - n, hi)


def threshold_B(n: int, c: float = 1.0) -> float:
    """Largest window size for which sieving a window beats binary search.

    Returns sqrt(n) (ln n)^4 / (c ln ln n). ``c`` is the unknown constant of
    the comparison and defaults to 1.
    """
    if c <= 0:
        raise DomainError(f"c must be positive, got {c}")
    if n <= math.e:
        raise DomainError(f"ln ln n must be positive, got n={n}")
    ln = math.log(n)
    return math.sqrt(n) * ln**4 / (c * math.log(ln))
