"""The logarithmic integral li(x) and its inverse.

li(x) is the principal value of the integral of 1/ln t from 0 to x, so
li(2) ~= 1.0452. It is evaluated with the convergent exponential-integral
series

    li(x) = gamma + ln ln x + sum_{k>=1} u**k / (k * k!),    u = ln x,

rather than the divergent asymptotic expansion x/ln x * sum k!/(ln x)**k.
Every term is positive, so there is no cancellation: rounding error is
bounded by (number of terms) * li(x) * 2**-precision, and the tail after
term k is bounded geometrically once u / (k + 1) < 1/2. The requested
absolute error ``eps`` therefore fixes both the number of terms and the
working precision, both O(log(1/eps)).

Two evaluation paths share the series: IEEE doubles when ``eps`` is
comfortably above double rounding at that magnitude, otherwise mpmath
multiprecision floats.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import mpmath

from .bounds import dusart_interval
from .errors import DomainError, PrecisionError

EULER_GAMMA = 0.57721566490153286060651209

# the double path may lose ~ (terms + 8) ulps of li(x); stay clear of that
_DOUBLE_SAFETY = 64 * 2.0**-52

MAX_PRECISION_BITS = 4096

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LiValue:
    x: float
    value: float | mpmath.mpf
    eps: float

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class AlphaResult:
    n: int
    alpha: float
    residual: float
    evals: int
    bracket_widenings: int = 0


def _series_double(u: float, eps: float) -> float:
    total = 0.0
    term = 1.0
    k = 0
    while True:
        k += 1
        term *= u / k
        contrib = term / k
        total += contrib
        # remaining terms shrink by at least u/(k+1) each
        ratio = u / (k + 1)
        if ratio < 0.5 and 2.0 * contrib * ratio <= eps / 4:
            break
    return EULER_GAMMA + math.log(u) + total


def _series_mp(x, eps: float, magnitude: float) -> mpmath.mpf:
    u_est = math.log(float(x))
    terms_est = int(2.0 * math.e * u_est) + 64
    bits = int(math.log2(max(magnitude, 1.0) / eps) + math.log2(terms_est)) + 16
    if bits > MAX_PRECISION_BITS:
        raise PrecisionError(f"eps={eps} needs {bits} bits, more than {MAX_PRECISION_BITS}")
    with mpmath.workprec(max(bits, 53)):
        u = mpmath.log(mpmath.mpf(x))
        eps_mp = mpmath.mpf(eps) / 4
        total = mpmath.mpf(0)
        term = mpmath.mpf(1)
        k = 0
        while True:
            k += 1
            term = term * u / k
            contrib = term / k
            total += contrib
            ratio = u / (k + 1)
            if ratio < 0.5 and 2 * contrib * ratio <= eps_mp:
                break
        return +mpmath.euler + mpmath.log(u) + total


def li(x, eps: float = 1e-9) -> LiValue:
    """Logarithmic integral li(x) for x >= 2 with absolute error <= eps.

    Accepts ints, floats, strings or mpmath numbers for ``x``. The returned
    ``value`` is a float when doubles suffice for ``eps``, else an ``mpf``.
    """
    if not eps > 0:
        raise PrecisionError(f"eps must be positive, got {eps}")
    xf = float(x)
    if not xf >= 2:
        raise DomainError(f"li is evaluated for x >= 2, got {x}")
    u = math.log(xf)
    magnitude = xf / u * 1.5 + 2.0
    if eps >= magnitude * _DOUBLE_SAFETY and isinstance(x, (int, float)) and xf == x:
        value: float | mpmath.mpf = _series_double(u, eps)
    else:
        value = _series_mp(x, eps, magnitude)
    return LiValue(xf, value, eps)


def li_float(x: float) -> float:
    """Double-precision li(x); relative error a few ulps."""
    if not x >= 2:
        raise DomainError(f"li is evaluated for x >= 2, got {x}")
    u = math.log(x)
    return _series_double(u, (x / u) * 2.0**-53)


def li_inverse(n: int, tol: float = 1e-3, max_evals: int | None = None) -> AlphaResult:
    """Find alpha with |li(alpha) - n| <= tol.

    Safeguarded Newton (derivative 1/ln x) inside the bracket for p_n. If li
    does not change sign over the bracket it is widened by doubling its
    distance from the midpoint, and the number of widenings is recorded.
    """
    n = int(n)
    if n < 6:
        raise DomainError(f"li_inverse uses the p_n bracket, needs n >= 6, got {n}")
    if not tol > 0:
        raise PrecisionError(f"tol must be positive, got {tol}")
    # doubles resolve li to ~n * 2**-50; asking for less cannot be honoured
    if tol < n * 2.0**-48:
        raise PrecisionError(f"tol={tol} is below double resolution at n={n}")

    evals = 0

    def f(x: float) -> float:
        nonlocal evals
        evals += 1
        return li_float(x) - n

    bracket = dusart_interval(n)
    lo, hi = max(bracket.lo, 2.0), bracket.hi
    widenings = 0
    f_lo, f_hi = f(lo), f(hi)
    while f_lo > 0 or f_hi < 0:
        widenings += 1
        if widenings > 64:
            raise RuntimeError(f"could not bracket li(x) = {n}")
        mid = 0.5 * (lo + hi)
        half = hi - mid
        if f_lo > 0:
            lo = max(2.0, mid - 2 * half)
            f_lo = f(lo)
        if f_hi < 0:
            hi = mid + 2 * half
            f_hi = f(hi)
    if widenings:
        log.info("li(x) = %d not bracketed by (L, R); widened %d time(s)", n, widenings)

    # x-resolution corresponding to tol, since li'(x) = 1/ln x
    tol_x = tol * math.log(lo)
    budget = max_evals or 64 + math.ceil(math.log2(max(hi - lo, tol_x) / tol_x))
    x = lo - f_lo * math.log(lo)
    if not lo < x < hi:
        x = 0.5 * (lo + hi)
    while True:
        fx = f(x)
        if abs(fx) <= tol:
            break
        if fx > 0:
            hi = x
        else:
            lo = x
        if evals >= budget:
            raise RuntimeError(f"li_inverse({n}) did not converge in {evals} evaluations")
        step = x - fx * math.log(x)
        x = step if lo < step < hi else 0.5 * (lo + hi)
    return AlphaResult(n=n, alpha=x, residual=abs(fx), evals=evals, bracket_widenings=widenings)
