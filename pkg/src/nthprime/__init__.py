"""Compute the nth prime by binary search over pi(x), by sieving to an upper
bound, or by sieving a short window around li^-1(n)."""

__version__ = "0.1.0"

from .bounds import Interval, dusart_interval, threshold_B
from .logint import AlphaResult, LiValue, li, li_inverse
from .nth_prime import (
    Algorithm,
    CramerWindow,
    NthPrimeResult,
    cramer_window,
    nth_prime,
    nth_prime_binary_search,
    nth_prime_cramer,
    nth_prime_sieve_bound,
    schoenfeld_check,
)
from .prime_count import PiEvaluation, phi, pi
from .sieve import count_primes_in, segmented_sieve, simple_sieve

__all__ = [
    "Algorithm",
    "AlphaResult",
    "CramerWindow",
    "Interval",
    "LiValue",
    "NthPrimeResult",
    "PiEvaluation",
    "count_primes_in",
    "cramer_window",
    "dusart_interval",
    "li",
    "li_inverse",
    "nth_prime",
    "nth_prime_binary_search",
    "nth_prime_cramer",
    "nth_prime_sieve_bound",
    "phi",
    "pi",
    "schoenfeld_check",
    "segmented_sieve",
    "simple_sieve",
    "threshold_B",
]
