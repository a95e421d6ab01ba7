"""Which monic integer polynomials satisfy f(p) | f(p^p) for all large primes p.

They are exactly x^e0 times products of cyclotomic polynomials. This package
decides membership, checks the divisibility at primes, and provides the
number-theoretic tools around it.
"""

__version__ = "0.1.0"

from .cyclotomic import (
    CycloFactorization,
    classify,
    classify_cyclotomic_product,
    expand,
)
from .parser import parse_poly, render
from .polycore import IntPoly
from .verifier import check_at_prime, find_failing_prime, scan

__all__ = [
    "CycloFactorization",
    "IntPoly",
    "check_at_prime",
    "classify",
    "classify_cyclotomic_product",
    "expand",
    "find_failing_prime",
    "parse_poly",
    "render",
    "scan",
]
