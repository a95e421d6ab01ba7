"""Primitive prime divisors of Phi_d(b).

A prime q | Phi_d(b) either has b of order exactly d modulo q (q is
primitive, and then q = 1 mod d) or q is the largest prime factor of d.
Dividing that one prime out of Phi_d(b) therefore leaves a cofactor made
only of primitive primes, so existence is decided without factoring.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Optional

from ._parallel import ordered_map
from .cyclotomic import cyclotomic
from .errors import InvariantViolation, PreconditionError
from .numtheory import DEFAULT_SEED, factor, is_power_of, is_prime, largest_prime_factor

#: Trial-division reach (over q = 1 mod d) when hunting the smallest primitive prime.
DEFAULT_PRIMITIVE_BUDGET = 10**7
_FACTOR_TRIAL_BOUND = 10_000

NONE, B2_D1, B2_D6, MERSENNE_D2 = "none", "b2_d1", "b2_d6", "mersenne_d2"


def exception_tag(b: int, d: int) -> str:
    if b == 2 and d == 1:
        return B2_D1
    if b == 2 and d == 6:
        return B2_D6
    if d == 2 and is_power_of(b + 1, 2):
        return MERSENNE_D2
    return NONE


@dataclass(frozen=True)
class PrimitiveDivisorReport:
    b: int
    d: int
    value: int
    exception_tag: str
    nonprimitive_part: int
    primitive_cofactor: int
    smallest_primitive_prime: Optional[int]
    cofactor_unfactored: bool

    @property
    def has_primitive(self) -> bool:
        return self.primitive_cofactor > 1

    def to_dict(self) -> dict:
        return {
            "b": self.b,
            "d": self.d,
            "value": str(self.value),
            "exception_tag": self.exception_tag,
            "nonprimitive_part": str(self.nonprimitive_part),
            "primitive_cofactor": str(self.primitive_cofactor),
            "smallest_primitive_prime": (
                None if self.smallest_primitive_prime is None else str(self.smallest_primitive_prime)
            ),
            "cofactor_unfactored": self.cofactor_unfactored,
        }


def _smallest_prime_in_progression(n: int, d: int, limit: int) -> Optional[int]:
    """Smallest q = 1 (mod d), q <= limit, dividing n.

    All prime factors of n are 1 mod d, so the first hit is prime.
    """
    q = d + 1 if d > 1 else 2
    stop = min(limit, isqrt(n))
    while q <= stop:
        if n % q == 0:
            return q
        q += d
    return None


def _smallest_primitive_prime(cof: int, d: int, budget: int, seed: int) -> tuple[Optional[int], bool]:
    """(smallest prime of cof or None, whether cof stayed partly unfactored)."""
    if cof == 1:
        return None, False
    if is_prime(cof):
        return cof, False
    fm = factor(cof, trial_bound=min(budget, _FACTOR_TRIAL_BOUND), seed=seed)
    if fm.complete:
        return fm.primes[0], False
    small = [q for q in fm.primes if q <= fm.trial_bound]
    if small:
        return small[0], True
    # Every prime left in the cofactor exceeds the trial bound.
    hit = _smallest_prime_in_progression(fm.cofactor, d, budget)
    found = [q for q in fm.primes] + ([hit] if hit else [])
    if hit is not None:
        return min(found), True
    below = [q for q in fm.primes if q <= budget]
    return (min(below) if below else None), True


def analyze(b: int, d: int, budget: int = DEFAULT_PRIMITIVE_BUDGET, seed: int = DEFAULT_SEED) -> PrimitiveDivisorReport:
    if b < 2:
        raise PreconditionError("base must be >= 2")
    if d < 1:
        raise PreconditionError("index must be >= 1")
    value = cyclotomic(d)(b)
    cof, nonprim = value, 1
    ell = largest_prime_factor(d)
    if ell is not None:
        while cof % ell == 0:
            cof //= ell
            nonprim *= ell
        if d > 2 and nonprim not in (1, ell):
            raise InvariantViolation(f"{ell}^k with k > 1 divides Phi_{d}({b})")
    smallest, unfactored = _smallest_primitive_prime(cof, d, budget, seed)
    report = PrimitiveDivisorReport(
        b=b,
        d=d,
        value=value,
        exception_tag=exception_tag(b, d),
        nonprimitive_part=nonprim,
        primitive_cofactor=cof,
        smallest_primitive_prime=smallest,
        cofactor_unfactored=unfactored,
    )
    if report.exception_tag == NONE and not report.has_primitive:
        raise InvariantViolation(f"no primitive prime divisor for (b, d) = ({b}, {d})")
    if smallest is not None and (smallest <= d or smallest % d != 1 % d):
        raise InvariantViolation(f"primitive prime {smallest} of Phi_{d}({b}) is not 1 mod {d}")
    return report


def scan(
    b_max: int,
    d_max: int,
    budget: int = DEFAULT_PRIMITIVE_BUDGET,
    seed: int = DEFAULT_SEED,
    threads: int = 1,
) -> list[PrimitiveDivisorReport]:
    """analyze() over 2 <= b <= b_max, 1 <= d <= d_max, ordered by (b, d).

    Raises InvariantViolation unless the cells without a primitive prime are
    exactly the tagged exceptions.
    """
    if b_max < 2 or d_max < 1:
        raise PreconditionError("need b_max >= 2 and d_max >= 1")
    cells = [(b, d) for b in range(2, b_max + 1) for d in range(1, d_max + 1)]
    reports = ordered_map(lambda bd: analyze(bd[0], bd[1], budget, seed), cells, threads)
    for r in reports:
        if (r.exception_tag != NONE) == r.has_primitive:
            raise InvariantViolation(
                f"exception tag {r.exception_tag!r} disagrees with cofactor {r.primitive_cofactor} "
                f"at (b, d) = ({r.b}, {r.d})"
            )
    return reports


def primitivity_oracle(b: int, d: int, q: int) -> bool:
    """Brute force: q | Phi_d(b) and q divides no Phi_i(b) with i < d."""
    if not q > 1 or cyclotomic(d)(b) % q:
        raise PreconditionError(f"{q} does not divide Phi_{d}({b})")
    return all(cyclotomic(i)(b) % q for i in range(1, d))
