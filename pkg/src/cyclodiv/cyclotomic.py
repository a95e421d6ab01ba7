"""Cyclotomic polynomials, products of them, and membership in that family."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

from .errors import PreconditionError
from .numtheory import divisors, euler_phi, factor, is_prime, moebius
from .polycore import ONE, IntPoly, divrem_monic, exact_divide, mul


def _mul_binomial(c: list[int], e: int) -> list[int]:
    """c * (x^e - 1)."""
    out = [0] * (len(c) + e)
    for i, a in enumerate(c):
        out[i + e] += a
        out[i] -= a
    return out


def _div_binomial(c: list[int], e: int) -> list[int]:
    """Exact quotient c / (x^e - 1)."""
    n = len(c) - e
    q = [0] * n
    for i in range(n):
        q[i] = (q[i - e] if i >= e else 0) - c[i]
    return q


@lru_cache(maxsize=4096)
def cyclotomic(d: int) -> IntPoly:
    """The d-th cyclotomic polynomial.

    Built from prod_{e | d} (x^e - 1)^mu(d/e): multiplying or dividing by a
    binomial is linear time, which keeps d in the thousands cheap.
    """
    if d < 1:
        raise PreconditionError("cyclotomic index must be >= 1")
    num, den = [], []
    for e in divisors(d):
        mu = moebius(d // e)
        if mu == 1:
            num.append(e)
        elif mu == -1:
            den.append(e)
    c = [1]
    for e in num:
        c = _mul_binomial(c, e)
    for e in den:
        c = _div_binomial(c, e)
    return IntPoly(c)


def cyclotomic_by_division(d: int) -> IntPoly:
    """Phi_d as (x^d - 1) / prod_{e | d, e < d} Phi_e, the textbook recursion.

    Slower than :func:`cyclotomic`; kept as an independent cross-check.
    """
    if d < 1:
        raise PreconditionError("cyclotomic index must be >= 1")
    num = IntPoly.monomial(d) - ONE
    den = ONE
    for e in divisors(d)[:-1]:
        den = mul(den, cyclotomic_by_division(e))
    q = exact_divide(num, den)
    assert q is not None
    return q


@dataclass(frozen=True)
class CycloFactorization:
    """x^e0 * prod Phi_d^e over ``factors`` (pairs (d, e), d strictly ascending)."""

    e0: int = 0
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        factors = tuple((int(d), int(e)) for d, e in self.factors)
        object.__setattr__(self, "factors", factors)
        if self.e0 < 0:
            raise PreconditionError("power of x must be nonnegative")
        prev = 0
        for d, e in factors:
            if d <= prev:
                raise PreconditionError("cyclotomic indices must be distinct and ascending")
            if e < 1:
                raise PreconditionError("multiplicities must be >= 1")
            prev = d

    @classmethod
    def from_pairs(cls, e0: int, pairs) -> CycloFactorization:
        """Build from unordered (d, e) pairs, merging repeated d."""
        acc: dict[int, int] = {}
        for d, e in pairs:
            if e:
                acc[d] = acc.get(d, 0) + e
        return cls(e0, tuple(sorted(acc.items())))

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.factors)

    @property
    def degree(self) -> int:
        return self.e0 + sum(e * euler_phi(d) for d, e in self.factors)

    def multiplicity(self, d: int) -> int:
        return dict(self.factors).get(d, 0)

    def expand(self) -> IntPoly:
        return expand(self)

    def to_dict(self) -> dict:
        return {"e0": self.e0, "factors": [[d, e] for d, e in self.factors]}


def expand(c: CycloFactorization) -> IntPoly:
    out = IntPoly.monomial(c.e0)
    for d, e in c.factors:
        out = mul(out, cyclotomic(d) ** e)
    return out


@dataclass(frozen=True)
class Classification:
    """Outcome of trial-dividing f by cyclotomic polynomials.

    ``residual`` is what is left after removing x^e0 and every cyclotomic
    factor found; f is in the family exactly when the residual is 1.
    """

    e0: int
    factors: tuple[tuple[int, int], ...]
    residual: IntPoly

    @property
    def in_family(self) -> bool:
        return self.residual == ONE

    @property
    def factorization(self) -> Optional[CycloFactorization]:
        return CycloFactorization(self.e0, self.factors) if self.in_family else None


def _candidate_bound(deg: int) -> int:
    # phi(d) >= sqrt(d/2), so phi(d) <= deg forces d <= 2 deg^2.
    return 2 * deg * deg


def classify(f: IntPoly) -> Classification:
    """Strip x^e0, then divide out every Phi_d with phi(d) <= remaining degree."""
    if f.is_zero() or not f.is_monic():
        raise PreconditionError("classification needs a nonzero monic polynomial")
    e0 = f.x_adic_valuation()
    rest = f.shift_down(e0)
    found: list[tuple[int, int]] = []
    d = 1
    while rest.degree >= 1 and d <= _candidate_bound(int(rest.degree)):
        deg = int(rest.degree)
        if euler_phi(d) <= deg:
            phi_d = cyclotomic(d)
            e = 0
            while rest.degree >= phi_d.degree and _may_divide(rest, d):
                q, r = divrem_monic(rest, phi_d)
                if not r.is_zero():
                    break
                rest, e = q, e + 1
            if e:
                found.append((d, e))
        d += 1
    return Classification(e0, tuple(found), rest)


def _may_divide(rest: IntPoly, d: int) -> bool:
    # Cheap necessary condition: Phi_d(k) | rest(k) at k = 2, 3.
    for k in (2, 3):
        v = rest(k)
        if v and v % cyclotomic(d)(k):
            return False
    return True


def classify_cyclotomic_product(f: IntPoly) -> Optional[CycloFactorization]:
    """The unique CycloFactorization of f, or None when f is not in the family."""
    return classify(f).factorization


@dataclass(frozen=True)
class SubstitutionCheck:
    d: int
    p: int
    branch: str  # "p|d" or "p∤d"
    lhs: IntPoly
    rhs: IntPoly

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def cyclotomic_substitution_identity(d: int, p: int) -> SubstitutionCheck:
    """Compare Phi_d(x^p) with Phi_{pd} (if p | d) or Phi_{pd} * Phi_d (if not)."""
    if d < 1 or not is_prime(p):
        raise PreconditionError("need d >= 1 and p prime")
    lhs = cyclotomic(d).substitute_power(p)
    if d % p == 0:
        return SubstitutionCheck(d, p, "p|d", lhs, cyclotomic(p * d))
    return SubstitutionCheck(d, p, "p∤d", lhs, mul(cyclotomic(p * d), cyclotomic(d)))


def _prime_power_exponent(ratio: Fraction, p: int) -> Optional[int]:
    """a with ratio = p^a (a may be negative), or None."""
    num, den = ratio.numerator, ratio.denominator
    if num != 1 and den != 1:
        return None
    value, sign = (num, 1) if den == 1 else (den, -1)
    a = 0
    while value % p == 0:
        value //= p
        a += 1
    return sign * a if value == 1 else None


@dataclass
class SharedPrimeReport:
    n: int
    m: int
    b: int
    gcd_value: int
    shared: list[dict] = field(default_factory=list)
    budget_exhausted: bool = False
    unfactored: Optional[int] = None

    @property
    def verified(self) -> bool:
        return all(s["ratio_is_power"] for s in self.shared)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "b": self.b,
            "gcd": str(self.gcd_value),
            "shared": self.shared,
            "verified": self.verified,
            "budget_exhausted": self.budget_exhausted,
            "unfactored": None if self.unfactored is None else str(self.unfactored),
        }


def shared_prime_ratio_check(n: int, m: int, b: int, seed: int = 0) -> SharedPrimeReport:
    """For each prime dividing both Phi_n(b) and Phi_m(b), check m/n is a power of it."""
    if b < 2 or n < 1 or m < 1:
        raise PreconditionError("need n, m >= 1 and b >= 2")
    g = gcd(cyclotomic(n)(b), cyclotomic(m)(b))
    fm = factor(g, seed=seed)
    ratio = Fraction(m, n)
    report = SharedPrimeReport(n, m, b, g)
    for p, _ in fm.factors:
        a = _prime_power_exponent(ratio, p)
        report.shared.append({"prime": p, "ratio_is_power": a is not None, "exponent": a})
    if not fm.complete:
        report.budget_exhausted = True
        report.unfactored = fm.cofactor
    return report


def product_of_cyclotomics_equals(M: int) -> bool:
    """x^M - 1 == prod_{d | M} Phi_d, checked exactly."""
    if M < 1:
        raise PreconditionError("M must be >= 1")
    prod_poly = ONE
    for d in divisors(M):
        prod_poly = mul(prod_poly, cyclotomic(d))
    return prod_poly == IntPoly.monomial(M) - ONE


def family_from_indices(indices: Sequence[int], e0: int = 0) -> CycloFactorization:
    return CycloFactorization(e0, tuple((d, 1) for d in sorted(set(indices))))
