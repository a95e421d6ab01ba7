"""Empirical probes: how often f splits mod q, the orders of its roots, and
whether a root implication at one large split prime forces divisibility."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Optional

from ._parallel import ordered_map
from .errors import PreconditionError
from .modpoly import roots_mod, splits_completely
from .numtheory import DEFAULT_SEED, multiplicative_order, next_prime, primes_up_to
from .polycore import IntPoly, divrem_monic, eval_mod, is_squarefree


def _render(f: IntPoly) -> str:
    from .parser import render

    return render(f)


def _require_monic_squarefree(f: IntPoly, what: str) -> None:
    if f.is_zero() or not f.is_monic() or f.degree < 1:
        raise PreconditionError(f"{what} must be monic of degree >= 1")
    if not is_squarefree(f):
        raise PreconditionError(f"{what} must be squarefree (nonzero discriminant)")


@dataclass(frozen=True)
class SplitDensityReport:
    polynomial: IntPoly
    prime_limit: int
    primes_tested: int
    split_count: int

    @property
    def density(self) -> Fraction:
        return Fraction(self.split_count, self.primes_tested) if self.primes_tested else Fraction(0)

    def to_dict(self) -> dict:
        return {
            "polynomial": _render(self.polynomial),
            "prime_limit": self.prime_limit,
            "primes_tested": self.primes_tested,
            "split_count": self.split_count,
            "density": f"{self.density.numerator}/{self.density.denominator}",
            "density_decimal": f"{float(self.density):.6f}",
        }


def split_density(f: IntPoly, prime_limit: int, threads: int = 1) -> SplitDensityReport:
    """Fraction of primes q <= prime_limit for which f mod q splits into distinct linear factors."""
    _require_monic_squarefree(f, "f")
    primes = primes_up_to(prime_limit)
    flags = ordered_map(partial(splits_completely, f), primes, threads)
    return SplitDensityReport(f, prime_limit, len(primes), sum(flags))


@dataclass(frozen=True)
class OrderRecord:
    q: int
    roots: tuple[int, ...]
    orders: tuple[int, ...]


@dataclass
class OrderProfile:
    polynomial: IntPoly
    prime_limit: int
    records: list[OrderRecord] = field(default_factory=list)

    @property
    def max_order_seen(self) -> int:
        return max((max(r.orders) for r in self.records if r.orders), default=0)

    def to_dict(self) -> dict:
        return {
            "polynomial": _render(self.polynomial),
            "prime_limit": self.prime_limit,
            "split_primes": len(self.records),
            "max_order_seen": self.max_order_seen,
            "records": [
                {"q": r.q, "roots": list(r.roots), "orders": list(r.orders)} for r in self.records
            ],
        }


def _order_record(f: IntPoly, seed: int, q: int) -> Optional[OrderRecord]:
    if f.coeffs[0] % q == 0 or not splits_completely(f, q):
        return None
    roots = tuple(roots_mod(f, q, seed=seed))
    return OrderRecord(q, roots, tuple(sorted(multiplicative_order(r, q) for r in roots)))


def root_order_profile(
    f: IntPoly, prime_limit: int, seed: int = DEFAULT_SEED, threads: int = 1
) -> OrderProfile:
    """Multiplicative orders of the roots of f at each split prime q <= prime_limit.

    Primes dividing f(0) are skipped since 0 is then a root.
    """
    _require_monic_squarefree(f, "f")
    if f.coeffs[0] == 0:
        raise PreconditionError("f(0) = 0: strip the power of x first")
    recs = ordered_map(partial(_order_record, f, seed), primes_up_to(prime_limit), threads)
    return OrderProfile(f, prime_limit, [r for r in recs if r is not None])


@dataclass
class ImplicationVerdict:
    g: IntPoly
    h: IntPoly
    remainder_bound: int
    exact_divisible: bool
    primes: list[dict] = field(default_factory=list)

    @property
    def conclusive(self) -> bool:
        return any(p["probative"] for p in self.primes)

    @property
    def implication_at_qualifying_prime(self) -> Optional[bool]:
        for p in self.primes:
            if p["probative"]:
                return p["implication"]
        return None

    @property
    def consistent(self) -> bool:
        held = self.implication_at_qualifying_prime
        if held and not self.exact_divisible:
            return False
        # h | g forces the implication at every prime.
        if self.exact_divisible and not all(p["implication"] for p in self.primes):
            return False
        return True

    def to_dict(self) -> dict:
        return {
            "g": _render(self.g),
            "h": _render(self.h),
            "remainder_bound": str(self.remainder_bound),
            "exact_divisible": self.exact_divisible,
            "outcome": "conclusive" if self.conclusive else "inconclusive",
            "implication_at_qualifying_prime": self.implication_at_qualifying_prime,
            "consistent": self.consistent,
            "primes": self.primes,
        }


def _implication_record(g: IntPoly, h: IntPoly, q: int, seed: int, probative: bool) -> dict:
    roots = roots_mod(h, q, seed=seed)
    held = all(eval_mod(g, r, q) == 0 for r in roots)
    return {"q": q, "roots": roots, "implication": held, "probative": probative}


def root_implication_divides(
    g: IntPoly,
    h: IntPoly,
    prime_budget: int = 1000,
    seed: int = DEFAULT_SEED,
    small_prime_limit: int = 100,
) -> ImplicationVerdict:
    """Test 'h(k) = 0 mod q implies g(k) = 0 mod q' at split primes of h.

    Only a split prime larger than every |coefficient| of the remainder of g
    by h is probative; split primes up to ``small_prime_limit`` below that
    bound are recorded but marked non-probative. At most ``prime_budget``
    primes past the bound are tried; the scan stops at the first probative one.
    """
    if g.is_zero() or not g.is_monic():
        raise PreconditionError("g must be monic")
    _require_monic_squarefree(h, "h")
    _, r = divrem_monic(g, h)
    bound = max((abs(c) for c in r.coeffs), default=0)
    verdict = ImplicationVerdict(g, h, bound, r.is_zero())
    for q in primes_up_to(min(bound, small_prime_limit)):
        if splits_completely(h, q):
            verdict.primes.append(_implication_record(g, h, q, seed, False))
    q = bound
    for _ in range(prime_budget):
        q = next_prime(q)
        if splits_completely(h, q):
            verdict.primes.append(_implication_record(g, h, q, seed, True))
            break
    return verdict
