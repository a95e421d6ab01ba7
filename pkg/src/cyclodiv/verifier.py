"""Checking f(p) | f(p^p) at primes, and the structure of polynomials that
satisfy it from p = 2 onward."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import partial
from math import lcm
from typing import Iterable, Optional

from ._parallel import chunks, ordered_map
from .cyclotomic import CycloFactorization, classify, expand
from .errors import InvariantViolation, PreconditionError
from .numtheory import factor, is_power_of, is_prime, largest_prime_factor, next_prime, primes_between
from .polycore import IntPoly, cauchy_root_bound, eval_mod

DEFAULT_SEARCH_LIMIT = 10_000


def _require_monic(f: IntPoly) -> None:
    if f.is_zero() or not f.is_monic():
        raise PreconditionError("polynomial must be monic")


def check_at_prime(f: IntPoly, p: int) -> bool:
    """True iff f(p) divides f(p^p).

    p^p is never materialized: with m = |f(p)| we reduce p^p mod m and
    evaluate f there. Zero divides only zero.
    """
    _require_monic(f)
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    m = abs(f(p))
    if m == 0:
        # p is an integer root; p^p must be one as well.
        if (p.bit_length() - 1) * p >= cauchy_root_bound(f).bit_length():
            return False
        return f(p**p) == 0
    if m == 1:
        return True
    return eval_mod(f, pow(p, p, m), m) == 0


@dataclass
class DivisibilityReport:
    """Outcome of checking f(p) | f(p^p) over every prime in [lo, hi].

    ``candidate_N`` is only empirical evidence: the prime after the last
    failure seen (or ``lo`` if none failed). ``theory_N`` is max(d) + 1 when
    f is a cyclotomic product, beyond which no failure is possible.
    """

    polynomial: IntPoly
    prime_range: tuple[int, int]
    failures: list[int]
    passes_count: int
    candidate_N: int
    theory_N: Optional[int] = None
    factorization: Optional[CycloFactorization] = None
    empirical: bool = True

    @property
    def consistent(self) -> bool:
        if self.theory_N is None:
            return True
        return not any(p >= self.theory_N for p in self.failures)

    def to_dict(self) -> dict:
        from .parser import render

        return {
            "polynomial": render(self.polynomial),
            "prime_range": list(self.prime_range),
            "failures": list(self.failures),
            "passes_count": self.passes_count,
            "candidate_N": self.candidate_N,
            "theory_N": self.theory_N,
            "in_family": self.factorization is not None,
            "factorization": self.factorization.to_dict() if self.factorization else None,
            "status": "CONSISTENT" if self.consistent else "INCONSISTENT",
            "empirical": self.empirical,
        }


def theory_threshold(c: CycloFactorization) -> int:
    """max(d) + 1 over the cyclotomic indices (1 when f is a pure power of x)."""
    return max(c.indices, default=0) + 1


def _check_all(f: IntPoly, primes: Iterable[int], threads: int) -> list[bool]:
    return ordered_map(partial(check_at_prime, f), primes, threads)


def scan(f: IntPoly, lo: int, hi: int, threads: int = 1, strict: bool = True) -> DivisibilityReport:
    """Check every prime in [lo, hi].

    With ``strict`` an INCONSISTENT report (a failure at or beyond theory_N)
    raises InvariantViolation; the report is attached as ``.report``.
    """
    _require_monic(f)
    if not 2 <= lo <= hi:
        raise PreconditionError("need 2 <= lo <= hi")
    primes = primes_between(lo, hi)
    results = _check_all(f, primes, threads)
    failures = [p for p, ok in zip(primes, results) if not ok]
    fac = classify(f).factorization
    report = DivisibilityReport(
        polynomial=f,
        prime_range=(lo, hi),
        failures=failures,
        passes_count=len(primes) - len(failures),
        candidate_N=next_prime(failures[-1]) if failures else lo,
        theory_N=theory_threshold(fac) if fac is not None else None,
        factorization=fac,
    )
    if strict and not report.consistent:
        err = InvariantViolation(
            f"failure at or beyond theory_N={report.theory_N}: {report.failures}"
        )
        err.report = report
        raise err
    return report


def find_failing_prime(
    f: IntPoly, search_limit: int = DEFAULT_SEARCH_LIMIT, threads: int = 1
) -> Optional[int]:
    """Smallest prime p <= search_limit with f(p) not dividing f(p^p), else None.

    None only means nothing was found up to the limit; it is not evidence
    that f is a cyclotomic product.
    """
    _require_monic(f)
    primes = primes_between(2, search_limit)
    for block in chunks(primes, 256):
        for p, ok in zip(block, _check_all(f, block, threads)):
            if not ok:
                return p
    return None


# -- the N = 2 analysis ----------------------------------------------------

SUFFICIENT = "sufficient_family"
NECESSARY_VIOLATED = "necessary_violated"
OBSTRUCTED = "obstructed"
UNKNOWN = "empirically_consistent_unknown"


@dataclass
class N2Verdict:
    status: str
    witness: Optional[dict] = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"status": self.status, "witness": self.witness, "notes": list(self.notes)}


def is_pure_power_of_x(f: IntPoly) -> bool:
    return f.is_monic() and not any(f.coeffs[:-1])


def n2_necessary_check(f: IntPoly) -> tuple[bool, str]:
    """A non-monomial f satisfying the property from p = 2 must vanish at 1."""
    _require_monic(f)
    if is_pure_power_of_x(f):
        return True, "pure power of x: vacuously consistent"
    v = f(1)
    if v == 0:
        return True, "f(1) = 0, so (x - 1) divides f"
    return False, f"f(1) = {v} != 0, so (x - 1) does not divide f"


def n2_sufficient_family(primes: Iterable[int]) -> CycloFactorization:
    """(x - 1) * prod Phi_p over the given distinct primes."""
    primes = list(primes)
    if len(set(primes)) != len(primes):
        raise PreconditionError("primes must be distinct")
    for p in primes:
        if not is_prime(p):
            raise PreconditionError(f"{p} is not prime")
    return CycloFactorization(0, tuple([(1, 1)] + [(p, 1) for p in sorted(primes)]))


def is_sufficient_family(c: CycloFactorization) -> bool:
    """x^e0 Phi_1^e1 prod Phi_p^e with distinct primes p and every e <= e1.

    With e <= e1 the extra copies of Phi_p(p) needed at p are supplied by
    Phi_1(p^p)^e1 = (Phi_1(p) Phi_p(p))^e1.
    """
    e1 = c.multiplicity(1)
    if not c.factors:
        return True
    if e1 == 0:
        return False
    return all(d == 1 or (is_prime(d) and e <= e1) for d, e in c.factors)


def _prime_divisors(d: int) -> list[int]:
    return [p for p, _ in factor(d).require_complete().factors]


def n2_structural_obstruction(c: CycloFactorization) -> N2Verdict:
    """Peel prime factors off indices divisible by the largest prime in play.

    Let A be the set of indices and P the largest prime dividing lcm(A). For
    d in A with P | d and a prime q | d (other than q = 2, d = 6), Phi_d(q)
    has a prime factor beyond d, and that prime can only reappear in
    f(q^q) through Phi_{d/q}. So d/q must lie in A; if it does not, f fails
    at p = q, and (d, q) is returned as the witness. When 6 is in A and
    P = 3, Phi_6(2) = 3 forces some power of 3 (possibly 1) into A, else f
    fails at p = 2.
    """
    A = set(c.indices)
    if not A - {1}:
        return N2Verdict(SUFFICIENT, notes=["only x and Phi_1 factors: x^e0 (x - 1)^e"])
    P = largest_prime_factor(lcm(*A))
    for d in sorted(A):
        if d % P:
            continue
        for q in _prime_divisors(d):
            if (q, d) == (2, 6):
                continue
            if d // q not in A:
                return N2Verdict(
                    OBSTRUCTED,
                    {"d": d, "p": q},
                    [f"{d} in A and {P} | {d}, but {d}/{q} = {d // q} is not in A; fails at p = {q}"],
                )
    if 6 in A and P == 3 and not any(is_power_of(a, 3) for a in A):
        return N2Verdict(
            OBSTRUCTED,
            {"d": 6, "p": 2},
            ["6 in A with largest prime 3, but no power of 3 in A: 3 = Phi_6(2) cannot divide f(4)"],
        )
    if 1 not in A:
        raise InvariantViolation(f"peeling closed without reaching 1 for A = {sorted(A)}")
    if is_sufficient_family(c):
        return N2Verdict(SUFFICIENT, notes=["Phi_1 times distinct prime-index cyclotomics"])
    return N2Verdict(
        UNKNOWN,
        notes=["no structural obstruction and 1 in A; not covered by the sufficient family"],
    )


def n2_analyze(f: IntPoly, check_limit: int = 1000, threads: int = 1) -> N2Verdict:
    """Classify f with respect to the property holding for every prime p >= 2."""
    _require_monic(f)
    if is_pure_power_of_x(f):
        return N2Verdict(SUFFICIENT, notes=["pure power of x"])
    cls = classify(f)
    fac = cls.factorization
    ok, reason = n2_necessary_check(f)
    failing = find_failing_prime(f, check_limit, threads)
    notes = [reason]
    if failing is not None:
        notes.append(f"empirical failure at p = {failing}")

    if fac is None:
        notes.append("not a product of x and cyclotomic polynomials")
        status = NECESSARY_VIOLATED if not ok else OBSTRUCTED
        witness = {"failing_prime": failing} if failing is not None else None
        return N2Verdict(status, witness, notes)

    structural = n2_structural_obstruction(fac)
    notes += structural.notes
    if not ok:
        witness = dict(structural.witness or {})
        if failing is not None:
            witness["failing_prime"] = failing
        return N2Verdict(NECESSARY_VIOLATED, witness or None, notes)
    if structural.status == SUFFICIENT and failing is not None:
        raise InvariantViolation(f"sufficient family fails at p = {failing}")
    if structural.status == UNKNOWN and failing is not None:
        return N2Verdict(OBSTRUCTED, {"failing_prime": failing}, notes)
    return N2Verdict(structural.status, structural.witness, notes)


# -- radical condition -----------------------------------------------------


def _radical_divides(N: int, F: int) -> bool:
    """rad(N) | F, using the factorization of N when it is within budget."""
    fm = factor(N)
    if fm.complete:
        return all(F % p == 0 for p in fm.primes)
    # Every prime of N divides F iff N | F^k with k >= max exponent in N.
    k = max(1, N.bit_length())
    return pow(F % N, k, N) == 0


@dataclass
class RadicalReport:
    polynomial: IntPoly
    n_limit: int
    checked: int
    violation: Optional[dict] = None

    @property
    def clean(self) -> bool:
        return self.violation is None

    def to_dict(self) -> dict:
        from .parser import render

        return {
            "polynomial": render(self.polynomial),
            "n_limit": self.n_limit,
            "checked": self.checked,
            "clean": self.clean,
            "violation": self.violation,
        }


def radical_property_check(f: IntPoly, n_limit: int) -> RadicalReport:
    """Check rad(f(n)) | f(n^rad(n)) for 0 <= n <= n_limit; stop at the first failure."""
    from .numtheory import radical

    if any(a < 0 for a in f.coeffs):
        raise PreconditionError("coefficients must be nonnegative")
    checked = 0
    for n in range(n_limit + 1):
        checked += 1
        value = f(n)
        if value <= 1:
            continue  # rad(0) = rad(1) = 1
        rn = radical(n)
        target_residue = eval_mod(f, pow(n, rn, value), value)
        if target_residue == 0 or _radical_divides(value, target_residue):
            continue
        fm = factor(value)
        violation = {
            "n": n,
            "rad_n": rn,
            "value": str(value),
            "radical": str(radical(value)) if fm.complete else None,
        }
        if n.bit_length() * rn <= 4096:
            violation["target"] = str(f(n**rn))
        return RadicalReport(f, n_limit, checked, violation)
    return RadicalReport(f, n_limit, checked)
