"""Integer arithmetic: sieving, primality, desk-scale factoring, orders and
the classical arithmetic functions."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, prod
from typing import Optional

from .errors import BudgetExhausted, PreconditionError

DEFAULT_TRIAL_BOUND = 10_000
#: Composites above this size are handed back unfactored instead of running rho on them.
DEFAULT_RHO_CUTOFF = 10**24
DEFAULT_SEED = 0

#: Deterministic Miller-Rabin bases for every n < 2^64 (Jim Sinclair's seven-base set).
MR_BASES_64 = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def primes_up_to(limit: int) -> tuple[int, ...]:
    """All primes <= limit (sieve of Eratosthenes)."""
    if limit < 2:
        return ()
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def primes_between(lo: int, hi: int) -> tuple[int, ...]:
    """Primes p with lo <= p <= hi."""
    return tuple(p for p in primes_up_to(hi) if p >= lo)


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise PreconditionError("Jacobi symbol needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    D = 5
    while True:
        j = jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4

    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def half(v: int) -> int:
        v %= n
        return v // 2 if v % 2 == 0 else (v + n) // 2

    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = half(P * U + V), half(D * U + P * V)
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test.

    Deterministic below 2^64 using ``MR_BASES_64``. Above that it is the
    Baillie-PSW combination (base-2 strong test plus strong Lucas test):
    no counterexample is known, but the answer is a probable-prime verdict.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 53 * 53:
        return True
    if n < 1 << 64:
        return all(_strong_probable_prime(n, a % n) for a in MR_BASES_64 if a % n)
    if not _strong_probable_prime(n, 2):
        return False
    if isqrt(n) ** 2 == n:
        return False
    return _strong_lucas_probable_prime(n)


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    if n < 2:
        return 2
    if n == 2:
        return 3
    c = n + 1 if n % 2 == 0 else n + 2
    while not is_prime(c):
        c += 2
    return c


@dataclass(frozen=True)
class FactorMap:
    """Prime factorization, possibly partial.

    ``value == prod(p**e for p, e in factors) * (cofactor or 1)``. A cofactor
    is only present when the factoring budget ran out; it has no prime factor
    at or below ``trial_bound``.
    """

    value: int
    factors: tuple[tuple[int, int], ...]
    cofactor: Optional[int] = None
    trial_bound: int = DEFAULT_TRIAL_BOUND

    @property
    def complete(self) -> bool:
        return self.cofactor is None

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def reconstruct(self) -> int:
        return prod(p**e for p, e in self.factors) * (self.cofactor or 1)

    def require_complete(self) -> FactorMap:
        if self.cofactor is not None:
            raise BudgetExhausted(
                f"could not fully factor {self.value}: cofactor {self.cofactor} left"
            )
        return self


def _brent_rho(n: int, rng: random.Random) -> int:
    """Nontrivial factor of the odd composite n (Pollard rho, Brent's cycle finding)."""
    m = 128
    while True:
        y, c = rng.randrange(1, n), rng.randrange(1, n)
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def factor(
    n: int,
    trial_bound: int = DEFAULT_TRIAL_BOUND,
    rho_cutoff: int = DEFAULT_RHO_CUTOFF,
    seed: int = DEFAULT_SEED,
) -> FactorMap:
    """Factor n >= 1 by trial division up to ``trial_bound`` then Brent-rho.

    Composite parts larger than ``rho_cutoff`` are not attacked; they are
    multiplied together into the returned cofactor.
    """
    if n < 1:
        raise PreconditionError("factor() needs n >= 1")
    counts: dict[int, int] = {}
    m = n
    for p in _trial_primes(trial_bound):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            counts[p] = e
    leftover = 1
    if m > 1:
        rng = random.Random(f"rho:{seed}:{n}")
        stack = [m]
        while stack:
            c = stack.pop()
            if c == 1:
                continue
            if is_prime(c):
                counts[c] = counts.get(c, 0) + 1
                continue
            r = isqrt(c)
            if r * r == c:
                stack += [r, r]
                continue
            if c > rho_cutoff:
                leftover *= c
                continue
            d = _brent_rho(c, rng)
            stack += [d, c // d]
    factors = tuple(sorted(counts.items()))
    return FactorMap(n, factors, leftover if leftover > 1 else None, trial_bound)


@lru_cache(maxsize=8)
def _trial_primes(bound: int) -> tuple[int, ...]:
    return primes_up_to(bound)


def multiplicative_order(r: int, q: int, trial_bound: int = DEFAULT_TRIAL_BOUND) -> int:
    """Least k >= 1 with r^k = 1 (mod q), for q prime."""
    r %= q
    if r == 0:
        raise PreconditionError(f"{q} divides the base; no multiplicative order")
    fm = factor(q - 1, trial_bound).require_complete()
    order = q - 1
    for p, _ in fm.factors:
        while order % p == 0 and pow(r, order // p, q) == 1:
            order //= p
    return order


def _complete(n: int) -> FactorMap:
    if n < 1:
        raise PreconditionError("arithmetic functions need n >= 1")
    return factor(n).require_complete()


@lru_cache(maxsize=1 << 16)
def euler_phi(n: int) -> int:
    out = n
    for p, _ in _complete(n).factors:
        out -= out // p
    return out


def moebius(n: int) -> int:
    fm = _complete(n)
    if any(e > 1 for _, e in fm.factors):
        return 0
    return -1 if len(fm.factors) % 2 else 1


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in _complete(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def radical(n: int) -> int:
    """Product of the distinct primes dividing n; rad(0) = rad(1) = 1."""
    if n < 0:
        raise PreconditionError("radical is defined for nonnegative integers")
    if n <= 1:
        return 1
    return prod(p for p, _ in _complete(n).factors)


def largest_prime_factor(n: int) -> int | None:
    if n <= 1:
        return None
    return _complete(n).factors[-1][0]


def is_power_of(n: int, base: int) -> bool:
    """True iff n = base^a for some integer a >= 0."""
    if n < 1:
        return False
    while n % base == 0:
        n //= base
    return n == 1
