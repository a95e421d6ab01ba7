"""Polynomials over a prime field F_p: splitting tests and root extraction.

Only linear factors are ever extracted; there is no general factorization
over F_p here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import PreconditionError
from .numtheory import DEFAULT_SEED, is_prime
from .polycore import IntPoly

#: Below this modulus roots are found by evaluating at every residue.
ROOT_BRUTE_FORCE_LIMIT = 256
MAX_MODULUS = 1 << 64

Coeffs = list[int]


@lru_cache(maxsize=4096)
def _checked_modulus(p: int) -> int:
    if not 2 <= p < MAX_MODULUS or not is_prime(p):
        raise PreconditionError(f"modulus {p} is not a 64-bit prime")
    return p


def _trim(c: Coeffs) -> Coeffs:
    while c and c[-1] == 0:
        c.pop()
    return c


@dataclass(frozen=True)
class FpPoly:
    """Polynomial with coefficients in [0, p), ascending, normalized."""

    p: int
    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        _checked_modulus(self.p)
        object.__setattr__(self, "coeffs", tuple(_trim([a % self.p for a in self.coeffs])))

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> FpPoly:
        if not self.coeffs:
            return self
        inv = pow(self.coeffs[-1], -1, self.p)
        return FpPoly(self.p, [a * inv for a in self.coeffs])

    def __call__(self, t: int) -> int:
        acc = 0
        for a in reversed(self.coeffs):
            acc = (acc * t + a) % self.p
        return acc


# -- list-level kernels (coefficients already reduced) --------------------


def _sub(a: Coeffs, b: Coeffs, p: int) -> Coeffs:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def _mul(a: Coeffs, b: Coeffs, p: int) -> Coeffs:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _rem(a: Coeffs, b: Coeffs, p: int) -> Coeffs:
    """Remainder of a modulo the nonzero b."""
    m = len(b)
    if len(a) < m:
        return list(a)
    rem = list(a)
    inv = pow(b[-1], -1, p)
    for k in range(len(rem) - m, -1, -1):
        c = rem[k + m - 1] * inv % p
        if c:
            for j in range(m - 1):
                rem[k + j] = (rem[k + j] - c * b[j]) % p
        rem[k + m - 1] = 0
    return _trim(rem[: m - 1])


def _monic(a: Coeffs, p: int) -> Coeffs:
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _gcd(a: Coeffs, b: Coeffs, p: int) -> Coeffs:
    while b:
        a, b = b, _rem(a, b, p)
    return _monic(a, p)


def _powmod(base: Coeffs, e: int, mod: Coeffs, p: int) -> Coeffs:
    result = [1] if len(mod) > 1 else []
    base = _rem(base, mod, p)
    while e:
        if e & 1:
            result = _rem(_mul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = _rem(_mul(base, base, p), mod, p)
    return result


# -- public operations -----------------------------------------------------


def reduce(f: IntPoly, p: int) -> FpPoly:
    return FpPoly(p, f.coeffs)


def powmod_x(q_exp: int, h: FpPoly) -> FpPoly:
    """x^q_exp reduced modulo the monic h (deg h >= 1)."""
    if h.degree < 1 or h.coeffs[-1] != 1:
        raise PreconditionError("modulus polynomial must be monic of degree >= 1")
    return FpPoly(h.p, _powmod([0, 1], q_exp, list(h.coeffs), h.p))


def gcd_fp(a: FpPoly, b: FpPoly) -> FpPoly:
    if a.p != b.p:
        raise PreconditionError(f"modulus mismatch: {a.p} vs {b.p}")
    return FpPoly(a.p, _gcd(list(a.coeffs), list(b.coeffs), a.p))


def _linear_part(fbar: Coeffs, q: int) -> Coeffs:
    """gcd(x^q - x, fbar): product of the distinct linear factors of fbar."""
    fbar = _monic(fbar, q)
    if len(fbar) <= 1:
        return [1]
    xq = _powmod([0, 1], q, fbar, q)
    return _gcd(fbar, _sub(xq, [0, 1], q), q)


def splits_completely(f: IntPoly, q: int) -> bool:
    """True iff f mod q is a product of deg(f) distinct linear factors."""
    if f.degree < 1:
        raise PreconditionError("splitting test needs degree >= 1")
    _checked_modulus(q)
    fbar = _trim([a % q for a in f.coeffs])
    if len(fbar) != len(f.coeffs):
        return False
    return len(_linear_part(fbar, q)) - 1 == f.degree


def _split_linear(g: Coeffs, q: int, rng: random.Random, out: list[int]) -> None:
    # g is monic, squarefree and a product of linear factors over F_q.
    stack = [g]
    while stack:
        g = stack.pop()
        d = len(g) - 1
        if d == 0:
            continue
        if d == 1:
            out.append(-g[0] % q)
            continue
        if q == 2:
            out.extend(r for r in (0, 1) if _eval(g, r, q) == 0)
            continue
        while True:
            a = rng.randrange(q)
            w = _powmod([a, 1], (q - 1) // 2, g, q)
            h = _gcd(g, _sub(w, [1], q), q)
            if 1 < len(h) < len(g):
                break
        quot = _exact_quot(g, h, q)
        stack += [h, quot]


def _exact_quot(a: Coeffs, b: Coeffs, p: int) -> Coeffs:
    m = len(b)
    rem = list(a)
    quot = [0] * (len(a) - m + 1)
    inv = pow(b[-1], -1, p)
    for k in range(len(rem) - m, -1, -1):
        c = rem[k + m - 1] * inv % p
        quot[k] = c
        for j in range(m):
            rem[k + j] = (rem[k + j] - c * b[j]) % p
    return _trim(quot)


def _eval(c: Coeffs, t: int, p: int) -> int:
    acc = 0
    for a in reversed(c):
        acc = (acc * t + a) % p
    return acc


def roots_mod(
    f: IntPoly,
    q: int,
    seed: int = DEFAULT_SEED,
    brute_force_limit: int = ROOT_BRUTE_FORCE_LIMIT,
) -> list[int]:
    """Sorted residues r in [0, q) with f(r) = 0 mod q.

    Small moduli are searched exhaustively. Otherwise the linear part
    gcd(x^q - x, f mod q) is split by random gcds with (x + a)^((q-1)/2) - 1;
    the generator is derived from (seed, q, f) so results never depend on
    call order.
    """
    _checked_modulus(q)
    fbar = _trim([a % q for a in f.coeffs])
    if not fbar:
        raise PreconditionError(f"polynomial vanishes identically mod {q}")
    if q <= brute_force_limit:
        return [r for r in range(q) if _eval(fbar, r, q) == 0]
    g = _linear_part(fbar, q)
    rng = random.Random(f"roots:{seed}:{q}:{f.coeffs}")
    out: list[int] = []
    _split_linear(g, q, rng, out)
    return sorted(out)


def modp_divides(h: IntPoly, g: IntPoly, p: int) -> bool:
    """True iff (h mod p) divides (g mod p) in F_p[x]."""
    _checked_modulus(p)
    hbar = _trim([a % p for a in h.coeffs])
    if not hbar:
        raise PreconditionError(f"divisor vanishes mod {p}")
    gbar = _trim([a % p for a in g.coeffs])
    return not _rem(gbar, hbar, p)
