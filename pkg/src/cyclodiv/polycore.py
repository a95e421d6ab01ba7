"""Dense univariate polynomials with arbitrary-precision integer coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .errors import PreconditionError

#: Degree of the zero polynomial. Compares below every integer and absorbs addition.
NEG_INF = float("-inf")


def _normalize(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(a) for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    """Polynomial over Z stored as ascending coefficients (``coeffs[i]`` multiplies x^i).

    Instances are immutable and always normalized: no trailing zero, and the
    zero polynomial is the empty tuple.

    >>> IntPoly([-1, 0, 1]) * IntPoly([1, 1, 1])
    IntPoly(coeffs=(-1, -1, 0, 1, 1))
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _normalize(self.coeffs))

    # -- constructors ------------------------------------------------------
    @classmethod
    def constant(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPoly:
        return cls((0,) * k + (c,))

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    # -- structure ---------------------------------------------------------
    @property
    def degree(self) -> int | float:
        """Degree, or ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def content(self) -> int:
        g = 0
        for a in self.coeffs:
            g = gcd(g, a)
        return g

    def x_adic_valuation(self) -> int:
        """Largest e with x^e dividing self (0 for the zero polynomial)."""
        for i, a in enumerate(self.coeffs):
            if a:
                return i
        return 0

    def shift_down(self, e: int) -> IntPoly:
        """Exact quotient by x^e; the low coefficients must vanish."""
        if any(self.coeffs[:e]):
            raise PreconditionError(f"x^{e} does not divide the polynomial")
        return IntPoly(self.coeffs[e:])

    def substitute_power(self, k: int) -> IntPoly:
        """Return self(x^k) by spreading coefficients."""
        if k < 1:
            raise PreconditionError("substitution exponent must be >= 1")
        if not self.coeffs:
            return self
        out = [0] * ((len(self.coeffs) - 1) * k + 1)
        for i, a in enumerate(self.coeffs):
            out[i * k] = a
        return IntPoly(out)

    # -- arithmetic dunders --------------------------------------------------
    def __add__(self, other: IntPoly) -> IntPoly:
        return add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-a for a in self.coeffs)

    def __sub__(self, other: IntPoly) -> IntPoly:
        return add(self, -_coerce(other))

    def __rsub__(self, other: IntPoly) -> IntPoly:
        return add(_coerce(other), -self)

    def __mul__(self, other: IntPoly) -> IntPoly:
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPoly:
        if k < 0:
            raise PreconditionError("negative power")
        result, base = IntPoly((1,)), self
        while k:
            if k & 1:
                result = mul(result, base)
            k >>= 1
            if k:
                base = mul(base, base)
        return result

    def __call__(self, t: int) -> int:
        return evaluate(self, t)

    def __repr__(self) -> str:
        return f"IntPoly(coeffs={self.coeffs!r})"


def _coerce(obj) -> IntPoly:
    if isinstance(obj, IntPoly):
        return obj
    if isinstance(obj, int):
        return IntPoly((obj,))
    return NotImplemented


ZERO = IntPoly(())
ONE = IntPoly((1,))
X = IntPoly((0, 1))


def add(a: IntPoly, b: IntPoly) -> IntPoly:
    if len(a.coeffs) < len(b.coeffs):
        a, b = b, a
    out = list(a.coeffs)
    for i, c in enumerate(b.coeffs):
        out[i] += c
    return IntPoly(out)


def mul(a: IntPoly, b: IntPoly) -> IntPoly:
    """Schoolbook product."""
    if not a.coeffs or not b.coeffs:
        return ZERO
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x == 0:
            continue
        for j, y in enumerate(b.coeffs):
            out[i + j] += x * y
    return IntPoly(out)


def _check_monic_divisor(h: IntPoly) -> None:
    if h.is_zero():
        raise PreconditionError("division by the zero polynomial")
    if not h.is_monic():
        raise PreconditionError("divisor must be monic")


def divrem_monic(g: IntPoly, h: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Divide g by a monic h over Z, returning (q, r) with g = q*h + r, deg r < deg h."""
    _check_monic_divisor(h)
    n, m = len(g.coeffs), len(h.coeffs)
    if n < m:
        return ZERO, g
    rem = list(g.coeffs)
    hc = h.coeffs
    quot = [0] * (n - m + 1)
    for k in range(n - m, -1, -1):
        c = rem[k + m - 1]
        if c == 0:
            continue
        quot[k] = c
        for j in range(m - 1):
            rem[k + j] -= c * hc[j]
        rem[k + m - 1] = 0
    return IntPoly(quot), IntPoly(rem[: m - 1])


def exact_divide(g: IntPoly, h: IntPoly) -> IntPoly | None:
    """Quotient g/h if the monic h divides g exactly, else None."""
    q, r = divrem_monic(g, h)
    return q if r.is_zero() else None


def evaluate(f: IntPoly, t: int) -> int:
    acc = 0
    for a in reversed(f.coeffs):
        acc = acc * t + a
    return acc


def eval_mod(f: IntPoly, t: int, m: int) -> int:
    """f(t) mod m in [0, m), reducing after every Horner step."""
    if m <= 0:
        raise PreconditionError("modulus must be positive")
    t %= m
    acc = 0
    for a in reversed(f.coeffs):
        acc = (acc * t + a) % m
    return acc


def derivative(f: IntPoly) -> IntPoly:
    return IntPoly(i * a for i, a in enumerate(f.coeffs) if i)


def primitive_part(f: IntPoly) -> IntPoly:
    c = f.content()
    if c == 0:
        return f
    if f.leading < 0:
        c = -c
    return IntPoly(a // c for a in f.coeffs)


def pseudo_remainder(a: IntPoly, b: IntPoly) -> IntPoly:
    """prem(a, b): remainder of lc(b)^(deg a - deg b + 1) * a divided by b."""
    if b.is_zero():
        raise PreconditionError("pseudo-division by zero")
    m = len(b.coeffs)
    rem = list(a.coeffs)
    if len(rem) < m:
        return a
    lc = b.coeffs[-1]
    bc = b.coeffs
    for k in range(len(rem) - m, -1, -1):
        c = rem[k + m - 1]
        # rem <- lc*rem - c*x^k*b
        for i in range(k + m - 1):
            rem[i] *= lc
        for j in range(m - 1):
            rem[k + j] -= c * bc[j]
        rem[k + m - 1] = 0
    del rem[m - 1 :]
    return IntPoly(rem)


def gcd_primitive_prs(a: IntPoly, b: IntPoly) -> IntPoly:
    """gcd over Q, returned primitive with positive leading coefficient."""
    if a.is_zero():
        return primitive_part(b)
    if b.is_zero():
        return primitive_part(a)
    a, b = primitive_part(a), primitive_part(b)
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = pseudo_remainder(a, b)
        a, b = b, primitive_part(r) if not r.is_zero() else r
    return primitive_part(a)


def is_squarefree(f: IntPoly) -> bool:
    """True iff f has no repeated complex root, i.e. gcd(f, f') is constant."""
    if f.is_zero():
        raise PreconditionError("the zero polynomial has no squarefree decomposition")
    if f.degree < 1:
        return True
    return gcd_primitive_prs(f, derivative(f)).degree == 0


def from_roots(roots: Sequence[int]) -> IntPoly:
    out = ONE
    for r in roots:
        out = mul(out, IntPoly((-r, 1)))
    return out


def cauchy_root_bound(f: IntPoly) -> int:
    """Every complex root z of a monic f satisfies |z| <= this bound."""
    if not f.is_monic():
        raise PreconditionError("root bound implemented for monic polynomials")
    return 1 + max((abs(a) for a in f.coeffs[:-1]), default=0)
