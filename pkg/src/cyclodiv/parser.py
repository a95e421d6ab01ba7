"""Recursive-descent parser for one-variable integer polynomial expressions.

Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (['*'] factor)*
    factor := primary ['^' uint]
    primary:= integer | 'x' | '(' expr ')' | 'phi' '(' uint ')'

Juxtaposition (``3x^2``) multiplies, so canonical renderings parse back.
"""

from __future__ import annotations

import re

from .cyclotomic import cyclotomic
from .errors import PolySyntaxError
from .polycore import X, IntPoly

MAX_EXPONENT = 100_000
MAX_PHI_INDEX = 100_000

_TOKEN = re.compile(r"\s*(?:(\d+)|(phi)|(x)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        num, phi, x, other = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(("int", num, start))
        elif phi is not None:
            tokens.append(("phi", phi, start))
        elif x is not None:
            tokens.append(("x", x, start))
        elif other.isspace():
            pass
        elif other in "+-*^()":
            tokens.append((other, other, start))
        else:
            raise PolySyntaxError(f"unexpected character {other!r}", start, text)
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def kind(self) -> str:
        return self.tokens[self.i][0]

    def error(self, message: str) -> PolySyntaxError:
        return PolySyntaxError(message, self.tokens[self.i][2], self.text)

    def take(self, kind: str) -> str:
        if self.kind != kind:
            want = "end of input" if kind == "end" else repr(kind)
            raise self.error(f"expected {want}")
        value = self.tokens[self.i][1]
        self.i += 1
        return value

    def uint(self, cap: int, what: str) -> int:
        offset = self.tokens[self.i][2]
        value = int(self.take("int"))
        if value > cap:
            raise PolySyntaxError(f"{what} {value} exceeds {cap}", offset, self.text)
        return value

    def expr(self) -> IntPoly:
        negate = False
        if self.kind == "-":
            self.take("-")
            negate = True
        out = self.term()
        if negate:
            out = -out
        while self.kind in "+-":
            op = self.take(self.kind)
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> IntPoly:
        out = self.factor()
        while self.kind in ("*", "int", "x", "phi", "("):
            if self.kind == "*":
                self.take("*")
            out = out * self.factor()
        return out

    def factor(self) -> IntPoly:
        base = self.primary()
        if self.kind == "^":
            self.take("^")
            base = base ** self.uint(MAX_EXPONENT, "exponent")
        return base

    def primary(self) -> IntPoly:
        kind = self.kind
        if kind == "int":
            return IntPoly((int(self.take("int")),))
        if kind == "x":
            self.take("x")
            return X
        if kind == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "phi":
            self.take("phi")
            self.take("(")
            offset = self.tokens[self.i][2]
            d = self.uint(MAX_PHI_INDEX, "cyclotomic index")
            if d == 0:
                raise PolySyntaxError("cyclotomic index must be >= 1", offset, self.text)
            self.take(")")
            return cyclotomic(d)
        if kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {self.tokens[self.i][1]!r}")


def parse_poly(text: str) -> IntPoly:
    """Parse an expression such as ``"x^4 + x^3 - x - 1"`` or ``"phi(6)*(x-1)"``."""
    if not text.strip():
        raise PolySyntaxError("empty input", 0, text)
    p = _Parser(text)
    out = p.expr()
    p.take("end")
    return out


def parse_coeffs(text: str) -> IntPoly:
    """Parse ascending comma-separated coefficients, e.g. ``"-1,-1,0,1,1"``."""
    if not text.strip():
        raise PolySyntaxError("empty input", 0, text)
    out, offset = [], 0
    for part in text.split(","):
        try:
            out.append(int(part.strip()))
        except ValueError:
            raise PolySyntaxError(f"bad coefficient {part.strip()!r}", offset, text) from None
        offset += len(part) + 1
    return IntPoly(out)


def render(f: IntPoly) -> str:
    """Canonical text: descending powers, explicit signs, no '*'."""
    if f.is_zero():
        return "0"
    parts = []
    for k in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = "x" if k == 1 else f"x^{k}"
            body = mono if a == 1 else f"{a}{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


__all__ = ["parse_poly", "parse_coeffs", "render"]
