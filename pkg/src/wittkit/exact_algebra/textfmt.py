"""Polynomial text format shared by the CLI and reports.

Grammar (whitespace insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'] factor)*
    factor := atom ['^' ['-'] INT]
    atom   := INT ['/' INT] | VAR | '(' expr ')'

``VAR`` is ``t`` (univariate, or ``x1`` when n = 1) or ``x1 .. xn``.
Output uses the canonical sum-of-terms form ``c*t^k`` / ``c*x1^a*x2^b``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import MalformedInput
from .multipoly import MultiPoly
from .unipoly import UniPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|(t|x\d+)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise MalformedInput(f"unexpected character {text[pos:].strip()[:1]!r} in {text!r}")
        tok = m.group(1) or m.group(2) or m.group(3)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, nvars: int, allow_t: bool, allow_x: bool):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.nvars = nvars
        self.allow_t = allow_t
        self.allow_x = allow_x

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise MalformedInput(f"expected {expected or 'a token'} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> MultiPoly:
        if not self.toks:
            raise MalformedInput("empty polynomial")
        p = self.expr()
        if self.peek() is not None:
            raise MalformedInput(f"trailing input {self.peek()!r} in {self.text!r}")
        return p

    def expr(self) -> MultiPoly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        acc = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                acc = acc * self.factor()
            elif tok is not None and (tok == "(" or tok.isdigit() or tok[0] in "tx"):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> MultiPoly:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            tok = self.take()
            if not tok.isdigit():
                raise MalformedInput(f"exponent must be an integer in {self.text!r}")
            if neg:
                raise MalformedInput(f"negative exponent in polynomial {self.text!r}")
            base = base ** int(tok)
        return base

    def atom(self) -> MultiPoly:
        tok = self.take()
        if tok.isdigit():
            num = int(tok)
            if self.peek() == "/":
                self.take()
                den = self.take()
                if not den.isdigit() or int(den) == 0:
                    raise MalformedInput(f"bad rational literal in {self.text!r}")
                return MultiPoly.constant(Fraction(num, int(den)), self.nvars)
            return MultiPoly.constant(num, self.nvars)
        if tok == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if tok == "t":
            if not self.allow_t:
                raise MalformedInput(f"variable t not allowed with {self.nvars} variables")
            return MultiPoly.var(0, self.nvars)
        if tok.startswith("x"):
            k = int(tok[1:])
            if not self.allow_x or not 1 <= k <= self.nvars:
                raise MalformedInput(f"variable {tok} out of range in {self.text!r}")
            return MultiPoly.var(k - 1, self.nvars)
        raise MalformedInput(f"unexpected {tok!r} in {self.text!r}")


def parse_unipoly(text: str) -> UniPoly:
    """Parse a polynomial in ``t`` (``x1`` is accepted as a synonym)."""
    p = _Parser(text, 1, allow_t=True, allow_x=True).parse()
    deg = max((e[0] for e in p.terms), default=-1)
    return UniPoly([p.terms.get((k,), 0) for k in range(deg + 1)])


def parse_multipoly(text: str, nvars: int) -> MultiPoly:
    return _Parser(text, nvars, allow_t=(nvars == 1), allow_x=True).parse()


def split_top_level(text: str, sep: str) -> list[str]:
    """Split on ``sep`` outside parentheses/brackets; empty pieces are dropped."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


# -- formatting ---------------------------------------------------------------

def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _join(terms: list[tuple[Fraction, str]]) -> str:
    """Render ``[(coeff, monomial text)]``; empty monomial text means a constant."""
    if not terms:
        return "0"
    out = []
    for idx, (c, mono) in enumerate(terms):
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{format_rational(a)}*{mono}"
        else:
            body = format_rational(a)
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"-{body}" if neg else f"+{body}")
    return "".join(out)


def _tpow(k: int, var: str = "t") -> str:
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


def format_unipoly(p: UniPoly) -> str:
    return _join([(c, _tpow(k)) for k, c in reversed(list(enumerate(p.coeffs))) if c])


def format_laurent(s) -> str:
    body = _join([(c, _tpow(e)) for e, c in s.items()])
    if s.exact:
        return body
    tail = f"O({_tpow(int(s.trunc)) or '1'})"
    return tail if body == "0" else f"{body}+{tail}"


def _monomial_text(exp) -> str:
    return "*".join(_tpow(a, f"x{i + 1}") for i, a in enumerate(exp) if a)


def monomial_sort_key(exp):
    """Graded lexicographic key with x1 > x2 > ... (larger sorts later)."""
    return (sum(exp), tuple(exp))


def format_multipoly(p: MultiPoly) -> str:
    items = sorted(p.terms.items(), key=lambda kv: monomial_sort_key(kv[0]), reverse=True)
    return _join([(c, _monomial_text(e)) for e, c in items])
