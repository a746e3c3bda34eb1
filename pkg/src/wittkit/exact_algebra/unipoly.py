"""Dense univariate polynomials over the rationals."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]

NEG_INF = float("-inf")
"""Degree of the zero polynomial."""


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


class UniPoly:
    """Immutable polynomial in ``t``; ``coeffs[k]`` is the coefficient of ``t^k``.

    Trailing zeros are stripped on construction, so the zero polynomial has
    an empty coefficient tuple and degree ``-inf``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, c: Scalar) -> UniPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> UniPoly:
        if k < 0:
            raise ValueError("negative exponent in a polynomial")
        return cls([0] * k + [c])

    @classmethod
    def t(cls) -> UniPoly:
        return cls((0, 1))

    # -- basic queries ------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly.constant(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("UniPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"UniPoly({self})"

    def __str__(self) -> str:
        from .textfmt import format_unipoly

        return format_unipoly(self)

    # -- ring operations ----------------------------------------------------
    @staticmethod
    def _coerce(other) -> UniPoly | None:
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs])
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> UniPoly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = UniPoly.constant(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Scalar) -> UniPoly:
        return self * _frac(c)

    def divmod(self, b: UniPoly) -> tuple[UniPoly, UniPoly]:
        if not b.coeffs:
            raise ZeroDivisionError("zero divisor")
        r = list(self.coeffs)
        db, lb = len(b.coeffs) - 1, b.coeffs[-1]
        if len(r) - 1 < db:
            return UniPoly(), self
        q = [Fraction(0)] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c:
                c = c / lb
                q[k - db] = c
                for i, y in enumerate(b.coeffs):
                    r[k - db + i] -= c * y
        return UniPoly(q), UniPoly(r[:db])

    __divmod__ = divmod

    def __floordiv__(self, b: UniPoly) -> UniPoly:
        return self.divmod(b)[0]

    def __mod__(self, b: UniPoly) -> UniPoly:
        return self.divmod(b)[1]

    def exact_div(self, b: UniPoly) -> UniPoly:
        q, r = self.divmod(b)
        if r:
            raise ValueError("division is not exact")
        return q

    def derivative(self) -> UniPoly:
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def compose(self, inner: UniPoly) -> UniPoly:
        """Return ``self(inner(t))`` by Horner's rule."""
        out = UniPoly()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def __call__(self, x):
        if isinstance(x, UniPoly):
            return self.compose(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        return self * (1 / self.coeffs[-1])

    def shift(self, c: Scalar) -> UniPoly:
        """Return ``self(t + c)``."""
        return self.compose(UniPoly((c, 1)))

    def primitive_ints(self) -> list[int]:
        """Integer coefficient list proportional to ``self`` with content 1 and positive lead."""
        if not self.coeffs:
            return []
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        if ints[-1] < 0:
            g = -g
        return [x // g for x in ints]


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; ``gcd(0, b) = monic(b)`` and ``gcd(0, 0) = 0``."""
    while b:
        a, b = b, a % b
    return a.monic()


def poly_arith(a: UniPoly, b: UniPoly | None, op: str):
    """Dispatch a named operation; ``b`` is ignored for ``derivative``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divrem":
        return a.divmod(b)
    if op == "compose":
        return a.compose(b)
    if op == "derivative":
        return a.derivative()
    if op == "gcd":
        return poly_gcd(a, b)
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_in_f(p: UniPoly, f: UniPoly) -> list[Fraction] | None:
    """Coefficients ``c`` with ``p = sum(c[k] * f**k)``, or ``None`` if ``p`` is not in k[f].

    Runs the f-adic expansion by repeated division; ``p`` lies in k[f]
    exactly when every remainder is a constant.
    """
    if f.degree < 1:
        raise ValueError("poly_in_f requires deg(f) >= 1")
    digits: list[Fraction] = []
    while p:
        p, r = p.divmod(f)
        if not r.is_constant():
            return None
        digits.append(r.coeff(0))
    return digits


def from_digits(digits: Sequence[Scalar], f: UniPoly) -> UniPoly:
    """Inverse of :func:`poly_in_f`: evaluate ``sum(digits[k] * f**k)``."""
    return UniPoly(digits).compose(f)
