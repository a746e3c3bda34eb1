"""Truncated formal Laurent series in descending powers of ``t``.

A :class:`LaurentSeries` is an element of k((t^-1)) known only above its
truncation order: coefficients at exponents ``<= trunc`` are unknown.
Finite series that are known exactly carry ``trunc = -inf``.
Every operation propagates the tightest truncation it can prove, so
precision is never lost silently.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from ..errors import InsufficientPrecision
from .unipoly import NEG_INF, UniPoly, _frac


class LaurentSeries:
    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs: Mapping[int, object] | None = None, trunc=NEG_INF):
        if trunc != NEG_INF:
            trunc = int(trunc)
        cs = {}
        for e, c in (coeffs or {}).items():
            c = _frac(c)
            if c and e > trunc:
                cs[int(e)] = c
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "trunc", trunc)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_poly(cls, p: UniPoly, trunc=NEG_INF) -> LaurentSeries:
        return cls({k: c for k, c in enumerate(p.coeffs)}, trunc)

    @classmethod
    def monomial(cls, e: int, c=1, trunc=NEG_INF) -> LaurentSeries:
        return cls({e: c}, trunc)

    @classmethod
    def one(cls) -> LaurentSeries:
        return cls({0: 1})

    # -- queries ------------------------------------------------------------
    @property
    def exact(self) -> bool:
        return self.trunc == NEG_INF

    @property
    def top(self):
        """Largest exponent with nonzero coefficient; ``trunc`` if none is known."""
        return max(self.coeffs) if self.coeffs else self.trunc

    @property
    def lc(self) -> Fraction:
        return self.coeffs[self.top] if self.coeffs else Fraction(0)

    def is_zero_to_truncation(self) -> bool:
        return not self.coeffs

    def coeff(self, e: int) -> Fraction:
        if e <= self.trunc:
            raise InsufficientPrecision(
                f"coefficient of t^{e} is below the truncation order {self.trunc}"
            )
        return self.coeffs.get(e, Fraction(0))

    def items(self):
        """Known nonzero terms, highest exponent first."""
        return sorted(self.coeffs.items(), reverse=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.trunc, tuple(self.items())))

    def agrees_with(self, other: LaurentSeries) -> bool:
        """True when both series coincide above the larger truncation order."""
        t = max(self.trunc, other.trunc)
        keys = {e for e in self.coeffs if e > t} | {e for e in other.coeffs if e > t}
        return all(self.coeffs.get(e, 0) == other.coeffs.get(e, 0) for e in keys)

    def __repr__(self) -> str:
        return f"LaurentSeries({self})"

    def __str__(self) -> str:
        from .textfmt import format_laurent

        return format_laurent(self)

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, UniPoly):
            return LaurentSeries.from_poly(other)
        if isinstance(other, (int, Fraction)):
            return LaurentSeries({0: other})
        return None

    def truncate(self, trunc) -> LaurentSeries:
        """Forget every coefficient at exponents ``<= trunc``."""
        return LaurentSeries(self.coeffs, max(self.trunc, trunc))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in o.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentSeries(out, max(self.trunc, o.trunc))

    __radd__ = __add__

    def __neg__(self) -> LaurentSeries:
        return LaurentSeries({e: -c for e, c in self.coeffs.items()}, self.trunc)

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
            if other == 0:
                return LaurentSeries({}, self.trunc)
            return LaurentSeries({e: c * other for e, c in self.coeffs.items()}, self.trunc)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if (self.exact and not self.coeffs) or (o.exact and not o.coeffs):
            return LaurentSeries()
        trunc = max(self.trunc + o.top, o.trunc + self.top)
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in o.coeffs.items():
                e = e1 + e2
                if e > trunc:
                    out[e] = out.get(e, 0) + c1 * c2
        return LaurentSeries(out, trunc)

    __rmul__ = __mul__

    def reciprocal(self, prec=None) -> LaurentSeries:
        """Multiplicative inverse.

        A truncated input ``c t^D + ... + O(t^T)`` yields a result known to
        ``O(t^(T - 2D))``. Exact inputs need ``prec``, the truncation order
        at which to stop the (generally infinite) expansion; for truncated
        inputs ``prec`` may only tighten the answer further.
        """
        if not self.coeffs:
            raise InsufficientPrecision("not invertible at this truncation")
        D = self.top
        if self.exact:
            if len(self.coeffs) == 1:
                return LaurentSeries({-D: 1 / self.coeffs[D]})
            if prec is None:
                raise ValueError("reciprocal of an exact infinite expansion needs prec")
            trunc = int(prec)
        else:
            trunc = self.trunc - 2 * D
            if prec is not None:
                trunc = max(trunc, int(prec))
        a0 = self.coeffs[D]
        inv0 = 1 / a0
        nterms = -D - trunc  # exponents -D, -D-1, ..., trunc+1
        a = [self.coeffs.get(D - i, Fraction(0)) for i in range(nterms)]
        b: list[Fraction] = []
        for j in range(nterms):
            if j == 0:
                b.append(inv0)
                continue
            acc = Fraction(0)
            for i in range(1, j + 1):
                if a[i]:
                    acc += a[i] * b[j - i]
            b.append(-acc * inv0)
        return LaurentSeries({-D - j: c for j, c in enumerate(b)}, trunc)

    def __pow__(self, k: int) -> LaurentSeries:
        return self.power(k)

    def power(self, k: int, prec=None) -> LaurentSeries:
        if k < 0:
            return self.reciprocal(prec).power(-k)
        result, base = LaurentSeries.one(), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def derivative(self) -> LaurentSeries:
        return LaurentSeries(
            {e - 1: e * c for e, c in self.coeffs.items() if e != 0}, self.trunc - 1
        )


def laurent_arith(a: LaurentSeries, b: LaurentSeries | None, op: str, k: int | None = None,
                  prec=None) -> LaurentSeries:
    """Dispatch a named series operation (``b`` unused for unary ones)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "reciprocal":
        return a.reciprocal(prec)
    if op == "power":
        if k is None:
            raise ValueError("power needs an exponent k")
        return a.power(k, prec)
    if op == "derivative":
        return a.derivative()
    raise ValueError(f"unknown series operation {op!r}")
