"""Sparse multivariate polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .unipoly import NEG_INF, _frac

Exponent = tuple[int, ...]


class MultiPoly:
    """Immutable polynomial in ``x1..xn`` stored as ``{exponent vector: coefficient}``.

    Variable indices are 0-based in this API (``partial(0)`` is d/dx1).
    """

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: Mapping[Exponent, object] | None, nvars: int):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars or min(e) < 0:
                raise ValueError(f"bad exponent vector {e} for {nvars} variables")
            c = _frac(c)
            if c:
                clean[e] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "nvars", nvars)

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> MultiPoly:
        # trusted fast path: keys valid, values nonzero Fractions
        obj = object.__new__(cls)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "nvars", nvars)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def zero(cls, nvars: int) -> MultiPoly:
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> MultiPoly:
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exp: Exponent, c=1) -> MultiPoly:
        return cls({tuple(exp): c}, len(exp))

    @classmethod
    def var(cls, i: int, nvars: int) -> MultiPoly:
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars)

    @property
    def total_degree(self):
        return max((sum(e) for e in self.terms), default=NEG_INF)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def __str__(self) -> str:
        from .textfmt import format_multipoly

        return format_multipoly(self)

    def _check(self, other: MultiPoly):
        if other.nvars != self.nvars:
            raise ValueError("mismatched number of variables")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other, self.nvars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other, self.nvars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly.zero(self.nvars)
            return MultiPoly._raw({e: c * other for e, c in self.terms.items()}, self.nvars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw({e: c for e, c in out.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        out = MultiPoly.constant(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def partial(self, i: int) -> MultiPoly:
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MultiPoly._raw(out, self.nvars)

    def divisible_by_x_power(self, i: int, k: int) -> bool:
        """True iff every term carries ``x_{i+1}^k``."""
        return all(e[i] >= k for e in self.terms)
