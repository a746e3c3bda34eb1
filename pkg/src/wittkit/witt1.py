"""Polynomial vector fields on the line and their degree-bounded subalgebras.

An element ``g∂`` of W_1 = k[t]∂ is a :class:`WittElement1`; its degree is
``deg(g) - 1``, so the basis vector ``e_n = t^(n+1)∂`` has degree ``n``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ResourceLimit
from .exact_algebra import NEG_INF, UniPoly


@dataclass(frozen=True)
class WittElement1:
    g: UniPoly

    @classmethod
    def e(cls, n: int) -> WittElement1:
        if n < -1:
            raise ValueError("e_n requires n >= -1")
        return cls(UniPoly.monomial(n + 1))

    @property
    def degree(self):
        return self.g.degree - 1 if self.g else NEG_INF

    def is_zero(self) -> bool:
        return self.g.is_zero()

    def __bool__(self) -> bool:
        return bool(self.g)

    def __add__(self, other: WittElement1) -> WittElement1:
        return WittElement1(self.g + other.g)

    def __sub__(self, other: WittElement1) -> WittElement1:
        return WittElement1(self.g - other.g)

    def __neg__(self) -> WittElement1:
        return WittElement1(-self.g)

    def __mul__(self, c) -> WittElement1:
        if isinstance(c, UniPoly):
            return WittElement1(self.g * c)
        return WittElement1(self.g * Fraction(c))

    __rmul__ = __mul__

    def monic(self) -> WittElement1:
        return WittElement1(self.g.monic())

    def coefficient(self, n: int) -> Fraction:
        """Coefficient of ``e_n``."""
        return self.g.coeff(n + 1)

    def bracket(self, other: WittElement1) -> WittElement1:
        return bracket1(self, other)

    def __str__(self) -> str:
        return f"({self.g})∂"


def bracket1(u: WittElement1, v: WittElement1) -> WittElement1:
    """``[f∂, g∂] = (f g' - f' g)∂``."""
    f, g = u.g, v.g
    return WittElement1(f * g.derivative() - f.derivative() * g)


# -- integer kernels used by the closure loop ---------------------------------

def _primitive(v: list[int]) -> list[int]:
    while v and v[-1] == 0:
        v.pop()
    if not v:
        return v
    g = math.gcd(*v)
    if v[-1] < 0:
        g = -g
    if g != 1:
        v = [x // g for x in v]
    return v


def _bracket_ints(f: Sequence[int], g: Sequence[int]) -> list[int]:
    # [t^a∂, t^b∂] = (b - a) t^(a+b-1)∂
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 2) if len(f) + len(g) > 2 else []
    for a, x in enumerate(f):
        if x:
            for b, y in enumerate(g):
                if y and a != b:
                    out[a + b - 1] += (b - a) * x * y
    return _primitive(out)


def max_cells() -> int | None:
    """Memory guard from ``WITTKIT_MAX_MEGACELLS`` (millions of stored coefficients)."""
    raw = os.environ.get("WITTKIT_MAX_MEGACELLS")
    if not raw:
        return None
    return int(float(raw) * 1_000_000)


@dataclass(frozen=True)
class SubalgebraBasis1:
    """Canonical degree-echelon basis of a bracket-closed subspace, truncated in degree.

    ``elements`` are monic, in strictly increasing degree, and reduced: no
    element has a nonzero ``e_n`` coefficient at another element's leading
    degree ``n``. Everything stored has degree ``<= degree_bound - 1``.
    ``saturated`` is True when no bracket was ever dropped for exceeding the
    bound, i.e. the span is genuinely closed (finite-dimensional).
    """

    elements: tuple[WittElement1, ...]
    degree_bound: int
    saturated: bool
    brackets_evaluated: int = field(default=0, compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def degrees(self) -> list[int]:
        return [u.degree for u in self.elements]

    def member(self, u: WittElement1) -> bool:
        return member1(self, u)

    def residual(self, u: WittElement1) -> WittElement1:
        r = u.g
        for b in self.elements:
            c = r.coeff(b.g.degree)
            if c:
                r = r - b.g * c
        return WittElement1(r)


def closure(generators: Iterable[WittElement1], degree_bound: int) -> SubalgebraBasis1:
    """Bracket closure of ``generators`` inside the degrees ``<= degree_bound - 1``.

    Breadth-first over pairs: every new echelon element is bracketed with
    all earlier ones. For elements of distinct degrees n, m the bracket has
    degree exactly n + m, so pairs with n + m above the bound are dropped
    without evaluation (and the result is then not saturated).
    """
    gens = [u for u in generators]
    if not gens:
        raise ValueError("no generators")
    nonzero = [u for u in gens if u]
    D = int(degree_bound)
    if nonzero and D < max(u.degree for u in nonzero) + 1:
        raise ValueError("degree bound must exceed every generator degree")
    cap = max_cells()

    elems: list[list[int]] = []
    by_deg: dict[int, list[int]] = {}
    cells = 0

    def reduce(v: list[int]) -> list[int]:
        while v:
            b = by_deg.get(len(v) - 2)
            if b is None:
                return v
            lv, lb = v[-1], b[-1]
            g = math.gcd(lv, lb)
            lv, lb = lv // g, lb // g
            v = _primitive([lb * x - lv * y for x, y in zip(v, b)])
        return v

    def insert(v: list[int]) -> None:
        nonlocal cells
        v = reduce(v)
        if v:
            by_deg[len(v) - 2] = v
            elems.append(v)
            cells += len(v)
            if cap is not None and cells > cap:
                raise ResourceLimit("closure exceeded WITTKIT_MAX_MEGACELLS")

    for u in nonzero:
        insert(u.g.primitive_ints())

    dropped = False
    evaluated = 0
    i = 0
    while i < len(elems):
        x = elems[i]
        dx = len(x) - 2
        for j in range(i):
            y = elems[j]
            if dx + len(y) - 2 > D - 1:
                dropped = True
                continue
            evaluated += 1
            insert(_bracket_ints(x, y))
        i += 1

    return SubalgebraBasis1(_canonical(elems), D, not dropped, evaluated)


def _canonical(elems: list[list[int]]) -> tuple[WittElement1, ...]:
    polys = sorted((UniPoly(v).monic() for v in elems), key=lambda p: p.degree)
    done: list[UniPoly] = []
    for p in polys:
        for q in done:
            c = p.coeff(q.degree)
            if c:
                p = p - q * c
        # lower elements cannot involve t^deg(p), so no back-substitution is needed
        done.append(p)
    return tuple(WittElement1(p) for p in done)


def member1(basis: SubalgebraBasis1, u: WittElement1) -> bool:
    """Exact span membership by leading-degree elimination."""
    if u.degree > basis.degree_bound - 1:
        raise ValueError("out of bound")
    return basis.residual(u).is_zero()


def degree_gcd(degrees: Iterable) -> int:
    """gcd of |degrees| with gcd(0, m) = m and gcd over {0} (or nothing) = 0."""
    g = 0
    for n in degrees:
        if n != NEG_INF:
            g = math.gcd(g, abs(int(n)))
    return g


def span_elements(polys: Iterable[UniPoly]) -> list[WittElement1]:
    return [WittElement1(p) for p in polys]
