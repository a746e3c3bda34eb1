"""Vector fields on affine n-space and the filtration, growth and counting tools around them.

Elements of W_n are :class:`WittElementN` (one :class:`MultiPoly` per
``∂_i``). Inside linear algebra they become sparse vectors keyed by
``(i, exponent)`` for the monomial field ``x^exponent ∂_(i+1)``.
Components are 0-based internally; the filtration index ``(i, j)`` uses
``j`` in ``0..n`` exactly as in the notation ``L_ij``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .errors import ResourceLimit
from .exact_algebra import EchelonSpace, GradedSpace, MultiPoly
from .witt1 import max_cells

Key = tuple  # (component, exponent tuple)


@dataclass(frozen=True)
class WittElementN:
    """``sum_i comps[i] ∂_(i+1)``."""

    comps: tuple

    def __post_init__(self):
        comps = tuple(self.comps)
        if not comps:
            raise ValueError("a vector field needs at least one component")
        n = comps[0].nvars
        if len(comps) != n or any(c.nvars != n for c in comps):
            raise ValueError("components must all be polynomials in the same n variables")
        object.__setattr__(self, "comps", comps)

    @property
    def nvars(self) -> int:
        return len(self.comps)

    @classmethod
    def zero(cls, n: int) -> WittElementN:
        return cls(tuple(MultiPoly.zero(n) for _ in range(n)))

    @classmethod
    def monomial(cls, i: int, exp: Sequence[int], c=1) -> WittElementN:
        """``c x^exp ∂_(i+1)`` (``i`` 0-based)."""
        n = len(exp)
        comps = [MultiPoly.zero(n)] * n
        comps[i] = MultiPoly.monomial(tuple(exp), c)
        return cls(tuple(comps))

    @classmethod
    def from_vector(cls, v: dict, n: int) -> WittElementN:
        parts: list[dict] = [{} for _ in range(n)]
        for (i, e), c in v.items():
            parts[i][e] = c
        return cls(tuple(MultiPoly(p, n) for p in parts))

    def vector(self) -> dict:
        return {(i, e): c for i, p in enumerate(self.comps) for e, c in p.terms.items()}

    @property
    def degree(self):
        """Largest total degree among the components."""
        return max(p.total_degree for p in self.comps)

    def __bool__(self) -> bool:
        return any(self.comps)

    def __add__(self, other: WittElementN) -> WittElementN:
        return WittElementN(tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other: WittElementN) -> WittElementN:
        return WittElementN(tuple(a - b for a, b in zip(self.comps, other.comps)))

    def __neg__(self) -> WittElementN:
        return WittElementN(tuple(-a for a in self.comps))

    def __mul__(self, c) -> WittElementN:
        return WittElementN(tuple(a * c for a in self.comps))

    __rmul__ = __mul__

    def apply(self, p: MultiPoly) -> MultiPoly:
        """The derivation applied to a polynomial."""
        out = MultiPoly.zero(self.nvars)
        for i, u in enumerate(self.comps):
            if u:
                out = out + u * p.partial(i)
        return out

    def bracket(self, other: WittElementN) -> WittElementN:
        return bracket_n(self, other)

    def __str__(self) -> str:
        parts = [f"({p})∂{i + 1}" for i, p in enumerate(self.comps) if p]
        return " + ".join(parts) if parts else "0"


def bracket_n(u: WittElementN, v: WittElementN) -> WittElementN:
    """``[u, v]_j = u(v_j) - v(u_j)``."""
    if u.nvars != v.nvars:
        raise ValueError("mismatched number of variables")
    return WittElementN(tuple(u.apply(vj) - v.apply(uj) for uj, vj in zip(u.comps, v.comps)))


def bracket_vectors(u: dict, v: dict) -> dict:
    """Bracket on the sparse-vector form, term by term.

    ``[a x^p ∂_i, b x^q ∂_j] = ab (q_i x^(p+q-e_i) ∂_j - p_j x^(p+q-e_j) ∂_i)``.
    """
    out: dict = {}
    for (i, p), a in u.items():
        for (j, q), b in v.items():
            ab = a * b
            if q[i]:
                e = tuple(x + y - (k == i) for k, (x, y) in enumerate(zip(p, q)))
                key = (j, e)
                out[key] = out.get(key, 0) + ab * q[i]
            if p[j]:
                e = tuple(x + y - (k == j) for k, (x, y) in enumerate(zip(p, q)))
                key = (i, e)
                out[key] = out.get(key, 0) - ab * p[j]
    return {k: c for k, c in out.items() if c}


def check_expansion_identity(f: MultiPoly, g: MultiPoly, p: int, q: int, k: int, l: int) -> bool:
    """Compare ``[x1^p f ∂_k, x1^q g ∂_l]`` with its expanded closed form.

    The closed form is ``x1^(p+q-1) ((x1 f ∂_k(g) + δ_1k q f g) ∂_l -
    (x1 ∂_l(f) g + δ_1l p f g) ∂_k)``; ``k`` and ``l`` are 1-based.
    """
    n = f.nvars
    if g.nvars != n or not (1 <= k <= n and 1 <= l <= n):
        raise ValueError("indices out of range")
    x1 = MultiPoly.var(0, n)
    lhs = bracket_n(WittElementN.monomial(k - 1, (0,) * n) * (x1 ** p * f),
                    WittElementN.monomial(l - 1, (0,) * n) * (x1 ** q * g))
    a = x1 * f * g.partial(k - 1) + (f * g * q if k == 1 else MultiPoly.zero(n))
    b = x1 * f.partial(l - 1) * g + (f * g * p if l == 1 else MultiPoly.zero(n))
    comps = [MultiPoly.zero(n)] * n
    if p + q >= 1:
        pre = x1 ** (p + q - 1)
        comps[l - 1] = comps[l - 1] + pre * a
        comps[k - 1] = comps[k - 1] - pre * b
        rhs = WittElementN(tuple(comps))
    else:
        # p = q = 0: both bracket and x1^-1 (...) reduce to the plain expansion
        num = [MultiPoly.zero(n)] * n
        num[l - 1] = num[l - 1] + a
        num[k - 1] = num[k - 1] - b
        rhs = _divide_x1(num, n)
        if rhs is None:
            return False
    return lhs == rhs


def _divide_x1(comps, n: int):
    out = []
    for c in comps:
        if not c.divisible_by_x_power(0, 1):
            return None
        out.append(MultiPoly({(e[0] - 1,) + e[1:]: v for e, v in c.terms.items()}, n))
    return WittElementN(tuple(out))


# -- spaces -------------------------------------------------------------------

def key_order(key: Key):
    """Component outer, then graded lex with x1 > x2 > ... ."""
    i, e = key
    return (i, sum(e), e)


def key_degree(key: Key) -> int:
    return sum(key[1])


def key_weight(key: Key) -> tuple:
    """``x^a ∂_i`` has weight ``a - e_i``; brackets add weights."""
    i, e = key
    return tuple(x - (k == i) for k, x in enumerate(e))


def monomials(n: int, l: int) -> list[tuple]:
    """All exponent vectors in ``n`` variables of total degree ``<= l``."""
    out = []
    for deg in range(l + 1):
        for combo in combinations_with_replacement(range(n), deg):
            e = [0] * n
            for v in combo:
                e[v] += 1
            out.append(tuple(e))
    return out


class SubspaceN:
    """A subspace of W_n held as an echelon basis of sparse vectors."""

    def __init__(self, n: int, vectors: Iterable[dict] = (), space: EchelonSpace | None = None):
        self.n = n
        self.space = space if space is not None else EchelonSpace(key_order)
        for v in vectors:
            self.space.insert(v)

    @property
    def dim(self) -> int:
        return self.space.dim

    def __len__(self) -> int:
        return self.space.dim

    def insert(self, u) -> bool:
        return self.space.insert(u.vector() if isinstance(u, WittElementN) else u)

    def contains(self, u) -> bool:
        return self.space.contains(u.vector() if isinstance(u, WittElementN) else u)

    def vectors(self) -> list[dict]:
        return self.space.basis()

    def elements(self) -> list[WittElementN]:
        return [WittElementN.from_vector(v, self.n) for v in self.vectors()]

    def restrict(self, keep) -> SubspaceN:
        """Intersection with the coordinate subspace of keys where ``keep``."""
        return SubspaceN(self.n, space=self.space.intersect_coordinates(keep))

    def truncated(self, D: int) -> SubspaceN:
        return self.restrict(lambda k: key_degree(k) <= D)


def span_n(elements: Iterable[WittElementN], n: int | None = None) -> SubspaceN:
    elements = list(elements)
    if n is None:
        if not elements:
            raise ValueError("cannot infer n from an empty list")
        n = elements[0].nvars
    return SubspaceN(n, (u.vector() for u in elements))


def wn_truncated(n: int, D: int) -> SubspaceN:
    """All of W_n with components of total degree ``<= D``."""
    vecs = [{(i, e): Fraction(1)} for i in range(n) for e in monomials(n, D)]
    return SubspaceN(n, vecs)


def closure_n(generators: Sequence[WittElementN], D: int) -> tuple[SubspaceN, bool]:
    """Bracket closure inside total degree ``<= D``; the flag is True when nothing was dropped."""
    if not generators:
        raise ValueError("no generators")
    n = generators[0].nvars
    space = EchelonSpace(key_order)
    queue = []
    for u in generators:
        v = u.vector()
        if any(key_degree(k) > D for k in v):
            raise ValueError("generator exceeds the degree bound")
        if space.insert(v):
            queue.append(v)
    done: list[dict] = []
    dropped = False
    cap = max_cells()
    while queue:
        x = queue.pop(0)
        for y in done:
            w = bracket_vectors(x, y)
            if not w:
                continue
            if any(key_degree(k) > D for k in w):
                dropped = True
                continue
            if space.insert(w):
                queue.append(w)
                if cap is not None and space.stored_cells() > cap:
                    raise ResourceLimit("closure exceeded WITTKIT_MAX_MEGACELLS")
        done.append(x)
    return SubspaceN(n, space=space), not dropped


# -- the L_ij filtration --------------------------------------------------------

def normalize_index(i: int, j: int, n: int) -> tuple[int, int]:
    """Apply ``L_(i,n) = L_(i+1,0)``."""
    if i < 0 or not 0 <= j <= n:
        raise ValueError("filtration index out of range")
    return (i + 1, 0) if j == n else (i, j)


def filtration_keep(i: int, j: int, n: int, D: int):
    """Coordinate test for ``sum_{k<=j} x1^(i+1) k[x] ∂_k + sum_{k>j} x1^i k[x] ∂_k`` up to degree D."""
    i, j = normalize_index(i, j, n)

    def keep(key: Key) -> bool:
        comp, e = key
        need = i + 1 if comp + 1 <= j else i
        return e[0] >= need and sum(e) <= D

    return keep


def filtration_basis(basis: SubspaceN, i: int, j: int, D: int) -> SubspaceN:
    return basis.restrict(filtration_keep(i, j, basis.n, D))


def d_ij(basis: SubspaceN, i: int, j: int, D: int) -> int:
    """Truncated ``dim L_ij / L_(i,j+1)``."""
    n = basis.n
    i, j = normalize_index(i, j, n)
    i2, j2 = normalize_index(i, j + 1, n)
    return filtration_basis(basis, i, j, D).dim - filtration_basis(basis, i2, j2, D).dim


def _verdict(values: list[int]) -> str:
    return "stabilized" if len(values) >= 2 and values[-1] == values[-2] else "growing"


def d_ij_sequence(basis: SubspaceN, i: int, j: int, schedule: Sequence[int]):
    """``([(D, d_ij at D), ...], verdict)``; the verdict is evidence, not proof."""
    dims = [(D, d_ij(basis, i, j, D)) for D in schedule]
    return dims, _verdict([v for _, v in dims])


def check_derived_inclusion(basis: SubspaceN, i: int, j: int, samples: int, D: int,
                            seed: int = 0) -> bool:
    """Sample brackets of pairs in ``L_ij`` and test membership in ``L_(i,j+1)``.

    Samples are drawn from the part of ``L_ij`` of degree ``<= (D+1)//2``,
    so the bracket stays inside degree ``D`` where ``L_(i,j+1)`` is known.
    """
    if i < 1:
        raise ValueError("the derived inclusion is asserted for i >= 1 only")
    n = basis.n
    i, j = normalize_index(i, j, n)
    low = filtration_basis(basis, i, j, (D + 1) // 2).vectors()
    i2, j2 = normalize_index(i, j + 1, n)
    target = filtration_basis(basis, i2, j2, D)
    keep = filtration_keep(i2, j2, n, D)
    if not low:
        return True
    rng = random.Random(seed)

    def sample() -> dict:
        acc: dict = {}
        for v in rng.sample(low, min(len(low), rng.randint(1, 3))):
            c = rng.choice([-3, -2, -1, 1, 2, 3])
            for k, x in v.items():
                acc[k] = acc.get(k, 0) + c * x
        return {k: x for k, x in acc.items() if x}

    for _ in range(samples):
        w = bracket_vectors(sample(), sample())
        if not all(keep(k) for k in w) or not target.contains(w):
            return False
    return True


# -- growth -------------------------------------------------------------------------

@dataclass(frozen=True)
class GrowthReport:
    dims: tuple
    slope: float | None
    verdict: str
    tail: tuple = ()

    @property
    def estimate(self) -> str | None:
        return None if self.slope is None else f"{self.slope:.3f}"


def fit_slope(points: Sequence[tuple[int, int]]) -> float | None:
    """Least-squares slope of ``log dim`` against ``log k``."""
    pts = [(math.log(k), math.log(v)) for k, v in points if k > 0 and v > 0]
    if len(pts) < 5:
        return None
    mx = sum(x for x, _ in pts) / len(pts)
    my = sum(y for _, y in pts) / len(pts)
    sxx = sum((x - mx) ** 2 for x, _ in pts)
    sxy = sum((x - mx) * (y - my) for x, y in pts)
    return sxy / sxx if sxx else None


def growth_sequence(generators: Sequence[WittElementN], K: int) -> GrowthReport:
    """Cumulative ``dim sum_{m<=k} C_m(V)`` for ``k = 0..K`` with ``C_0 = V``.

    Monomial generators let every space split by weight, which keeps the
    echelon blocks small.
    """
    if K < 1:
        raise ValueError("K must be at least 1")
    if not generators:
        raise ValueError("no generators")
    gens = [u.vector() for u in generators if u]
    monomial = all(len({key_weight(k) for k in v}) == 1 for v in gens)

    def new_space():
        return GradedSpace(key_weight, key_order) if monomial else EchelonSpace(key_order)

    total = new_space()
    cur = new_space()
    for v in gens:
        cur.insert(v)
        total.insert(v)
    dims = [total.dim]
    cap = max_cells()
    verdict = None
    for _ in range(K):
        nxt = new_space()
        for x in cur.basis():
            for y in gens:
                w = bracket_vectors(x, y)
                if w and nxt.insert(w):
                    total.insert(w)
        cur = nxt
        dims.append(total.dim)
        if cap is not None and total.stored_cells() + cur.stored_cells() > cap:
            verdict = "saturated-at-bound"
            break
    start = max(5, math.ceil(K / 2))
    tail = tuple((k, dims[k]) for k in range(start, len(dims)))
    slope = fit_slope(tail)
    if verdict is None:
        verdict = "bounded" if tail and tail[0][1] == tail[-1][1] else "polynomial"
    return GrowthReport(tuple(dims), slope, verdict, tail)


# -- further diagnostics ------------------------------------------------------------

def abelianisation_dim(basis: SubspaceN, schedule: Sequence[int]):
    """Truncated ``dim L/[L,L]`` over a bound schedule, with a verdict.

    At bound ``D`` the derived part is spanned by the brackets of truncated
    basis elements whose result still has degree ``<= D``.
    """
    out = []
    for D in schedule:
        part = basis.truncated(D).vectors()
        derived = EchelonSpace(key_order)
        for a in range(len(part)):
            for b in range(a + 1, len(part)):
                w = bracket_vectors(part[a], part[b])
                if w and all(key_degree(k) <= D for k in w):
                    derived.insert(w)
        out.append((D, len(part) - derived.dim))
    return out, _verdict([v for _, v in out])


def component_space_dim(basis: SubspaceN, i: int, schedule: Sequence[int]):
    """Dimension of the span of the ``i``-th (1-based) components of truncated basis elements."""
    if not 1 <= i <= basis.n:
        raise ValueError("component index out of range")
    out = []
    for D in schedule:
        sp = EchelonSpace(lambda e: (sum(e), e))
        for v in basis.truncated(D).vectors():
            comp = {e: c for (k, e), c in v.items() if k == i - 1}
            if comp:
                sp.insert(comp)
        out.append((D, sp.dim))
    return out


def binom_dim(n: int, l: int) -> int:
    """Dimension of the polynomials of degree ``<= l`` in ``n`` variables."""
    if n < 0 or l < 0:
        raise ValueError("n and l must be nonnegative")
    return math.comb(n + l, n)


def _comb(a: int, b: int) -> int:
    return math.comb(a, b) if a >= 0 and b >= 0 else 0


def codim_x1sq(n: int, Nk: int) -> int:
    """Codimension of ``(x1^2)`` inside the polynomials of degree ``<= Nk``."""
    if n < 1 or Nk < 0:
        raise ValueError("need n >= 1 and Nk >= 0")
    return _comb(Nk + n - 1, n - 1) + _comb(Nk + n - 2, n - 1)
