"""Classification of infinite-dimensional subalgebras of W_1.

Every such L sits between two members of the family ``L(f, g) = k[f] g∂``:
``L(f, g_min) ⊆ L ⊆ L(f)``. :func:`classify` recovers ``f`` (monic,
``f(0) = 0``), the pair ``(g_f, h_f)`` with ``f' g_f = h_f(f)``, the
largest ``L(f, g_min)`` inside L, and the codimension of L in ``L(f)``.

Work is done in the "u-picture": an element ``g∂`` of ``L(f)`` is recorded
by the polynomial ``q`` with ``f' g = q(f)``. In that picture ``L(f, g)``
is the principal ideal generated by ``q_g`` intersected with ``h_f k[u]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    BoundExhausted,
    BoundInsufficient,
    DegenerateInput,
    InsufficientPrecision,
    ResourceLimit,
)
from .exact_algebra import EchelonSpace, LaurentSeries, UniPoly, poly_gcd, poly_in_f, solve_linear
from .hensel import chart_for, expand_in_s
from .witt1 import SubalgebraBasis1, WittElement1, closure, degree_gcd, member1


def d_of_L(basis: SubalgebraBasis1) -> int:
    """gcd of the degrees present in the (truncated) basis."""
    if not len(basis):
        raise ValueError("empty basis")
    return degree_gcd(basis.degrees)


def generator_f(basis: SubalgebraBasis1, steps: int, d: int | None = None) -> UniPoly:
    """The monic ``f`` with ``f(0) = 0`` and ``deg f = d`` lying in ``k((s^-d))``.

    ``s`` is the chart of the lowest basis element of nonnegative degree.
    The coefficients ``c_{d-1}, ..., c_1`` of ``f`` are fixed top-down by
    killing the ``s^k`` coefficients for ``0 < k < d``; the remaining
    non-multiples of ``d`` inside the resolvable window are then checked.
    """
    if d is None:
        d = d_of_L(basis)
    if d == 0:
        raise DegenerateInput("finite-dimensional or degenerate")
    if d == 1:
        return UniPoly.t()
    pivot = next((u for u in basis if u.degree >= 0), None)
    if pivot is None:
        raise DegenerateInput("finite-dimensional or degenerate")
    chart = chart_for(pivot, steps)
    low = d - steps  # lowest resolvable s-exponent of a degree-d series
    exps = [expand_in_s(LaurentSeries.monomial(j), chart).coeffs for j in range(1, d + 1)]
    c = [Fraction(0)] * (d + 1)
    c[d] = Fraction(1)

    def b(k: int) -> Fraction:
        return sum((c[j] * exps[j - 1].get(k, 0) for j in range(1, d + 1)), Fraction(0))

    for k in range(d - 1, 0, -1):
        c[k] = -b(k)
    for k in range(0, low - 1, -1):
        if k % d and b(k):
            raise BoundInsufficient("bound/steps insufficient")
    return UniPoly(c)


def minimal_gf(f: UniPoly) -> tuple[UniPoly, UniPoly]:
    """``(g_f, h_f)``: the minimal monic ``g`` with ``f' g ∈ k[f]``, and ``h_f`` with ``f' g_f = h_f(f)``.

    Searches ``deg g = 0, 1, ...`` with one exact linear solve per degree,
    treating ``g``'s lower coefficients and ``h``'s coefficients jointly as
    unknowns. ``h_f`` must vanish at every critical value of ``f``, which
    caps the search at ``deg g <= (deg f - 1)^2``.
    """
    d = f.degree
    if d < 1:
        raise ValueError("minimal_gf requires deg(f) >= 1")
    d = int(d)
    fp = f.derivative()
    fpow = [UniPoly.constant(1)]
    for m in range((d - 1) ** 2 + 1):
        top = d - 1 + m
        nh = top // d + 1
        while len(fpow) < nh:
            fpow.append(fpow[-1] * f)
        # columns: g_0..g_{m-1}, then h_0..h_{nh-1}; equation per t-exponent
        cols = [fp * UniPoly.monomial(i) for i in range(m)] + [-fpow[j] for j in range(nh)]
        lead = fp * UniPoly.monomial(m)
        rows = [[col.coeff(e) for col in cols] for e in range(top + 1)]
        rhs = [-lead.coeff(e) for e in range(top + 1)]
        x = solve_linear(rows, rhs, len(cols))
        if x is not None:
            g = UniPoly(list(x[:m]) + [1])
            return g, UniPoly(x[m:])
    raise RuntimeError("internal: g_f search exceeded bound")


def in_Lf(f: UniPoly, u: WittElement1) -> bool:
    """Is ``u = g∂`` in ``L(f)``, i.e. is ``f' g`` a polynomial in ``f``?"""
    return poly_in_f(f.derivative() * u.g, f) is not None


def q_of(f: UniPoly, u: WittElement1) -> UniPoly:
    """``q`` with ``f' g = q(f)`` for ``u = g∂``; raises if ``u`` is not in ``L(f)``."""
    digits = poly_in_f(f.derivative() * u.g, f)
    if digits is None:
        raise BoundInsufficient(f"{u} is not in L(f) for f = {f}")
    return UniPoly(digits)


def g_from_q(f: UniPoly, q: UniPoly) -> UniPoly:
    """The monic ``g`` with ``f' g`` proportional to ``q(f)`` (exact division checked)."""
    return q.compose(f).exact_div(f.derivative()).monic()


def vf_degree(f: UniPoly, q: UniPoly) -> int:
    """Degree of the vector field ``q(f)/f' ∂``."""
    return int(f.degree * (q.degree - 1))


@dataclass(frozen=True)
class MinimalG:
    g_min: UniPoly
    q_min: UniPoly
    r: UniPoly
    checked_multiples: int


def minimal_g(basis: SubalgebraBasis1, f: UniPoly, g_f: UniPoly | None = None) -> MinimalG:
    """Largest ``L(f, g)`` inside the span of ``basis``, certified up to the bound.

    With ``Q`` the span of the basis in the u-picture and ``r`` the monic
    gcd of ``Q``, the answer's ``q`` is the lowest-degree monic multiple
    ``r w`` whose multiples ``r w u^j`` all lie in ``Q`` (one exact linear
    solve per candidate degree). Only answers whose vector field degree is
    at most half the bound count as certified.
    """
    D = basis.degree_bound
    d = int(f.degree)
    if g_f is not None and any(u.g % g_f for u in basis):
        raise BoundInsufficient("basis element outside L(f)")
    qs = [q_of(f, u) for u in basis]
    top = (D - 1 + d) // d
    space = EchelonSpace()
    for q in qs:
        space.insert(dict(enumerate(q.coeffs)))
    r = UniPoly()
    for q in qs:
        r = poly_gcd(r, q)
    if not r:
        raise DegenerateInput("finite-dimensional or degenerate")
    dr = int(r.degree)
    resid = [space.reduce(dict(enumerate((r * UniPoly.monomial(k)).coeffs)))
             for k in range(top - dr + 1)]
    for e in range(dr, top + 1):
        m = e - dr
        q_try = r * UniPoly.monomial(m)
        if 2 * vf_degree(f, q_try) > D - 1:
            break
        rows, rhs = [], []
        for j in range(top - e + 1):
            keys = set(resid[j + m])
            for i in range(m):
                keys |= set(resid[j + i])
            for key in sorted(keys):
                rows.append([resid[j + i].get(key, 0) for i in range(m)])
                rhs.append(-resid[j + m].get(key, 0))
        x = solve_linear(rows, rhs, m) if rows else [Fraction(0)] * m
        if x is not None:
            q_min = r * UniPoly(list(x) + [1])
            return MinimalG(g_from_q(f, q_min), q_min, r, top - e + 1)
    raise BoundInsufficient("bound insufficient")


def lf_degrees(d: int, g_f: UniPoly, bound: int) -> list[int]:
    """Degrees of ``L(f)`` (``f^k g_f ∂``, k >= 0) up to ``bound - 1``."""
    start = int(g_f.degree) - 1
    return list(range(start, bound, d)) if start <= bound - 1 else []


@dataclass(frozen=True)
class ClassificationResult:
    f: UniPoly
    d: int
    g_f: UniPoly
    h_f: UniPoly
    g_min: UniPoly
    codim: int
    certificates: dict = field(default_factory=dict)
    escalations: tuple = ()

    @property
    def q_min(self) -> UniPoly:
        return UniPoly(poly_in_f(self.f.derivative() * self.g_min, self.f))


def _pipeline(gens: list[WittElement1], D: int, N: int) -> ClassificationResult:
    basis = closure(gens, D)
    if basis.saturated:
        raise DegenerateInput("finite-dimensional subalgebra")
    d = d_of_L(basis)
    if d == 0:
        raise DegenerateInput("finite-dimensional or degenerate")
    f = generator_f(basis, N, d)
    g_f, h_f = minimal_gf(f)
    for u in basis:
        if not in_Lf(f, u):
            raise BoundInsufficient("bound/steps insufficient")
    mg = minimal_g(basis, f, g_f)
    g_min = mg.g_min
    sub_degrees = []
    k = 0
    fk = UniPoly.constant(1)
    while int(g_min.degree) - 1 + d * k <= D - 1:
        u = WittElement1(fk * g_min)
        if not member1(basis, u):
            raise BoundInsufficient("bound insufficient")
        sub_degrees.append(u.degree)
        fk = fk * f
        k += 1
    big = lf_degrees(d, g_f, D)
    have = set(basis.degrees)
    codim = len(big) - len(have)
    threshold = int(g_min.degree) - 1
    certs = {
        "degree_bound": D,
        "steps": N,
        "basis_dim": len(basis),
        "brackets_evaluated": basis.brackets_evaluated,
        "saturated": basis.saturated,
        "d_from_truncated_basis": d,
        "f_window_checked": True,
        "basis_in_L(f)": len(basis),
        "L(f,g_min)_in_L_up_to_degree": sub_degrees[-1] if sub_degrees else None,
        "L(f,g_min)_members_checked": len(sub_degrees),
        "q_min_multiples_checked": mg.checked_multiples,
        "codim_L(f,g_min)_in_L(f)": int(mg.q_min.degree - h_f.degree),
        # above the threshold both degree sets coincide with L(f)'s progression
        "codim_pattern_periodic": all(n in have for n in big if n >= threshold),
    }
    return ClassificationResult(f, d, g_f, h_f, g_min, codim, certs)


def classify(generators, degree_bound: int = 40, steps: int = 16,
             max_bound: int = 512, max_steps: int = 256) -> ClassificationResult:
    """Run the full pipeline with doubling escalation of bound and steps."""
    gens = [u for u in generators if u]
    if not gens:
        raise DegenerateInput("no nonzero generators")
    D, N = int(degree_bound), int(steps)
    if D < 1 or N < 0:
        raise ValueError("degree bound must be positive and steps nonnegative")
    escalations = []
    need = max(u.degree for u in gens) + 1
    while True:
        reason = None
        if D < need:
            reason = "degree bound below generator degree"
        else:
            try:
                res = _pipeline(gens, D, N)
                return ClassificationResult(res.f, res.d, res.g_f, res.h_f, res.g_min, res.codim,
                                            res.certificates, tuple(escalations))
            except (BoundExhausted, ResourceLimit):
                raise
            except (BoundInsufficient, InsufficientPrecision) as exc:
                reason = str(exc)
        if D >= max_bound and N >= max_steps:
            raise BoundExhausted("bound exhausted")
        nD, nN = min(2 * D, max(max_bound, D)), min(2 * N or 1, max(max_steps, N))
        escalations.append({"bound": D, "steps": N, "next_bound": nD, "next_steps": nN,
                            "reason": reason})
        D, N = nD, nN
