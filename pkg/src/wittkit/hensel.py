"""Hensel normalization ``g∂ = s^d ∂_s`` and Veronese tests in k((t^-1)).

For monic ``g`` of degree ``d`` there is a unique ``s = t + lower terms``
with ``s^d / s' = g``. :func:`hensel_root` builds it one coefficient per
step; the resulting :class:`SeriesChart` is then used to rewrite series
in powers of ``s`` and to decide membership in ``V_d(s) = k((s^-d)) s∂_s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateInput, InsufficientPrecision
from .exact_algebra import NEG_INF, LaurentSeries, UniPoly
from .witt1 import WittElement1


@dataclass(frozen=True)
class SeriesChart:
    """A truncated change of variable ``s = t + c_0 + c_1 t^-1 + ...``.

    ``s`` is known exactly for exponents ``> -order``; ``poly`` is the finite
    Laurent polynomial produced by the iteration (same coefficients, exact).
    """

    s: LaurentSeries
    order: int
    source: UniPoly | None = None
    _powers: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def poly(self) -> LaurentSeries:
        return LaurentSeries(self.s.coeffs)

    def coefficients(self) -> dict[int, Fraction]:
        return dict(self.s.items())

    def power(self, k: int) -> LaurentSeries:
        """``s^k`` at the precision the chart supports (known above ``k - 1 - order``)."""
        p = self._powers.get(k)
        if p is None:
            if k == 0:
                p = LaurentSeries.one()
            elif k == 1:
                p = self.s
            elif k > 1:
                p = self.power(k - 1) * self.s
            elif k == -1:
                p = self.s.reciprocal()
            else:
                p = self.power(k + 1) * self.power(-1)
            self._powers[k] = p
        return p


def _validate_monic(g: UniPoly) -> int:
    if g.degree < 1:
        raise ValueError("hensel_root needs deg(g) >= 1")
    if g.lc != 1:
        raise ValueError("requires monic input")
    return int(g.degree)


def hensel_root(g: UniPoly, steps: int) -> SeriesChart:
    """Solve ``s^d / s' = g`` for ``s = t + ...`` to ``steps`` correction terms.

    Step ``n`` reads the defect ``alpha`` at ``t^(d-n-1)`` of ``s_n^d/s_n' - g``
    and sets ``s_{n+1} = s_n + c t^-n`` with ``c = -alpha/(n+d)``. After
    ``steps`` iterations the coefficients of ``s`` at ``t^1 .. t^(1-steps)``
    are final and ``s^d/s' - g`` only has terms at exponents ``<= d - steps - 1``.
    """
    d = _validate_monic(g)
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    # Write s = t * sum a_i t^-i. Since s' = 1 + O(t^-2), the leading defect
    # of s^d/s' - g equals that of s^d - g s'. The coefficients p_j of
    # (s/t)^d follow from a_1..a_j by the power-series recurrence
    # j p_j = sum_{i=1..j} ((d + 1) i - j) a_i p_{j-i}, so each step is O(n + d).
    gc = g.coeffs
    a = [Fraction(1)]
    p = [Fraction(1)]
    for n in range(steps):
        j = n + 1
        a.append(Fraction(0))
        acc = Fraction(0)
        for i in range(1, j):
            if a[i]:
                acc += ((d + 1) * i - j) * a[i] * p[j - i]
        pj = acc / j
        # [t^(d-j)] of g s', where [t^-m] s' = (1 - m) a_m
        gs = Fraction(0)
        for k, gk in enumerate(gc):
            m = k - d + j
            if gk and 0 <= m < j and m != 1:
                gs += gk * (1 - m) * a[m]
        alpha = pj - gs
        c = -alpha / (n + d)
        a[j] = c
        p.append(pj + d * c)
    coeffs = {1 - i: ai for i, ai in enumerate(a) if ai}
    return SeriesChart(LaurentSeries(coeffs, trunc=-steps), steps, g)


def hensel_residual(g: UniPoly, chart: SeriesChart, extra: int = 0) -> LaurentSeries:
    """``s^d/s' - g`` for the chart's finite Laurent polynomial.

    The result is known for exponents above ``d - order - 2 - extra``;
    a correct chart makes it vanish at every exponent ``>= d - order``.
    """
    d = _validate_monic(g)
    s = chart.poly
    prec = -chart.order - 2 - extra
    return s.power(d) * s.derivative().reciprocal(prec) - LaurentSeries.from_poly(g)


@dataclass(frozen=True)
class SExpansion:
    """Coefficients ``b_k`` of ``a = sum b_k s^k + O(s^trunc)``."""

    coeffs: dict
    trunc: object

    def coeff(self, k: int) -> Fraction:
        if k <= self.trunc:
            raise InsufficientPrecision(f"s^{k} is below the resolvable window")
        return self.coeffs.get(k, Fraction(0))

    def window(self, top: int) -> range:
        return range(top, int(self.trunc), -1)


def expand_in_s(a: LaurentSeries, chart: SeriesChart, down_to: int | None = None) -> SExpansion:
    """Rewrite ``a`` in powers of ``s`` by unitriangular elimination from the top.

    Each ``s^k = t^k + lower`` is known above ``k - 1 - order``, so the
    expansion is resolvable above ``max(a.trunc, top(a) - 1 - order)``.
    With ``down_to`` given, fail loudly unless ``b_down_to`` is resolvable.
    """
    if a.is_zero_to_truncation():
        return SExpansion({}, a.trunc)
    top = a.top
    trunc = max(a.trunc, top - 1 - chart.order)
    if down_to is not None and down_to <= trunc:
        if down_to <= a.trunc:
            raise InsufficientPrecision("input series is truncated above the requested exponent")
        raise InsufficientPrecision("increase steps", required_steps=top - down_to)
    rem = a
    out: dict[int, Fraction] = {}
    for k in range(top, int(trunc), -1):
        c = rem.coeff(k)
        if c:
            out[k] = c
            rem = rem - chart.power(k) * c
    return SExpansion(out, trunc)


@dataclass(frozen=True)
class VeroneseQuery:
    d: int
    chart: SeriesChart

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be >= 1")


def s_coordinates(u: WittElement1, chart: SeriesChart) -> SExpansion:
    """``b_k`` with ``u = sum b_k s^(k+1) ∂_s``, i.e. the s-expansion of ``a s'/s`` for ``u = a∂``."""
    a = LaurentSeries.from_poly(u.g)
    return expand_in_s(a * chart.s.derivative() * chart.power(-1), chart)


def veronese_member(u: WittElement1, q: VeroneseQuery, depth: int | None = None) -> bool:
    """Is ``u`` in ``V_d(s)`` on the chart's resolvable window?

    ``depth`` is the number of s-exponents below the leading one that must
    be resolvable; the default is whatever the chart resolves, but at least one.
    """
    if not u:
        return True
    need = 1 if depth is None else depth
    if q.chart.order < need:
        raise InsufficientPrecision("increase steps", required_steps=need)
    exp = s_coordinates(u, q.chart)
    return all(k % q.d == 0 for k in exp.coeffs)


@dataclass(frozen=True)
class CoefficientLawReport:
    """Outcome of checking ``(m + k) alpha = (n + k) beta`` on a monic pair."""

    n: int
    m: int
    k: int | None
    alpha: Fraction | None
    beta: Fraction | None
    law_holds: bool | None
    aligned: bool

    @property
    def status(self) -> str:
        if self.aligned:
            return "both Veronese-aligned"
        return "law holds" if self.law_holds else "law fails"


def _check_pair(a: WittElement1, b: WittElement1, d: int) -> tuple[int, int]:
    if d < 1:
        raise ValueError("d must be >= 1")
    if not a or not b or a.g.lc != 1 or b.g.lc != 1:
        raise ValueError("requires monic input")
    n, m = int(a.degree), int(b.degree)
    if n == m:
        raise DegenerateInput("degenerate pair")
    if n % d or m % d:
        raise ValueError("d does not divide degree")
    return n, m


def coefficient_law_check(a: WittElement1, b: WittElement1, d: int) -> CoefficientLawReport:
    """Test the coefficient law on a pair of monic elements of degrees ``n != m``.

    ``k`` is the smallest offset not divisible by ``d`` at which ``a`` has a
    nonzero ``e_(n-k)`` coefficient or ``b`` has a nonzero ``e_(m-k)``
    coefficient; ``alpha`` and ``beta`` are those two coefficients.
    """
    n, m = _check_pair(a, b, d)
    for k in range(1, max(n, m) + 2):
        if k % d == 0:
            continue
        alpha, beta = a.coefficient(n - k), b.coefficient(m - k)
        if alpha or beta:
            return CoefficientLawReport(n, m, k, alpha, beta, (m + k) * alpha == (n + k) * beta, False)
    return CoefficientLawReport(n, m, None, None, None, None, True)


def minimal_offset(elements, d: int) -> tuple[int, WittElement1] | None:
    """Smallest offset ``k`` (``d`` not dividing ``k``) over monic ``elements`` whose degrees are multiples of ``d``.

    Only elements of positive degree are used, matching the law's
    requirement that degrees are positive multiples of ``d``. Returns
    ``(k, witness)`` or None when every element is Veronese-aligned.
    """
    best = None
    for u in elements:
        n = u.degree
        if n == NEG_INF or n < 0 or n % d:
            continue
        for k in range(1, int(n) + 2):
            if best is not None and k >= best[0]:
                break
            if k % d and u.coefficient(int(n) - k):
                best = (k, u)
                break
    return best


def global_law_reports(elements, d: int) -> list[CoefficientLawReport]:
    """Check the law against one witness at the globally minimal offset.

    Pairs the witness ``a`` with every other monic element ``b`` of a
    distinct degree that is a multiple of ``d``, using the global ``k``.
    """
    found = minimal_offset(elements, d)
    if found is None:
        return []
    k, a = found
    n = int(a.degree)
    alpha = a.coefficient(n - k)
    out = []
    for b in elements:
        m = b.degree
        if m == NEG_INF or m == n or m < 0 or m % d:
            continue
        m = int(m)
        beta = b.coefficient(m - k)
        out.append(CoefficientLawReport(n, m, k, alpha, beta, (m + k) * alpha == (n + k) * beta, False))
    return out


def chart_for(u: WittElement1, steps: int) -> SeriesChart:
    """Chart with ``u = s^(deg u + 1) ∂_s`` up to scaling; ``u`` must have degree >= 0."""
    if not u or u.degree < 0:
        raise DegenerateInput("chart needs an element of degree >= 0")
    return hensel_root(u.g.monic(), steps)


def veronese_containment(elements, d: int, steps: int, pivot: int = 0) -> dict[WittElement1, bool]:
    """Chart from ``elements[pivot]`` then test every element against ``V_d(s)``."""
    chart = chart_for(elements[pivot], steps)
    q = VeroneseQuery(d, chart)
    return {u: veronese_member(u, q) for u in elements}
