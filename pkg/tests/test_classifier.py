from __future__ import annotations

import random
import pytest
from hypothesis import given, settings, strategies as st

from wittkit.classifier import (
    classify,
    d_of_L,
    generator_f,
    in_Lf,
    lf_degrees,
    minimal_g,
    minimal_gf,
)
from wittkit.errors import BoundExhausted, DegenerateInput
from wittkit.exact_algebra import UniPoly, parse_unipoly, poly_in_f
from wittkit.witt1 import WittElement1, closure, member1

P = parse_unipoly


def W(text: str) -> WittElement1:
    return WittElement1(P(text))


def lf_generators(f: UniPoly, p: UniPoly, kmax: int = 3) -> list[WittElement1]:
    g_f, _ = minimal_gf(f)
    g = p.compose(f) * g_f
    return [WittElement1(f ** k * g) for k in range(kmax + 1)]


def is_kf_multiple(a: UniPoly, b: UniPoly, f: UniPoly) -> bool:
    """Is ``a = w(f) * b`` for some polynomial ``w``?"""
    q, r = a.divmod(b)
    return not r and poly_in_f(q, f) is not None


def test_d_of_L_examples():
    assert d_of_L(closure([W("t^3"), W("t^5")], 40)) == 2
    assert d_of_L(closure([W("t^2"), W("t^3")], 40)) == 1
    assert d_of_L(closure([W("1")], 10)) == 1


def test_generator_f_examples():
    assert generator_f(closure([W("t^3"), W("t^5")], 40), 16) == P("t^2")
    assert generator_f(closure([W("(t+1)^3"), W("(t+1)^5")], 40), 16) == P("t^2+2t")
    assert generator_f(closure([W("t^2"), W("t^3")], 40), 16) == P("t")


def test_generator_f_degenerate():
    with pytest.raises(DegenerateInput):
        generator_f(closure([W("t")], 10), 8)


def test_minimal_gf_examples():
    assert minimal_gf(P("t^2")) == (P("t"), P("2t"))
    assert minimal_gf(P("t^2+t")) == (P("t+1/2"), P("2t+1/2"))
    assert minimal_gf(P("t")) == (P("1"), P("1"))


def test_minimal_gf_can_exceed_deg_f():
    # critical values +-2 force h_f = c (u - 2)(u + 2), hence deg g_f = 3*2 - 2
    g, h = minimal_gf(P("t^3-3t"))
    assert g.degree == 4
    assert h == P("3t^2-12")


def test_in_Lf_examples():
    assert in_Lf(P("t^2"), W("t^3"))
    assert not in_Lf(P("t^2"), W("t^2"))
    assert in_Lf(P("t"), W("t^7+3t+1"))


def test_minimal_g_examples():
    mg = minimal_g(closure([W("t^3"), W("t^5")], 40), P("t^2"), P("t"))
    assert mg.g_min == P("t^3")
    assert minimal_g(closure([W("t^2"), W("t^3")], 40), P("t"), P("1")).g_min == P("t^2")
    full = closure([W("t"), W("t^3"), W("t^5")], 40)
    assert minimal_g(full, P("t^2"), P("t")).g_min == P("t")


def test_worked_classification():
    res = classify([W("t^3"), W("t^5")], 40, 16)
    assert (res.f, res.d, res.g_f, res.h_f, res.g_min, res.codim) == (
        P("t^2"), 2, P("t"), P("2t"), P("t^3"), 1)
    assert res.certificates["codim_pattern_periodic"]


def test_finite_dimensional_is_rejected():
    with pytest.raises(DegenerateInput, match="finite-dimensional subalgebra"):
        classify([W("t"), W("t^2")], 40, 16)
    with pytest.raises(DegenerateInput):
        classify([W("1"), W("t"), W("t^2")])


def test_sandwich_with_full_W1():
    res = classify([W("t^2"), W("t^3")])
    assert (res.f, res.g_min, res.codim) == (P("t"), P("t^2"), 2)
    assert classify([W("1"), W("t^3")]).codim == 0


def test_escalation_is_recorded():
    f = P("t^3+t")
    res = classify(lf_generators(f, P("1")), 40, 1)
    assert res.f == f
    assert res.escalations and res.escalations[0]["next_steps"] == 2
    assert res.certificates["steps"] == 2


def test_exhaustion():
    f = P("t^3+t")
    with pytest.raises(BoundExhausted, match="bound exhausted"):
        classify(lf_generators(f, P("1")), 40, 1, max_bound=40, max_steps=1)


def test_bound_below_generators_escalates():
    res = classify([W("t^3"), W("t^5")], 4, 4)
    assert res.f == P("t^2")
    assert res.escalations[0]["reason"] == "degree bound below generator degree"


def _check_invariants(res, gens):
    f, g_f, h_f, g_min = res.f, res.g_f, res.h_f, res.g_min
    assert f.lc == 1 and f.coeff(0) == 0 and f.degree == res.d
    assert f.derivative() * g_f == h_f.compose(f)
    assert g_min.lc == 1 and in_Lf(f, WittElement1(g_min))
    assert all(in_Lf(f, u) for u in gens)
    D = res.certificates["degree_bound"]
    basis = closure(gens, D)
    assert res.d == d_of_L(basis)
    k, fk = 0, UniPoly.constant(1)
    while (fk * g_min).degree - 1 <= D - 1:
        assert member1(basis, WittElement1(fk * g_min))
        fk, k = fk * f, k + 1
    # codimension of L(f, g_min) in L(f), two ways
    q_min = UniPoly(poly_in_f(f.derivative() * g_min, f))
    by_count = len(lf_degrees(res.d, g_f, D)) - len(lf_degrees(res.d, g_min, D))
    assert q_min.degree - h_f.degree == by_count == res.certificates["codim_L(f,g_min)_in_L(f)"]
    assert 0 <= res.codim <= by_count


monic_f = st.integers(1, 3).flatmap(
    lambda d: st.lists(st.integers(-3, 3), min_size=d - 1, max_size=d - 1).map(
        lambda cs: UniPoly([0] + list(cs) + [1])))
small_p = st.lists(st.integers(-3, 3), min_size=1, max_size=2).map(UniPoly).filter(bool)


@settings(max_examples=15)
@given(monic_f, small_p)
def test_round_trip_property(f, p):
    gens = lf_generators(f, p)
    res = classify(gens)
    assert res.f == f
    g = p.compose(f) * minimal_gf(f)[0]
    assert is_kf_multiple(res.g_min, g.monic(), f)
    _check_invariants(res, gens)


@settings(max_examples=10)
@given(monic_f, st.fractions(min_value=-2, max_value=2, max_denominator=2))
def test_translation_equivariance(f, c):
    gens = lf_generators(f, UniPoly.constant(1))
    shifted = [WittElement1(u.g.shift(c)) for u in gens]
    res, res_c = classify(gens), classify(shifted)
    expected = f.shift(c) - UniPoly.constant(f(c))
    assert res_c.f == expected
    assert res_c.g_min == res.g_min.shift(c)
    assert res_c.codim == res.codim


def test_deterministic_results():
    a = classify([W("(t+1)^3"), W("(t+1)^5")])
    b = classify([W("(t+1)^5"), W("(t+1)^3")])
    assert (a.f, a.g_min, a.codim, a.certificates) == (b.f, b.g_min, b.codim, b.certificates)


def test_minimal_gf_matches_brute_force_small():
    rng = random.Random(3)
    for _ in range(10):
        d = rng.randint(1, 3)
        f = UniPoly([0] + [rng.randint(-2, 2) for _ in range(d - 1)] + [1])
        g, h = minimal_gf(f)
        assert g.lc == 1
        assert f.derivative() * g == h.compose(f)
        assert UniPoly(poly_in_f(f.derivative() * g, f)) == h
