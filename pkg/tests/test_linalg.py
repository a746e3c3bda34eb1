from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wittkit.exact_algebra import EchelonSpace, GradedSpace, solve_linear

vectors = st.dictionaries(st.integers(0, 5), st.integers(-3, 3).map(Fraction), max_size=4)


def test_insert_reports_growth():
    sp = EchelonSpace()
    assert sp.insert({0: 1, 1: 1})
    assert sp.insert({1: 1})
    assert not sp.insert({0: 2})
    assert sp.dim == 2
    assert sp.contains({0: 5, 1: -3})


def test_intersect_coordinates():
    sp = EchelonSpace(vectors=[{0: 1, 2: 1}, {1: 1, 2: 1}])
    # span ∩ {x_2 = 0} is spanned by e0 - e1
    cut = sp.intersect_coordinates(lambda k: k != 2)
    assert cut.dim == 1
    assert cut.contains({0: 1, 1: -1})


def test_graded_space_rejects_inhomogeneous():
    g = GradedSpace(lambda k: k % 2)
    g.insert({0: 1, 2: 1})
    with pytest.raises(ValueError):
        g.insert({0: 1, 1: 1})
    assert g.contains({0: 2, 2: 2})
    assert not g.contains({1: 1})


def test_solve_linear():
    x = solve_linear([[1, 1], [1, -1]], [3, 1], 2)
    assert x == [2, 1]
    assert solve_linear([[1, 1], [2, 2]], [1, 3], 2) is None
    assert solve_linear([[1, 1]], [2], 2) == [2, 0]


@given(st.lists(vectors, max_size=6), st.permutations(range(6)))
def test_echelon_form_is_canonical(vs, perm):
    a = EchelonSpace(vectors=vs)
    b = EchelonSpace(vectors=[vs[i] for i in perm if i < len(vs)])
    assert a.basis() == b.basis()


@given(st.lists(vectors, max_size=6), vectors)
def test_membership_matches_rank(vs, w):
    sp = EchelonSpace(vectors=vs)
    bigger = EchelonSpace(vectors=vs + [w])
    assert sp.contains(w) == (bigger.dim == sp.dim)


@given(st.lists(vectors, max_size=6))
def test_coordinate_intersection_lies_in_both(vs):
    sp = EchelonSpace(vectors=vs)
    cut = sp.intersect_coordinates(lambda k: k < 3)
    for row in cut.basis():
        assert all(k < 3 for k in row)
        assert sp.contains(row)
    # dimension formula for a coordinate section: dim(V) - rank of the projection onto dropped coords
    proj = EchelonSpace(vectors=[{k: c for k, c in r.items() if k >= 3} for r in sp.basis()])
    assert cut.dim == sp.dim - proj.dim
