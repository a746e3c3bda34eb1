from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given

from conftest import unipolys
from wittkit.errors import MalformedInput
from wittkit.exact_algebra import LaurentSeries, UniPoly, format_laurent, parse_multipoly, parse_unipoly
from wittkit.exact_algebra.textfmt import split_top_level


def test_grammar_features():
    assert parse_unipoly("(t+1)^3") == UniPoly([1, 3, 3, 1])
    assert parse_unipoly("2t^2 - 1/2 t") == UniPoly([0, Fraction(-1, 2), 2])
    assert parse_unipoly("t**2") == UniPoly([0, 0, 1])
    assert parse_unipoly("x1^2") == UniPoly([0, 0, 1])
    assert parse_unipoly("-t") == UniPoly([0, -1])


@pytest.mark.parametrize("bad", ["", "t^", "t^-1", "2/0", "t+*", "(t", "y", "t^x", "x2"])
def test_malformed_polynomials(bad):
    with pytest.raises(MalformedInput):
        parse_unipoly(bad)


def test_multivariate_variable_range():
    assert parse_multipoly("x1 x2", 2).terms == {(1, 1): 1}
    with pytest.raises(MalformedInput):
        parse_multipoly("x3", 2)
    with pytest.raises(MalformedInput):
        parse_multipoly("t", 2)


def test_laurent_format():
    s = LaurentSeries({1: 1, -3: Fraction(-4, 45)}, trunc=-5)
    assert format_laurent(s) == "t-4/45*t^-3+O(t^-5)"
    assert format_laurent(LaurentSeries({}, trunc=0)) == "O(1)"


def test_split_respects_parentheses():
    assert split_top_level("(t+1)^3, t^2 ,", ",") == ["(t+1)^3", "t^2"]


@given(unipolys())
def test_round_trip(p):
    assert parse_unipoly(str(p)) == p
