from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from wittkit.exact_algebra import LaurentSeries, MultiPoly, UniPoly

settings.register_profile(
    "wittkit",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("wittkit")

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
small_ints = st.integers(min_value=-3, max_value=3)


def unipolys(max_degree: int = 5, coeffs=rationals):
    return st.lists(coeffs, max_size=max_degree + 1).map(UniPoly)


def nonzero_unipolys(max_degree: int = 5):
    return unipolys(max_degree).filter(bool)


def monic_unipolys(min_degree: int = 1, max_degree: int = 5, coeffs=small_ints):
    return st.integers(min_degree, max_degree).flatmap(
        lambda d: st.lists(coeffs, min_size=d, max_size=d).map(lambda cs: UniPoly(list(cs) + [1]))
    )


def laurent_polys(max_terms: int = 5):
    return st.dictionaries(st.integers(-6, 4), rationals, max_size=max_terms).map(LaurentSeries)


def multipolys(nvars: int, max_degree: int = 3, max_terms: int = 4):
    exps = st.tuples(*[st.integers(0, max_degree)] * nvars).filter(lambda e: sum(e) <= max_degree)
    return st.dictionaries(exps, st.integers(-3, 3).map(Fraction), max_size=max_terms).map(
        lambda d: MultiPoly(d, nvars)
    )


CRITERIA: list[str] = []


def report(label: str, ok: bool, detail: str) -> bool:
    """Record and print one acceptance line."""
    line = f"{'PASS' if ok else 'FAIL'} criterion {label}: {detail}"
    CRITERIA.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)
