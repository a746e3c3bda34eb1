"""Exact rational arithmetic: polynomials, truncated Laurent series, linear algebra."""

from .laurent import LaurentSeries, laurent_arith
from .linalg import EchelonSpace, GradedSpace, solve_linear
from .multipoly import MultiPoly
from .textfmt import (
    format_laurent,
    format_multipoly,
    format_rational,
    format_unipoly,
    parse_multipoly,
    parse_unipoly,
)
from .unipoly import NEG_INF, UniPoly, from_digits, poly_arith, poly_gcd, poly_in_f

__all__ = [
    "EchelonSpace",
    "GradedSpace",
    "LaurentSeries",
    "MultiPoly",
    "NEG_INF",
    "UniPoly",
    "format_laurent",
    "format_multipoly",
    "format_rational",
    "format_unipoly",
    "from_digits",
    "laurent_arith",
    "parse_multipoly",
    "parse_unipoly",
    "poly_arith",
    "poly_gcd",
    "poly_in_f",
    "solve_linear",
]
