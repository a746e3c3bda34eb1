"""Exact computations with subalgebras of the Witt algebras W_1 and W_n.

The W_1 side classifies infinite-dimensional subalgebras through the
family ``L(f, g) = k[f] g∂``; the W_n side provides the filtration,
growth and counting diagnostics used to study their enveloping algebras.
"""

from __future__ import annotations

from .classifier import (
    ClassificationResult,
    classify,
    d_of_L,
    generator_f,
    in_Lf,
    minimal_g,
    minimal_gf,
)
from .errors import (
    BoundExhausted,
    BoundInsufficient,
    DegenerateInput,
    InsufficientPrecision,
    MalformedInput,
    ResourceLimit,
    WittkitError,
)
from .exact_algebra import LaurentSeries, MultiPoly, UniPoly, parse_multipoly, parse_unipoly
from .hensel import (
    SeriesChart,
    VeroneseQuery,
    coefficient_law_check,
    expand_in_s,
    hensel_residual,
    hensel_root,
    veronese_member,
)
from .witt1 import SubalgebraBasis1, WittElement1, bracket1, closure, member1
from .wn_analysis import (
    GrowthReport,
    SubspaceN,
    WittElementN,
    abelianisation_dim,
    binom_dim,
    bracket_n,
    check_derived_inclusion,
    check_expansion_identity,
    closure_n,
    codim_x1sq,
    component_space_dim,
    d_ij_sequence,
    filtration_basis,
    growth_sequence,
    wn_truncated,
)

__version__ = "0.1.0"

__all__ = [
    "BoundExhausted",
    "BoundInsufficient",
    "ClassificationResult",
    "DegenerateInput",
    "GrowthReport",
    "InsufficientPrecision",
    "LaurentSeries",
    "MalformedInput",
    "MultiPoly",
    "ResourceLimit",
    "SeriesChart",
    "SubalgebraBasis1",
    "SubspaceN",
    "UniPoly",
    "VeroneseQuery",
    "WittElement1",
    "WittElementN",
    "WittkitError",
    "abelianisation_dim",
    "binom_dim",
    "bracket1",
    "bracket_n",
    "check_derived_inclusion",
    "check_expansion_identity",
    "classify",
    "closure",
    "closure_n",
    "codim_x1sq",
    "coefficient_law_check",
    "component_space_dim",
    "d_ij_sequence",
    "d_of_L",
    "expand_in_s",
    "filtration_basis",
    "generator_f",
    "growth_sequence",
    "hensel_residual",
    "hensel_root",
    "in_Lf",
    "member1",
    "minimal_g",
    "minimal_gf",
    "parse_multipoly",
    "parse_unipoly",
    "veronese_member",
    "wn_truncated",
]
