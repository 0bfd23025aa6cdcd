"""Exact set-valued means of real sets given as finite unions of rational intervals."""

from . import axioms, core, countable, exactset, means, operators
from .core import (
    g_argmax,
    g_direct,
    g_function,
    hf_avg_test,
    max_gap,
    max_interval,
    middle_third,
    ms_aa,
    ms_aas,
    ms_hf,
    z_sets,
)
from .errors import CompositionError, DomainError, IterationError, MeansetError, ParseError
from .exactset import (
    EMPTY,
    Interval,
    IntervalSet,
    avg,
    bounds_stats,
    combine,
    format_set,
    measure,
    minkowski,
    normalize,
    parse_set,
    rat,
    reflect,
    restrict,
    scale,
    set_from_json,
    set_to_json,
    symmetry_center,
    topo,
    transform,
    translate,
)
from .operators import (
    MeanSetOperator,
    aa_operator,
    aas_operator,
    compose,
    hf_operator,
    identity,
    invertibility_check,
    iterate,
    max_interval_operator,
    middle_third_operator,
    op_intersection,
    op_union,
    topo_operator,
)
from .piecewise import PiecewiseLinear

__version__ = "0.1.0"

__all__ = [
    "CompositionError", "DomainError", "EMPTY", "Interval", "IntervalSet", "IterationError",
    "MeanSetOperator", "MeansetError", "ParseError", "PiecewiseLinear", "aa_operator",
    "aas_operator", "avg", "axioms", "bounds_stats", "combine", "compose", "core", "countable",
    "exactset", "format_set", "g_argmax", "g_direct", "g_function", "hf_avg_test",
    "hf_operator", "identity", "invertibility_check", "iterate", "max_gap", "max_interval",
    "max_interval_operator", "means", "measure", "middle_third", "middle_third_operator",
    "minkowski", "ms_aa", "ms_aas", "ms_hf", "normalize", "op_intersection", "op_union",
    "operators", "parse_set", "rat", "reflect", "restrict", "scale", "set_from_json",
    "set_to_json", "symmetry_center", "topo", "topo_operator", "transform", "translate",
    "z_sets",
]
