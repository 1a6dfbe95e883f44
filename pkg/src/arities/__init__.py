"""Involutive graphs, the path and free-groupoid monads, and their arities."""

from .factcat import check_arity_connectivity, has_core_redundancy, has_inner_redundancy, seq_counterexample
from .generic import (
    FactMorphism,
    FactObject,
    TMap,
    ZigZag,
    g_generic_factor,
    generic_lift,
    is_g_generic,
    is_t_generic,
    t_generic_factor,
    tau_compat,
    zigzag_connect,
)
from .graphs import GraphError, InvGraph, InvGraphMorphism, make_sequence
from .paths import Path, ReducedPath, g_compose, g_hom, g_inverse, not_cartesian_demo, reduce, reduce_count

__version__ = "0.1.0"

__all__ = [
    "FactMorphism",
    "FactObject",
    "GraphError",
    "InvGraph",
    "InvGraphMorphism",
    "Path",
    "ReducedPath",
    "TMap",
    "ZigZag",
    "check_arity_connectivity",
    "g_compose",
    "g_generic_factor",
    "g_hom",
    "g_inverse",
    "generic_lift",
    "has_core_redundancy",
    "has_inner_redundancy",
    "is_g_generic",
    "is_t_generic",
    "make_sequence",
    "not_cartesian_demo",
    "reduce",
    "reduce_count",
    "seq_counterexample",
    "t_generic_factor",
    "tau_compat",
    "zigzag_connect",
]
