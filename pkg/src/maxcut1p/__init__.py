"""Exact Max-Cut for 1-planar graphs given with their crossing set."""

from .errors import (
    InvalidCrossingSet,
    MaxCutError,
    NegativeWeight,
    NotPlanar,
    ParseError,
    ValidationError,
)
from .fileformat import parse, serialize
from .graph import (
    ContractionRecord,
    Cut,
    Edge,
    EmbeddedInstance,
    WeightedGraph,
    build_instance,
    contract,
    cut_value,
    delete_edge,
    split,
    update_crossings,
    validate,
)
from .planar import fce_max_cut_planar, planar_max_cut
from .reduction import SolveStats, max_cut_general, max_cut_nonneg

__all__ = [
    "ContractionRecord",
    "Cut",
    "Edge",
    "EmbeddedInstance",
    "InvalidCrossingSet",
    "MaxCutError",
    "NegativeWeight",
    "NotPlanar",
    "ParseError",
    "SolveStats",
    "ValidationError",
    "WeightedGraph",
    "build_instance",
    "contract",
    "cut_value",
    "delete_edge",
    "fce_max_cut_planar",
    "max_cut_general",
    "max_cut_nonneg",
    "parse",
    "planar_max_cut",
    "serialize",
    "split",
    "update_crossings",
    "validate",
]
