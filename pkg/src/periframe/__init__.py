"""Periodic bar-and-joint frameworks: parameters, symmetry, deformation.

The package models a d-periodic graph by its finite labeled quotient,
parametrizes placements modulo isometry, carves out crystallographic
symmetry classes as affine sections of the parameter space, and probes
rigidity and deformation paths numerically.
"""

from .config import DEFAULT_CONFIG, RunConfig
from .errors import (
    CorrectorDivergenceError,
    DimensionMismatchError,
    EdgeImageMissingError,
    GraphFormatError,
    NotOnLocusError,
    NotPositiveDefiniteError,
    PeriframeError,
    SearchCapExceeded,
    SingularLatticeError,
)
from .graphs import (
    LabeledEdge,
    PeriodicGraph,
    ValidationReport,
    cycle_label_matrix,
    graph_from_dict,
    graph_to_dict,
    load_graph,
    parse_graph,
    serialize_graph,
    validate,
)
from .placements import (
    PlacementParams,
    RawPlacement,
    cholesky_upper,
    edge_lengths_sq,
    flex_dimension,
    is_positive_definite,
    load_params,
    n_params,
    numerical_rank,
    params_from_dict,
    parse_params,
    quotient_map,
    realize,
    rigidity_matrix,
    serialize_params,
    unpack,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CONFIG",
    "RunConfig",
    "PeriframeError",
    "GraphFormatError",
    "DimensionMismatchError",
    "NotPositiveDefiniteError",
    "SingularLatticeError",
    "CorrectorDivergenceError",
    "SearchCapExceeded",
    "EdgeImageMissingError",
    "NotOnLocusError",
    "LabeledEdge",
    "PeriodicGraph",
    "ValidationReport",
    "parse_graph",
    "serialize_graph",
    "load_graph",
    "graph_from_dict",
    "graph_to_dict",
    "validate",
    "cycle_label_matrix",
    "PlacementParams",
    "RawPlacement",
    "quotient_map",
    "realize",
    "cholesky_upper",
    "is_positive_definite",
    "edge_lengths_sq",
    "rigidity_matrix",
    "numerical_rank",
    "flex_dimension",
    "n_params",
    "unpack",
    "parse_params",
    "serialize_params",
    "load_params",
    "params_from_dict",
    "__version__",
]
