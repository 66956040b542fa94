from ._base import (
    ZERO,
    DimGraph,
    Edge,
    GraphIntegrityError,
    GraphUsageError,
    RulePreconditionError,
    Vertex,
    VertexPredicate,
    Weight,
    edge_key,
    same_weight,
)

__all__ = [
    "DimGraph",
    "Edge",
    "GraphIntegrityError",
    "GraphUsageError",
    "RulePreconditionError",
    "Vertex",
    "VertexPredicate",
    "Weight",
    "ZERO",
    "edge_key",
    "same_weight",
]
