"""Next-to-shortest s-t path solver for undirected nonnegative graphs."""

from .graph import (
    DisconnectedGraphError,
    DuplicateEdgeError,
    Graph,
    GraphError,
    InfeasibleSpecError,
    MalformedLineError,
    NegativeWeightError,
    SelfLoopError,
    build_graph,
    parse_graph,
    random_graph,
    serialize_graph,
)
from .oracle import oracle_next_to_shortest
from .solver import NtspResult, QueryError, next_to_shortest

__all__ = [
    "DisconnectedGraphError",
    "DuplicateEdgeError",
    "Graph",
    "GraphError",
    "InfeasibleSpecError",
    "MalformedLineError",
    "NegativeWeightError",
    "NtspResult",
    "QueryError",
    "SelfLoopError",
    "build_graph",
    "next_to_shortest",
    "oracle_next_to_shortest",
    "parse_graph",
    "random_graph",
    "serialize_graph",
]

__version__ = "0.1.0"
