"""
Plumbing Graph Package

Data model, parsing and validation of negative definite plumbing trees, exact
subgraph determinants, node/end classification and the rooted orbifold graph.

Main Components:
- PlumbingGraph: decorated tree with file-ordered vertices
- ValidationReport / validate: tree, connectivity and definiteness checks
- OrbifoldGraph / orbifold_graph: node graph oriented toward a root
- parse_graph / load_graph / to_json: JSON graph files
"""

from .plumbing import (
    Vertex,
    PlumbingGraph,
    VertexClassification,
    ValidationReport,
    GraphFormatError,
    GraphStructureError,
    GraphValidationError,
    UnknownVertexError,
    NoNodesError,
    validate,
    require_valid,
    vertex_classification,
    subgraph_determinant,
    component_determinant,
    path_vertices,
)
from .orbifold import OrbifoldGraph, orbifold_graph
from .parser import parse_graph, load_graph, graph_to_dict, to_json

__all__ = [
    "Vertex",
    "PlumbingGraph",
    "VertexClassification",
    "ValidationReport",
    "GraphFormatError",
    "GraphStructureError",
    "GraphValidationError",
    "UnknownVertexError",
    "NoNodesError",
    "validate",
    "require_valid",
    "vertex_classification",
    "subgraph_determinant",
    "component_determinant",
    "path_vertices",
    "OrbifoldGraph",
    "orbifold_graph",
    "parse_graph",
    "load_graph",
    "graph_to_dict",
    "to_json",
]
