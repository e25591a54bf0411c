"""
Graph File Parser

Reads and writes the JSON graph format

    {"vertices": [{"id": "v1", "e": -2}, ...], "edges": [["v1", "v2"], ...]}

Ids are nonempty strings, "e" is a signed integer, unknown keys are rejected.
Parsed graphs must be connected trees.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, StrictStr, ValidationError

from .plumbing import GraphFormatError, GraphStructureError, PlumbingGraph, Vertex

logger = logging.getLogger(__name__)


class VertexDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: StrictStr = Field(min_length=1, description="vertex id")
    e: StrictInt = Field(description="Euler number (self-intersection)")


class GraphDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vertices: List[VertexDocument] = Field(min_length=1)
    edges: List[Tuple[StrictStr, StrictStr]] = Field(default_factory=list)


def graph_from_document(document: GraphDocument) -> PlumbingGraph:
    graph = PlumbingGraph(
        vertices=tuple(Vertex(v.id, v.e) for v in document.vertices),
        edges=tuple((a, b) for a, b in document.edges),
    )
    if not graph.is_connected():
        raise GraphStructureError("graph is not connected")
    if len(graph.edges) != len(graph.vertices) - 1:
        raise GraphStructureError("graph is not a tree")
    return graph


def parse_graph(text: str) -> PlumbingGraph:
    """
    Parse graph-file content into a PlumbingGraph (vertex order = file order).

    Raises:
        GraphFormatError: Malformed JSON, schema violation, duplicate id or
            edge referencing an unknown id
        GraphStructureError: The graph is not a connected tree
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"invalid JSON: {e}")
    try:
        document = GraphDocument.model_validate(raw)
    except ValidationError as e:
        raise GraphFormatError(f"invalid graph document: {e.error_count()} error(s): {e.errors()[0]['msg']} at {list(e.errors()[0]['loc'])}")
    graph = graph_from_document(document)
    logger.debug(f"📄 Parsed graph with [bold]{len(graph)}[/bold] vertices")
    return graph


def load_graph(path: Union[str, Path]) -> PlumbingGraph:
    """Read and parse a graph file; IO errors propagate as OSError"""
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def graph_to_dict(graph: PlumbingGraph) -> Dict[str, Any]:
    return {
        "vertices": [{"id": v.id, "e": v.euler} for v in graph.vertices],
        "edges": [[a, b] for a, b in graph.edges],
    }


def to_json(graph: PlumbingGraph) -> str:
    return json.dumps(graph_to_dict(graph), indent=2)
