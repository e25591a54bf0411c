"""
Plumbing Graph Data Model

This module defines the PlumbingGraph dataclass (a decorated tree of vertices
with Euler numbers), its node/end classification, exact subgraph determinants
of the negated intersection form, tree paths, and the validation report used
by the command line and the zeta pipeline.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)


class GraphFormatError(Exception):
    """Raised when a graph document or vertex/edge list is malformed"""
    pass


class GraphStructureError(GraphFormatError):
    """Raised when a well-formed graph is not a connected tree"""
    pass


class UnknownVertexError(Exception):
    """Raised when a vertex id is not part of the graph"""
    pass


class GraphValidationError(Exception):
    """Raised when a graph fails a requirement of the computation pipeline"""
    pass


class NoNodesError(GraphValidationError):
    """Raised when the zeta reduction is requested for a graph without nodes"""

    def __init__(self, message: str = "reduction requires at least one node"):
        super().__init__(message)


@dataclass(frozen=True)
class Vertex:
    """A plumbing vertex: an id and its Euler number (genus is always zero)"""
    id: str
    euler: int


@dataclass(frozen=True)
class VertexClassification:
    """
    Valencies of a plumbing tree and its nodes (valency >= 3) and ends (valency 1).

    Nodes and ends are listed in vertex file order.
    """
    valency: Dict[str, int]
    nodes: Tuple[str, ...]
    ends: Tuple[str, ...]

    def euler_characteristic_defect(self) -> int:
        """Sum of (valency - 2) over all vertices; equals -2 for every tree"""
        return sum(d - 2 for d in self.valency.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "valency": dict(self.valency),
            "nodes": list(self.nodes),
            "ends": list(self.ends),
        }


@dataclass(frozen=True)
class PlumbingGraph:
    """
    Negative definite plumbing graph candidate.

    The vertex order is the construction (file) order and is used everywhere a
    coordinate order is needed: E-coordinates of lattice vectors, node
    coordinates of reduced exponents, and leading principal minors.

    Args:
        vertices: Vertices in file order
        edges: Unordered vertex id pairs

    Raises:
        GraphFormatError: On empty vertex list, duplicate ids, self loops,
            repeated edges or edges referencing unknown ids
    """

    vertices: Tuple[Vertex, ...]
    edges: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self):
        if not self.vertices:
            raise GraphFormatError("graph must contain at least one vertex")

        seen = set()
        for vertex in self.vertices:
            if not isinstance(vertex.id, str) or not vertex.id:
                raise GraphFormatError(f"vertex ids must be nonempty strings, got {vertex.id!r}")
            if vertex.id in seen:
                raise GraphFormatError(f"duplicate vertex id {vertex.id!r}")
            seen.add(vertex.id)

        pairs = set()
        for a, b in self.edges:
            for end in (a, b):
                if end not in seen:
                    raise GraphFormatError(f"edge ({a!r}, {b!r}) references unknown vertex {end!r}")
            if a == b:
                raise GraphFormatError(f"self loop at vertex {a!r}")
            key = frozenset((a, b))
            if key in pairs:
                raise GraphFormatError(f"repeated edge ({a!r}, {b!r})")
            pairs.add(key)

    @classmethod
    def from_lists(cls, vertices: Iterable[Tuple[str, int]], edges: Iterable[Tuple[str, str]] = ()) -> "PlumbingGraph":
        """Build a graph from (id, euler) pairs and (id, id) edges"""
        return cls(
            vertices=tuple(Vertex(str(v), int(e)) for v, e in vertices),
            edges=tuple((str(a), str(b)) for a, b in edges),
        )

    # ------------------------------------------------------------------
    # Basic structure

    @cached_property
    def ids(self) -> Tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    @cached_property
    def index(self) -> Dict[str, int]:
        return {v: i for i, v in enumerate(self.ids)}

    @cached_property
    def _eulers(self) -> Dict[str, int]:
        return {v.id: v.euler for v in self.vertices}

    @cached_property
    def nx_graph(self) -> nx.Graph:
        """The underlying networkx graph, with the Euler number as node attribute"""
        g = nx.Graph()
        for v in self.vertices:
            g.add_node(v.id, euler=v.euler)
        g.add_edges_from(self.edges)
        return g

    @cached_property
    def _determinants(self) -> Dict[FrozenSet[str], int]:
        return {}

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, vertex_id: object) -> bool:
        return vertex_id in self.index

    def require(self, vertex_id: str) -> str:
        """Return vertex_id unchanged, raising UnknownVertexError if absent"""
        if vertex_id not in self.index:
            raise UnknownVertexError(f"unknown vertex id {vertex_id!r}")
        return vertex_id

    def euler(self, vertex_id: str) -> int:
        return self._eulers[self.require(vertex_id)]

    def neighbors(self, vertex_id: str) -> List[str]:
        """Neighbors of a vertex in file order"""
        self.require(vertex_id)
        return sorted(self.nx_graph.neighbors(vertex_id), key=self.index.__getitem__)

    def valency(self, vertex_id: str) -> int:
        return self.nx_graph.degree(self.require(vertex_id))

    def is_tree(self) -> bool:
        return nx.is_tree(self.nx_graph)

    def is_connected(self) -> bool:
        return nx.is_connected(self.nx_graph)

    @cached_property
    def classification(self) -> VertexClassification:
        valency = {v: self.nx_graph.degree(v) for v in self.ids}
        return VertexClassification(
            valency=valency,
            nodes=tuple(v for v in self.ids if valency[v] >= 3),
            ends=tuple(v for v in self.ids if valency[v] == 1),
        )

    @property
    def nodes(self) -> Tuple[str, ...]:
        return self.classification.nodes

    @property
    def ends(self) -> Tuple[str, ...]:
        return self.classification.ends

    def intersection_matrix(self) -> List[List[int]]:
        """The intersection form I in file order: I_vv = euler(v), I_vw = 1 on edges"""
        n = len(self.ids)
        matrix = [[0] * n for _ in range(n)]
        for v in self.vertices:
            matrix[self.index[v.id]][self.index[v.id]] = v.euler
        for a, b in self.edges:
            i, j = self.index[a], self.index[b]
            matrix[i][j] = matrix[j][i] = 1
        return matrix

    # ------------------------------------------------------------------
    # Determinants

    def negative_form(self, subset: Optional[Iterable[str]] = None) -> DomainMatrix:
        """-I restricted to a vertex subset (file order), as an integer DomainMatrix"""
        ids = self.ids if subset is None else self._ordered(subset)
        position = {v: k for k, v in enumerate(ids)}
        n = len(ids)
        rows = [[ZZ(0)] * n for _ in range(n)]
        for v in ids:
            rows[position[v]][position[v]] = ZZ(-self._eulers[v])
        for a, b in self.edges:
            if a in position and b in position:
                rows[position[a]][position[b]] = ZZ(-1)
                rows[position[b]][position[a]] = ZZ(-1)
        return DomainMatrix(rows, (n, n), ZZ)

    def subgraph_determinant(self, subset: Iterable[str]) -> int:
        """
        Determinant of -I restricted to a vertex subset.

        The empty subset has determinant 1. Results are memoized on this graph
        value, keyed by the frozen subset.

        Raises:
            UnknownVertexError: If the subset contains an unknown id
        """
        key = frozenset(subset)
        for v in key:
            self.require(v)
        cached = self._determinants.get(key)
        if cached is not None:
            return cached
        if not key:
            value = 1
        else:
            value = int(self.negative_form(key).det())
        self._determinants[key] = value
        return value

    def determinant(self) -> int:
        return self.subgraph_determinant(self.ids)

    def complement_determinant(self, removed: Iterable[str]) -> int:
        """det of the graph with the given vertices deleted"""
        removed = {self.require(v) for v in removed}
        return self.subgraph_determinant(v for v in self.ids if v not in removed)

    def component_determinant(self, subset: Iterable[str]) -> int:
        """Product of the determinants of the connected components of the induced subgraph"""
        induced = self.nx_graph.subgraph(self._ordered(subset))
        product = 1
        for component in nx.connected_components(induced):
            product *= self.subgraph_determinant(component)
        return product

    def components_without(self, removed: Iterable[str]) -> List[List[str]]:
        """Connected components (file-ordered) of the graph with vertices removed"""
        removed = {self.require(v) for v in removed}
        remaining = self.nx_graph.subgraph(v for v in self.ids if v not in removed)
        components = [self._ordered(c) for c in nx.connected_components(remaining)]
        return sorted(components, key=lambda c: self.index[c[0]])

    def leading_minors(self) -> List[int]:
        """Leading principal minors of -I in file order"""
        return [self.subgraph_determinant(self.ids[:k]) for k in range(1, len(self.ids) + 1)]

    # ------------------------------------------------------------------
    # Paths

    def path_vertices(self, v: str, w: str, include_v: bool = True, include_w: bool = True) -> List[str]:
        """
        Vertices of the tree path from v to w.

        With both endpoints included this is the minimal connected subgraph
        [v, w]; the flags give [v, w), (v, w] and (v, w). For v == w the
        closed path is [v].
        """
        self.require(v)
        self.require(w)
        path = nx.shortest_path(self.nx_graph, v, w)
        if v == w:
            return [v] if (include_v and include_w) else []
        if not include_v:
            path = path[1:]
        if not include_w:
            path = path[:-1]
        return path

    def _ordered(self, subset: Iterable[str]) -> List[str]:
        return sorted({self.require(v) for v in subset}, key=self.index.__getitem__)


@dataclass
class ValidationReport:
    """
    Result of validating a plumbing graph; failures are collected, never raised.
    """

    is_tree: bool
    connected: bool
    negative_definite: bool
    leading_minors: List[int]
    vertex_count: int
    node_count: int
    det: Optional[int]
    failures: List[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.is_tree and self.connected and self.negative_definite

    @property
    def zeta_pipeline_available(self) -> bool:
        return self.valid and self.node_count >= 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "valid": self.valid,
            "tree": self.is_tree,
            "connected": self.connected,
            "negative_definite": self.negative_definite,
            "leading_minors": list(self.leading_minors),
            "vertex_count": self.vertex_count,
            "node_count": self.node_count,
            "det": self.det,
            "zeta_pipeline_available": self.zeta_pipeline_available,
            "failures": list(self.failures),
        }


def validate(graph: PlumbingGraph) -> ValidationReport:
    """
    Check tree-ness, connectivity and negative definiteness of a graph.

    Negative definiteness is tested with Sylvester's criterion: every leading
    principal minor of -I must be positive.
    """
    failures = []
    connected = graph.is_connected()
    is_tree = connected and len(graph.edges) == len(graph.vertices) - 1
    if not connected:
        failures.append("graph is not connected")
    elif not is_tree:
        failures.append("graph is not a tree")

    minors = graph.leading_minors()
    negative_definite = all(m > 0 for m in minors)
    if not negative_definite:
        first_bad = next(k for k, m in enumerate(minors, start=1) if m <= 0)
        failures.append(f"intersection form is not negative definite (leading minor {first_bad} is {minors[first_bad - 1]})")

    node_count = len(graph.nodes) if is_tree else 0
    det = graph.determinant() if negative_definite else None
    if negative_definite and node_count == 0:
        logger.info("🪵 Graph has no nodes: the zeta pipeline is unavailable")

    return ValidationReport(
        is_tree=is_tree,
        connected=connected,
        negative_definite=negative_definite,
        leading_minors=minors,
        vertex_count=len(graph.vertices),
        node_count=node_count,
        det=det,
        failures=failures,
    )


def require_valid(graph: PlumbingGraph) -> PlumbingGraph:
    """Return the graph if valid, otherwise raise GraphValidationError with the failures"""
    report = validate(graph)
    if not report.valid:
        raise GraphValidationError("; ".join(report.failures))
    return graph


def vertex_classification(graph: PlumbingGraph) -> VertexClassification:
    return graph.classification


def subgraph_determinant(graph: PlumbingGraph, subset: Iterable[str]) -> int:
    return graph.subgraph_determinant(subset)


def component_determinant(graph: PlumbingGraph, subset: Iterable[str]) -> int:
    return graph.component_determinant(subset)


def path_vertices(graph: PlumbingGraph, v: str, w: str, include_v: bool = True, include_w: bool = True) -> List[str]:
    return graph.path_vertices(v, w, include_v, include_w)
