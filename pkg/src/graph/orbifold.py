"""
Orbifold Graph

The orbifold graph has the nodes of a plumbing tree as vertices; two nodes are
joined when the tree path between them passes only through valency-2
vertices (adjacent nodes included). Edges are oriented toward a chosen root,
and an edge oriented n -> n' is written n > n'.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import networkx as nx

from .plumbing import GraphValidationError, NoNodesError, PlumbingGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class OrbifoldGraph:
    """
    Rooted orbifold graph of a plumbing tree.

    Attributes:
        nodes: Nodes of the plumbing graph, in file order
        edges: Oriented edges (n, n') meaning n > n' (n' is one step closer to the root)
        root: The root node n0 (the only node without an outgoing edge)
        valency: Orbifold valency of every node
    """

    nodes: Tuple[str, ...]
    edges: Tuple[Tuple[str, str], ...]
    root: str
    valency: Dict[str, int]

    @property
    def successor(self) -> Dict[str, str]:
        """The unique n' with n > n', for every non-root node n"""
        return {n: m for n, m in self.edges}

    def upstream(self, node: str) -> List[str]:
        """Nodes n with n > node, in file order"""
        return [n for n, m in self.edges if m == node]

    @property
    def is_bamboo(self) -> bool:
        return all(d <= 2 for d in self.valency.values())

    def bamboo_order(self) -> List[str]:
        """
        Nodes along the bamboo, starting from the smallest-id leaf.

        Raises:
            GraphValidationError: If the orbifold graph branches
        """
        if not self.is_bamboo:
            raise GraphValidationError("orbifold graph is not a bamboo")
        if len(self.nodes) == 1:
            return [self.nodes[0]]
        g = self.as_networkx()
        start = min(n for n in self.nodes if self.valency[n] == 1)
        return list(nx.dfs_preorder_nodes(g, start))

    def as_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from(self.edges)
        return g

    def reroot(self, root: str) -> "OrbifoldGraph":
        """The same orbifold graph oriented toward another root"""
        return _orient(self.nodes, self.as_networkx(), root)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "nodes": list(self.nodes),
            "root": self.root,
            "edges": [[n, m] for n, m in self.edges],
            "valency": dict(self.valency),
            "bamboo": self.is_bamboo,
        }


def _orbifold_neighbors(graph: PlumbingGraph, node: str) -> List[str]:
    """Nodes reached from `node` through chains of valency-2 vertices"""
    valency = graph.classification.valency
    found = []
    for first in graph.neighbors(node):
        previous, current = node, first
        while valency[current] == 2:
            step = [w for w in graph.neighbors(current) if w != previous]
            previous, current = current, step[0]
        if valency[current] >= 3:
            found.append(current)
    return found


def _orient(nodes: Tuple[str, ...], g: nx.Graph, root: str) -> OrbifoldGraph:
    if root not in g:
        raise GraphValidationError(f"root {root!r} is not a node")
    order = {n: i for i, n in enumerate(nodes)}
    edges = sorted(
        ((child, parent) for child, parent in nx.bfs_predecessors(g, root)),
        key=lambda e: (order[e[0]], order[e[1]]),
    )
    return OrbifoldGraph(
        nodes=nodes,
        edges=tuple(edges),
        root=root,
        valency={n: g.degree(n) for n in nodes},
    )


def orbifold_graph(graph: PlumbingGraph, root: Optional[str] = None) -> OrbifoldGraph:
    """
    Build the orbifold graph of a plumbing tree, oriented toward `root`.

    Args:
        graph: A valid plumbing tree
        root: Root node id; defaults to the lexicographically smallest node id

    Raises:
        NoNodesError: If the graph has no vertex of valency >= 3
        GraphValidationError: If `root` is not a node
    """
    nodes = graph.nodes
    if not nodes:
        raise NoNodesError()

    g = nx.Graph()
    g.add_nodes_from(nodes)
    for n in nodes:
        for m in _orbifold_neighbors(graph, n):
            g.add_edge(n, m)

    root = min(nodes) if root is None else root
    orbifold = _orient(nodes, g, root)
    logger.debug(f"🌳 Orbifold graph: [bold]{len(nodes)}[/bold] nodes, root [cyan]{root}[/cyan], bamboo={orbifold.is_bamboo}")
    return orbifold
