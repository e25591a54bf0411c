"""
Embedded Resolution Graphs of Algebraic Knots

Builds the minimal negative definite plumbing graph of an algebraic knot from
its linking pairs: a chain of centers v_1 .. v_r, one leaf chain per center,
a second leg at v_1, link chains between consecutive centers, and the
(-1)-vertex v_r that carries the knot. Chains come from negative continued
fractions. Every constructed graph is checked against determinant identities
before it is returned.
"""

import logging
from dataclasses import dataclass, field
from math import gcd
from typing import Any, Dict, List, Set, Tuple

from src.graph.plumbing import PlumbingGraph, validate
from .algebraic import AlgebraicKnot

logger = logging.getLogger(__name__)


class ResolutionGraphError(Exception):
    """Raised when a constructed resolution graph fails its determinant checks"""
    pass


def negative_continued_fraction(p: int, q: int) -> List[int]:
    """
    Hirzebruch-Jung expansion p/q = k_0 - 1/(k_1 - 1/(...)).

    Returns:
        [k_0, ..., k_s] with k_0 >= 1 and k_i >= 2 for i >= 1

    Raises:
        ValueError: If p <= 0, q <= 0 or gcd(p, q) != 1
    """
    if p <= 0 or q <= 0:
        raise ValueError(f"p and q must be positive, got p={p}, q={q}")
    if gcd(p, q) != 1:
        raise ValueError(f"gcd({p}, {q}) != 1")
    result = []
    while q:
        k = -(-p // q)
        result.append(k)
        p, q = q, k * q - p
    return result


def _inverse_mod(a: int, m: int) -> int:
    return pow(a, -1, m)


@dataclass
class KnotGraph:
    """
    Resolution graph of one algebraic knot.

    Attributes:
        knot: The knot
        graph: The plumbing graph (det 1)
        centers: Ids of v_1 .. v_r; the last one is the (-1)-vertex
        blocks: blocks[i] holds v_{i+1}, its leaf chains and the link chain toward v_i
        prefix: Id prefix used for every vertex
    """

    knot: AlgebraicKnot
    graph: PlumbingGraph
    centers: List[str]
    blocks: List[List[str]]
    prefix: str = ""
    vertices: List[Tuple[str, int]] = field(default_factory=list, repr=False)
    edges: List[Tuple[str, str]] = field(default_factory=list, repr=False)

    @property
    def center(self) -> str:
        return self.centers[-1]

    def subgraph_through(self, i: int) -> Set[str]:
        """Vertices of Gamma_i: centers v_1..v_i with their end chains and the chains between them"""
        return {v for block in self.blocks[:i] for v in block}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "centers": list(self.centers),
            "center": self.center,
            "blocks": [list(b) for b in self.blocks],
        }


class _Builder:
    def __init__(self):
        self.vertices: List[Tuple[str, int]] = []
        self.edges: List[Tuple[str, str]] = []

    def add(self, vertex_id: str, weight: int) -> str:
        self.vertices.append((vertex_id, weight))
        return vertex_id

    def connect(self, a: str, b: str):
        self.edges.append((a, b))

    def chain(self, anchor: str, entries: List[int], name: str) -> List[str]:
        """Attach a chain with weights -entries; the first entry is adjacent to the anchor"""
        ids = []
        previous = anchor
        for m, k in enumerate(entries, start=1):
            vertex_id = self.add(f"{name}{m}", -k)
            self.connect(previous, vertex_id)
            ids.append(vertex_id)
            previous = vertex_id
        return ids


def _build(knot: AlgebraicKnot, prefix: str) -> KnotGraph:
    pairs = knot.linking_pairs
    builder = _Builder()
    centers = [f"{prefix}v{i}" for i in range(1, len(pairs) + 1)]

    # first pair: center with legs p_1/w_1 and a_1/w_2, where w_1 a_1 + w_2 p_1 = a_1 p_1 - 1
    p1, a1 = pairs[0]
    w1 = (-_inverse_mod(a1, p1)) % p1
    w2 = (p1 * a1 - 1 - w1 * a1) // p1
    weights = {centers[0]: -1}
    builder.add(centers[0], -1)
    leaf = builder.chain(centers[0], negative_continued_fraction(p1, w1), f"{centers[0]}.p")
    second = builder.chain(centers[0], negative_continued_fraction(a1, w2), f"{centers[0]}.q")
    blocks = [[centers[0]] + leaf + second]

    for i in range(1, len(pairs)):
        p, a = pairs[i]
        previous_p, previous_a = pairs[i - 1]
        span = previous_a * previous_p
        w_leaf = (-_inverse_mod(a, p)) % p
        w_link = (a * p - 1 - w_leaf * a) // p
        expansion = negative_continued_fraction(a, w_link)
        cut = len(expansion) - span
        if cut < 0 or any(k != 2 for k in expansion[cut + 1:]):
            raise ResolutionGraphError(
                f"unexpected link expansion {expansion} between centers {i} and {i + 1} of {knot.newton_pairs}"
            )
        # the trailing 2s of a/w_link are absorbed by blowing down onto the previous center
        weights[centers[i - 1]] = -expansion[cut]
        current = builder.add(centers[i], -1)
        weights[current] = -1
        link = builder.chain(current, expansion[:cut], f"{current}.a")
        builder.connect(link[-1] if link else current, centers[i - 1])
        leaf = builder.chain(current, negative_continued_fraction(p, w_leaf), f"{current}.p")
        blocks.append(link + [current] + leaf)

    vertices = [(v, weights.get(v, w)) for v, w in builder.vertices]
    graph = PlumbingGraph.from_lists(vertices, builder.edges)
    return KnotGraph(
        knot=knot,
        graph=graph,
        centers=centers,
        blocks=blocks,
        prefix=prefix,
        vertices=vertices,
        edges=list(builder.edges),
    )


def resolution_checks(knot_graph: KnotGraph) -> List[str]:
    """
    Determinant identities every resolution graph must satisfy.

    Returns:
        Failure messages, empty when all checks pass
    """
    graph = knot_graph.graph
    pairs = knot_graph.knot.linking_pairs
    failures = []

    report = validate(graph)
    if not report.valid:
        failures.extend(report.failures)
        return failures
    if report.det != 1:
        failures.append(f"det = {report.det}, expected 1")

    center = knot_graph.center
    if graph.euler(center) != -1:
        failures.append(f"center {center} has weight {graph.euler(center)}, expected -1")
    p_r, a_r = pairs[-1]
    if graph.complement_determinant([center]) != a_r * p_r:
        failures.append(f"det(Gamma - center) = {graph.complement_determinant([center])}, expected {a_r * p_r}")

    for i, (p, a) in enumerate(pairs):
        v = knot_graph.centers[i]
        leaf = [u for u in graph.components_without([v]) if any(x.startswith(f"{v}.p") for x in u)]
        if len(leaf) != 1 or graph.subgraph_determinant(leaf[0]) != p:
            failures.append(f"leaf chain of {v} does not have determinant {p}")
        if i:
            marker = knot_graph.centers[i - 1]
            component = [u for u in graph.components_without([v]) if marker in u]
        else:
            marker = f"{v}.q"
            component = [u for u in graph.components_without([v]) if any(x.startswith(marker) for x in u)]
        if len(component) != 1 or graph.subgraph_determinant(component[0]) != a:
            failures.append(f"component of {v} toward {marker} does not have determinant {a}")
    return failures


def knot_resolution_graph(knot: AlgebraicKnot, prefix: str = "") -> KnotGraph:
    """
    Minimal embedded resolution graph of an algebraic knot.

    Args:
        knot: The knot
        prefix: Prefix for every vertex id (used when several knots share a graph)

    Raises:
        ResolutionGraphError: If the constructed graph fails a determinant check
    """
    knot_graph = _build(knot, prefix)
    failures = resolution_checks(knot_graph)
    if failures:
        raise ResolutionGraphError(f"resolution graph of {knot.newton_pairs} failed: " + "; ".join(failures))
    logger.debug(f"🪢 Resolution graph of {list(knot.newton_pairs)}: [bold]{len(knot_graph.graph)}[/bold] vertices")
    return knot_graph
