"""
Surgery 3-Manifolds

Negative definite plumbing graphs of S^3_{-p/q}(K) for a connected sum K of
algebraic knots: every knot's (-1)-center is joined to a new vertex v+ of
weight -k_0 - m, followed by a chain -k_1 .. -k_s from p/q = [k_0, ..., k_s].

Also provides the Alexander-polynomial route Q_h(t) to the normalized
Seiberg-Witten invariants and the structure checks relating the polynomial
parts of such graphs to that route.
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field, StrictInt, ValidationError
from sympy import Poly, ZZ

from src.graph.orbifold import orbifold_graph
from src.graph.plumbing import PlumbingGraph, require_valid
from src.lattice.discriminant import ClassKey
from src.lattice.lattice import LatticeData, lattice_data
from src.lattice.rational import RationalVector, rational_string
from src.laurent.poly import LaurentPoly
from src.zeta.invariants import ClassInvariants, InvariantReport
from src.zeta.polynomial import multiplicity
from .algebraic import AlgebraicKnot, KnotDocument, t
from .resolution import KnotGraph, knot_resolution_graph, negative_continued_fraction

logger = logging.getLogger(__name__)

PLUS = "v+"


class SurgeryDataError(Exception):
    """Raised when a surgery description has no knots, p <= 0, q <= 0 or gcd(p, q) != 1"""
    pass


class QRouteError(Exception):
    """Raised when Delta(t) - 1 - (mu/2)(t - 1) is not divisible by (t - 1)^2"""
    pass


@dataclass(frozen=True)
class SurgerySpec:
    """
    (-p/q)-surgery along the connected sum of algebraic knots.

    Raises:
        SurgeryDataError: On an empty knot list or invalid p, q
    """

    knots: Tuple[AlgebraicKnot, ...]
    p: int
    q: int

    def __post_init__(self):
        if not self.knots:
            raise SurgeryDataError("surgery requires at least one knot")
        if self.p <= 0 or self.q <= 0:
            raise SurgeryDataError(f"p and q must be positive, got p={self.p}, q={self.q}")
        if gcd(self.p, self.q) != 1:
            raise SurgeryDataError(f"gcd({self.p}, {self.q}) != 1")
        object.__setattr__(self, "knots", tuple(self.knots))

    @cached_property
    def continued_fraction(self) -> List[int]:
        return negative_continued_fraction(self.p, self.q)

    @property
    def m(self) -> int:
        """Sum of the knot multiplicities a_r p_r"""
        return sum(knot.multiplicity for knot in self.knots)

    @property
    def nu(self) -> int:
        return len(self.knots)

    @property
    def mu(self) -> int:
        return sum(knot.mu for knot in self.knots)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "knots": [{"newton_pairs": [list(pair) for pair in knot.newton_pairs]} for knot in self.knots],
            "p": self.p,
            "q": self.q,
            "continued_fraction": list(self.continued_fraction),
        }


class SurgeryDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    knots: List[KnotDocument] = Field(min_length=1)
    p: StrictInt
    q: StrictInt = 1


def surgery_from_document(raw: Any) -> SurgerySpec:
    """
    Build a surgery spec from a parsed JSON document {"knots": [...], "p": 7, "q": 2}.

    Raises:
        SurgeryDataError: On schema violations or invalid p, q
        KnotDataError: On invalid Newton pairs
    """
    try:
        document = SurgeryDocument.model_validate(raw)
    except ValidationError as e:
        error = e.errors()[0]
        raise SurgeryDataError(f"invalid surgery document: {error['msg']} at {list(error['loc'])}")
    return SurgerySpec(tuple(k.to_knot() for k in document.knots), document.p, document.q)


# ----------------------------------------------------------------------
# Graph assembly


@dataclass
class SurgeryLayout:
    """
    Vertex bookkeeping of a surgery graph.

    Attributes:
        spec: The surgery
        graph: The assembled plumbing graph
        chain: Ids v+1 .. v+s of the chain after v+
        knot_graphs: One resolution graph per knot, ids prefixed by "K{j}."
    """

    spec: SurgerySpec
    graph: PlumbingGraph
    chain: List[str]
    knot_graphs: List[KnotGraph]
    plus: str = PLUS

    @property
    def generator(self) -> str:
        """The vertex whose E* generates H: the last chain vertex, or v+ itself"""
        return self.chain[-1] if self.chain else self.plus

    def gamma(self, j: int, i: int) -> Set[str]:
        """Gamma^(j)_i: centers v_1..v_i of knot j with their end chains and the chains between them"""
        return self.knot_graphs[j].subgraph_through(i)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "plus": self.plus,
            "chain": list(self.chain),
            "generator": self.generator,
            "knots": [kg.to_dict() for kg in self.knot_graphs],
        }


@lru_cache(maxsize=64)
def surgery_layout(spec: SurgerySpec) -> SurgeryLayout:
    """
    Assemble the surgery graph.

    Raises:
        ResolutionGraphError: If a knot graph fails its checks
        GraphValidationError: If the assembled graph is not a negative definite tree
    """
    k0, *rest = spec.continued_fraction
    vertices: List[Tuple[str, int]] = [(PLUS, -k0 - spec.m)]
    edges: List[Tuple[str, str]] = []

    chain = []
    previous = PLUS
    for i, k in enumerate(rest, start=1):
        vertex_id = f"{PLUS}{i}"
        vertices.append((vertex_id, -k))
        edges.append((previous, vertex_id))
        chain.append(vertex_id)
        previous = vertex_id

    knot_graphs = []
    for j, knot in enumerate(spec.knots, start=1):
        knot_graph = knot_resolution_graph(knot, prefix=f"K{j}.")
        vertices.extend(knot_graph.vertices)
        edges.extend(knot_graph.edges)
        edges.append((PLUS, knot_graph.center))
        knot_graphs.append(knot_graph)

    graph = require_valid(PlumbingGraph.from_lists(vertices, edges))
    logger.info(
        f"🔧 Surgery graph for p/q = {spec.p}/{spec.q} along {spec.nu} knot(s): "
        f"[bold]{len(graph)}[/bold] vertices, v+ weight {-k0 - spec.m}"
    )
    return SurgeryLayout(spec=spec, graph=graph, chain=chain, knot_graphs=knot_graphs)


def surgery_graph(spec: SurgerySpec) -> PlumbingGraph:
    return surgery_layout(spec).graph


def class_of_residue(spec: SurgerySpec, h: int) -> ClassKey:
    """The class [h E*_{+s}] of H = Z/p"""
    layout = surgery_layout(spec)
    lattice = lattice_data(layout.graph)
    return lattice.class_of(lattice.dual_basis[layout.generator].scale(h))


def lens_chain_graph(spec: SurgerySpec) -> PlumbingGraph:
    """The bare chain v+, v+1, .., v+s with weights -k_0, .., -k_s (a plumbing of L(p, q))"""
    layout = surgery_layout(spec)
    ids = [layout.plus, *layout.chain]
    weights = [-k for k in spec.continued_fraction]
    return PlumbingGraph.from_lists(zip(ids, weights), zip(ids, ids[1:]))


@lru_cache(maxsize=1024)
def normalization_lift(spec: SurgerySpec, h: int) -> RationalVector:
    """
    The lift l'_h of the class [h E*_{+s}] that normalizes Q_h(1).

    The representative of h E*_{+s} with coordinates in [0, 1) is taken in the
    lattice of the bare chain; its dual coordinates d_i are carried over to the
    surgery graph as sum_i d_i E*_{v_i}. Chain coordinates of the E*_{v_i}
    agree in both lattices, so the lift lies in [h E*_{+s}]. With q = 1 the
    chain is v+ alone and the lift is h E*_{v+}.
    """
    layout = surgery_layout(spec)
    lattice = lattice_data(layout.graph)
    lens = lattice_data(lens_chain_graph(spec))
    r = lens.representative_r(lens.dual_basis[layout.generator].scale(h))
    lift = RationalVector.zero(lattice.size, lattice.det)
    for v, digit in zip(lens.graph.ids, lens.dual_coordinates(r)):
        lift = lift + lattice.dual_basis[v].scale(digit)
    return lift


def chi_correction(spec: SurgerySpec, h: int) -> Fraction:
    """sw_norm - Q_h(1) = chi(r_[l'_h]) - chi(l'_h) for the lift l'_h of residue h"""
    lattice = lattice_data(surgery_graph(spec))
    lift = normalization_lift(spec, h)
    return _chi(lattice, lattice.representative_r(lift)) - _chi(lattice, lift)


def block_determinant_checks(spec: SurgerySpec) -> List[str]:
    """
    D^(j)_i = det(Gamma - Gamma^(j)_i) against

        D_i = p + a_i p_i (p_{i+1} ... p_r)^2 q
        a_{i+1} D_i = q_{i+1} p + a_i p_i p_{i+1} D_{i+1}

    Returns:
        Failure messages, empty when every identity holds
    """
    layout = surgery_layout(spec)
    graph = layout.graph
    failures = []
    for j, knot in enumerate(spec.knots):
        pairs = knot.linking_pairs
        d = []
        for i, (p_i, a_i) in enumerate(pairs, start=1):
            value = graph.complement_determinant(layout.gamma(j, i))
            expected = spec.p + a_i * p_i * knot.tail_product(i) ** 2 * spec.q
            if value != expected:
                failures.append(f"knot {j + 1}: D_{i} = {value}, expected {expected}")
            d.append(value)
        for i in range(1, len(pairs)):
            p_i, a_i = pairs[i - 1]
            p_next, a_next = pairs[i]
            q_next = knot.newton_pairs[i][1]
            left = a_next * d[i - 1]
            right = q_next * spec.p + a_i * p_i * p_next * d[i]
            if left != right:
                failures.append(f"knot {j + 1}: a_{i + 1} D_{i} = {left} but q_{i + 1} p + a_{i} p_{i} p_{i + 1} D_{i + 1} = {right}")
    return failures


# ----------------------------------------------------------------------
# Q route


@dataclass
class QPolynomial:
    """
    Delta(t) = 1 + (mu/2)(t - 1) + (t - 1)^2 Q(t) with the residue parts of Q.

    Attributes:
        delta: Product of the Alexander polynomials
        mu: Sum of the Milnor numbers
        coefficients: q_0 .. q_{mu-2}
        p, q: The surgery coefficient
        parts: Q_h(t) for 0 <= h < p
    """

    delta: Poly
    mu: int
    coefficients: List[int]
    p: int
    q: int
    parts: Dict[int, LaurentPoly] = field(default_factory=dict)

    @property
    def polynomial(self) -> LaurentPoly:
        return LaurentPoly.univariate(self.coefficients)

    def part(self, h: int) -> LaurentPoly:
        return self.parts[h % self.p]

    def value_at_one(self, h: int) -> int:
        """The alternatively normalized invariant Q_h(1)"""
        return int(self.part(h).evaluate_at_one())

    def residue_sum(self) -> LaurentPoly:
        total = LaurentPoly.zero(1)
        for part in self.parts.values():
            total = total + part
        return total

    def residue_sum_check(self) -> Dict[str, bool]:
        """Whether sum_h Q_h equals Q, and whether it equals q Q"""
        total = self.residue_sum()
        return {"equals_Q": total == self.polynomial, "equals_qQ": total == self.polynomial.scale(self.q)}

    def symmetry_holds(self) -> bool:
        """q_{mu-2-i} = q_i + i + 1 - mu/2"""
        top = self.mu - 2
        half = self.mu // 2
        return all(self.coefficients[top - i] == self.coefficients[i] + i + 1 - half for i in range(top + 1))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "delta": [int(c) for c in reversed(self.delta.all_coeffs())],
            "mu": self.mu,
            "Q": list(self.coefficients),
            "Q_h_at_1": {str(h): self.value_at_one(h) for h in sorted(self.parts)},
            "residue_sum": self.residue_sum_check(),
        }


def q_route(spec: SurgerySpec) -> QPolynomial:
    """
    Q(t) by exact division and its parts

        Q_h(t) = sum over i >= 0 of q_n t^n with n = floor((i p + h) / q) <= mu - 2

    Raises:
        QRouteError: If the division by (t - 1)^2 leaves a remainder
    """
    delta = Poly(1, t, domain=ZZ)
    for knot in spec.knots:
        delta = delta * knot.alexander
    mu = spec.mu
    shifted = delta - Poly(1 + (mu // 2) * (t - 1), t, domain=ZZ)
    quotient, remainder = shifted.div(Poly((t - 1) ** 2, t, domain=ZZ))
    if not remainder.is_zero:
        raise QRouteError(f"Delta(t) - 1 - (mu/2)(t - 1) is not divisible by (t - 1)^2 for {spec.to_dict()}")

    coefficients = [int(c) for c in reversed(quotient.all_coeffs())]
    coefficients += [0] * (mu - 1 - len(coefficients))

    parts = {}
    for h in range(spec.p):
        terms: Dict[Tuple[int], int] = {}
        i = 0
        while (n := (i * spec.p + h) // spec.q) <= mu - 2:
            terms[(n,)] = terms.get((n,), 0) + coefficients[n]
            i += 1
        parts[h] = LaurentPoly(1, 1, terms)

    logger.debug(f"📐 Q route: mu = {mu}, Q = {coefficients}")
    return QPolynomial(delta=delta, mu=mu, coefficients=coefficients, p=spec.p, q=spec.q, parts=parts)


# ----------------------------------------------------------------------
# Structure checks

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class CheckReport:
    """Outcome of the structure checks on one surgery graph"""

    spec: SurgerySpec
    results: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    def result(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "surgery": self.spec.to_dict(),
            "passed": self.passed,
            "checks": [r.to_dict() for r in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=str)


def _outcome(name: str, failures: Sequence[str]) -> CheckResult:
    if failures:
        return CheckResult(name, FAIL, "; ".join(failures[:10]))
    return CheckResult(name, PASS)


def _skipped(name: str) -> CheckResult:
    return CheckResult(name, SKIPPED, "v+ is not a node")


def _chi(lattice: LatticeData, x: RationalVector) -> Fraction:
    return lattice.chi(lattice.canonical_class, x)


def _at_one(poly: LaurentPoly) -> Fraction:
    return Fraction(poly.evaluate_at_one())


def structure_checks(
    spec: SurgerySpec,
    report: InvariantReport,
    route: Optional[QPolynomial] = None,
) -> CheckReport:
    """
    Relations between the polynomial parts of the surgery graph and the Q route.

    Every check is pass, fail or skipped; the checks that need v+ as an orbifold
    node are skipped when v+ has fewer than three neighbours.

    Args:
        spec: The surgery
        report: Invariant report of surgery_graph(spec), any subset of classes
        route: A precomputed q_route(spec)
    """
    layout = surgery_layout(spec)
    graph = layout.graph
    lattice = lattice_data(graph)
    route = route or q_route(spec)
    plus_is_node = PLUS in graph.nodes
    plus_at = graph.nodes.index(PLUS) if plus_is_node else None
    orbifold = orbifold_graph(graph, PLUS) if plus_is_node else None

    residue_of = {class_of_residue(spec, h): h for h in range(spec.p)}
    den = lattice.det

    def residue_terms(entry: ClassInvariants) -> Tuple[int, Fraction]:
        h = residue_of[entry.h]
        return h, chi_correction(spec, h)

    def p_plus_restricted(entry: ClassInvariants) -> LaurentPoly:
        return entry.part.plus.restrict(lambda b: b[plus_at] >= 0)

    results = []

    # (a) no multiplicity >= 2 among exponents with beta_+ >= 0
    if plus_is_node:
        failures = [
            f"class {entry.h}: s({list(b)}/{den}) = {s}"
            for entry in report.classes
            for b, _ in entry.part.plus
            if b[plus_at] >= 0 and (s := multiplicity(b, orbifold)) != 1
        ]
        results.append(_outcome("nonnegative_plus_multiplicity_one", failures))
    else:
        results.append(_skipped("nonnegative_plus_multiplicity_one"))

    # (b) h = 0: P_0 = P+_0 and beta_+ >= 0 throughout
    zero = lattice.group.zero
    zero_entries = [entry for entry in report.classes if entry.h == zero]
    if zero_entries:
        entry = zero_entries[0]
        failures = []
        if entry.part.weighted != entry.part.plus:
            failures.append("P_0 differs from P+_0")
        if plus_is_node:
            failures.extend(
                f"beta_+ < 0 at {list(b)}/{den}" for b, _ in entry.part.plus if b[plus_at] < 0
            )
        results.append(_outcome("canonical_class_plus_equals_part", failures))
    else:
        results.append(CheckResult("canonical_class_plus_equals_part", SKIPPED, "class 0 not in the report"))

    # (c) P_h(1) - P^{v+}_h(1) = chi(r_h) - chi(l'_h)
    if plus_is_node:
        failures = []
        for entry in report.classes:
            h, correction = residue_terms(entry)
            difference = _at_one(entry.part.weighted) - _at_one(p_plus_restricted(entry))
            if difference != correction:
                failures.append(f"h = {h}: {rational_string(difference)} != {rational_string(correction)}")
        results.append(_outcome("negative_part_is_chi_difference", failures))
    else:
        results.append(_skipped("negative_part_is_chi_difference"))

    # (d) beta^(j)_i < a_i p_i ... p_r (beta_+ + 1)
    if plus_is_node:
        bounds = []
        for j, knot in enumerate(spec.knots):
            for i, (p_i, a_i) in enumerate(knot.linking_pairs, start=1):
                center = layout.knot_graphs[j].centers[i - 1]
                bounds.append((center, graph.nodes.index(center), a_i * p_i * knot.tail_product(i)))
        failures = [
            f"class {entry.h}: {center} coordinate of {list(b)}/{den} exceeds {bound} (beta_+ + 1)"
            for entry in report.classes
            for b, _ in entry.part.plus
            for center, at, bound in bounds
            if not b[at] < bound * (b[plus_at] + den)
        ]
        results.append(_outcome("center_coordinates_bounded", failures))
    else:
        results.append(_skipped("center_coordinates_bounded"))

    # (e) sw_norm = Q_h(1) + chi(r_h) - chi(l'_h)
    failures = []
    for entry in report.classes:
        h, correction = residue_terms(entry)
        expected = route.value_at_one(h) + correction
        if entry.sw_norm != expected:
            failures.append(f"h = {h}: sw_norm {rational_string(entry.sw_norm)} != {rational_string(expected)}")
    results.append(_outcome("alexander_route_agrees", failures))

    # (f) P^{v+}_h(1) = Q_h(1)
    if plus_is_node:
        failures = []
        for entry in report.classes:
            h = residue_of[entry.h]
            value = _at_one(p_plus_restricted(entry))
            if value != route.value_at_one(h):
                failures.append(f"h = {h}: {rational_string(value)} != {route.value_at_one(h)}")
        results.append(_outcome("nonnegative_plus_part_is_Q", failures))
    else:
        results.append(_skipped("nonnegative_plus_part_is_Q"))

    # (g) determinant identities of the knot blocks
    results.append(_outcome("block_determinants", block_determinant_checks(spec)))

    # (h) H = Z/p generated by [E*_{+s}]
    failures = []
    if lattice.det != spec.p:
        failures.append(f"det = {lattice.det}, expected {spec.p}")
    if not lattice.group.is_cyclic:
        failures.append(f"H is not cyclic: {lattice.group.invariant_factors}")
    order = lattice.dual_orders[layout.generator]
    if order != spec.p:
        failures.append(f"[E*] of {layout.generator} has order {order}, expected {spec.p}")
    results.append(_outcome("cyclic_homology", failures))

    check_report = CheckReport(spec=spec, results=results)
    if check_report.passed:
        logger.info(f"✅ Structure checks passed for p/q = {spec.p}/{spec.q}")
    else:
        failed = [r.name for r in results if r.status == FAIL]
        logger.warning(f"⚠️ Structure checks failed for p/q = {spec.p}/{spec.q}: [red]{', '.join(failed)}[/red]")
    return check_report


def surgery_spec(newton_pairs: Iterable[Sequence[Sequence[int]]], p: int, q: int = 1) -> SurgerySpec:
    """Convenience constructor from raw Newton-pair lists"""
    return SurgerySpec(tuple(AlgebraicKnot(tuple(tuple(pair) for pair in pairs)) for pairs in newton_pairs), p, q)
