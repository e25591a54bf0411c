"""
Reduced Zeta Function

Expands the zeta-function f(t) = prod_v (1 - t^E*_v)^(delta_v - 2) in the node
variables, splitting it by class in H. Each end factor 1/(1 - t^E*_v) is lifted
to (sum_{j<o_v} t^(j E*_v)) / (1 - t^(o_v E*_v)) with o_v the order of [E*_v],
so every denominator exponent is class-trivial and the numerator monomials
carry their classes exactly.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb, prod
from typing import Any, Dict, List, Tuple

from src.graph.plumbing import NoNodesError, PlumbingGraph
from src.lattice.discriminant import ClassKey
from src.lattice.lattice import LatticeData, lattice_data
from src.laurent.division import DenominatorFactorList, TermBudgetExceeded
from src.laurent.poly import Exponent, LaurentPoly
from src.util.config import DEFAULT_TERM_CAP

logger = logging.getLogger(__name__)

ClassTerms = Dict[Tuple[ClassKey, Exponent], int]


@dataclass(frozen=True, eq=False)
class ReducedZeta:
    """
    Class-split reduced zeta-function f_h(t_N) = B_h / prod_ends (1 - t^(o_v pi(E*_v))).

    Attributes:
        lattice: Lattice data of the graph
        nodes: Node ids in file order (the variable order)
        numerators: B_h for every class h of H (zero polynomials included)
        factors: Lifted denominator factors, one per end
        base_numerator: prod_nodes (1 - t^pi(E*_n))^(delta_n - 2), unsplit
        base_factors: Unlifted factors pi(E*_v), one per end
        ends: End ids in file order, aligned with the factors
    """

    lattice: LatticeData
    nodes: Tuple[str, ...]
    numerators: Dict[ClassKey, LaurentPoly]
    factors: DenominatorFactorList
    base_numerator: LaurentPoly
    base_factors: DenominatorFactorList
    ends: Tuple[str, ...]

    @property
    def den(self) -> int:
        return self.lattice.det

    @property
    def nvars(self) -> int:
        return len(self.nodes)

    @property
    def classes(self) -> List[ClassKey]:
        return sorted(self.numerators)

    def numerator(self, h: ClassKey) -> LaurentPoly:
        return self.numerators.get(tuple(h), LaurentPoly.zero(self.nvars, self.den))

    def total_numerator(self) -> LaurentPoly:
        """sum_h B_h"""
        total = LaurentPoly.zero(self.nvars, self.den)
        for poly in self.numerators.values():
            total = total + poly
        return total

    def lifted_base_numerator(self) -> LaurentPoly:
        """The unsplit numerator times every lift sum; equals sum_h B_h"""
        result = self.base_numerator
        for v, c in zip(self.ends, self.base_factors):
            order = self.lattice.dual_orders[v]
            lift = LaurentPoly(self.nvars, self.den, {tuple(j * x for x in c): 1 for j in range(order)})
            result = result * lift
        return result

    def to_dict(self) -> Dict[str, Any]:
        return {
            "det": self.den,
            "nodes": list(self.nodes),
            "ends": list(self.ends),
            "factors": self.factors.to_dict(),
            "classes": [
                {"h": list(h), "terms": len(self.numerators[h])}
                for h in self.classes
            ],
        }


def _factor_terms(lattice: LatticeData, v: str, exponents: List[int]) -> List[Tuple[ClassKey, Exponent, int]]:
    """(class, exponent, coefficient) of sum_j coeff_j t^(j E*_v) for j with nonzero coeff_j"""
    group = lattice.group
    g = lattice.dual_classes[v]
    c = lattice.projected_duals[v]
    return [
        (group.scale(g, j), tuple(j * x for x in c), coeff)
        for j, coeff in enumerate(exponents)
        if coeff
    ]


def _multiply(current: ClassTerms, terms: List[Tuple[ClassKey, Exponent, int]], moduli: Tuple[int, ...], term_cap: int) -> ClassTerms:
    result: ClassTerms = {}
    for (cls, exp), coeff in current.items():
        for dcls, dexp, dcoeff in terms:
            key = (
                tuple((a + b) % d for a, b, d in zip(cls, dcls, moduli)),
                tuple(a + b for a, b in zip(exp, dexp)),
            )
            result[key] = result.get(key, 0) + coeff * dcoeff
        if len(result) > term_cap:
            raise TermBudgetExceeded("reduced zeta expansion", term_cap)
    return {k: v for k, v in result.items() if v}


def estimate_expansion_terms(graph: PlumbingGraph) -> int:
    """Upper bound on the monomials produced by the class-tracking expansion"""
    lattice = lattice_data(graph)
    valency = graph.classification.valency
    node_part = prod(valency[n] - 1 for n in graph.nodes)
    end_part = prod(lattice.dual_orders[v] for v in graph.ends)
    return node_part * end_part


def build_reduced_zeta(graph: PlumbingGraph, term_cap: int = DEFAULT_TERM_CAP) -> ReducedZeta:
    """
    Expand prod_nodes (1 - t^E*_n)^(delta_n - 2) * prod_ends sum_{j<o_v} t^(j E*_v)
    in node variables, tracking the class of every monomial.

    Raises:
        NoNodesError: If the graph has no node
        TermBudgetExceeded: If the expansion stores more than term_cap monomials
    """
    return _build_reduced_zeta(graph, term_cap)


@lru_cache(maxsize=16)
def _build_reduced_zeta(graph: PlumbingGraph, term_cap: int) -> ReducedZeta:
    if not graph.nodes:
        raise NoNodesError()
    lattice = lattice_data(graph)
    nodes = graph.nodes
    ends = graph.ends
    valency = graph.classification.valency
    moduli = lattice.group.invariant_factors
    nvars = len(nodes)
    den = lattice.det

    current: ClassTerms = {(lattice.group.zero, (0,) * nvars): 1}
    base = LaurentPoly.one(nvars, den)
    for n in nodes:
        power = valency[n] - 2
        binomial = [(-1) ** j * comb(power, j) for j in range(power + 1)]
        terms = _factor_terms(lattice, n, binomial)
        current = _multiply(current, terms, moduli, term_cap)
        base = base * LaurentPoly(nvars, den, {e: c for _, e, c in terms})

    for v in ends:
        terms = _factor_terms(lattice, v, [1] * lattice.dual_orders[v])
        current = _multiply(current, terms, moduli, term_cap)
        logger.debug(f"🧮 End {v}: [bold]{len(current)}[/bold] class-tracked monomials")

    split: Dict[ClassKey, Dict[Exponent, int]] = {h: {} for h in lattice.classes()}
    for (cls, exp), coeff in current.items():
        split[cls][exp] = coeff

    zeta = ReducedZeta(
        lattice=lattice,
        nodes=nodes,
        numerators={h: LaurentPoly(nvars, den, terms) for h, terms in split.items()},
        factors=DenominatorFactorList.of(
            (tuple(lattice.dual_orders[v] * x for x in lattice.projected_duals[v]) for v in ends),
            nvars,
            den,
        ),
        base_numerator=base,
        base_factors=DenominatorFactorList.of((lattice.projected_duals[v] for v in ends), nvars, den),
        ends=ends,
    )
    logger.info(f"🧮 Expanded reduced zeta: [bold cyan]{len(current)}[/bold cyan] terms over {len(split)} classes")
    return zeta
