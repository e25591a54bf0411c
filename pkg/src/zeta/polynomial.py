"""
Polynomial Parts

P+_h is the quotient of the division of B_h by the end factors with respect to
all node coordinates. P_h reweights each monomial p_b t^b of P+_h by the
multiplicity s(b), counted over the rooted orbifold graph:

    s(b) = [b_root >= 0] + #{edges n > n' : b_n >= 0 and b_n' < 0}

polynomial_part_via_pairs recomputes P_h from one- and two-node divisions:

    P_h = sum_{edges n > n'} P^{n,n'}_h - sum_n (delta_n,N - 1) P^n_h
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from src.graph.orbifold import OrbifoldGraph, orbifold_graph
from src.graph.plumbing import GraphValidationError
from src.lattice.discriminant import ClassKey
from src.lattice.rational import ReducedExponent, exponent_strings
from src.laurent.division import DivisionResult, divide, taylor_coefficients
from src.laurent.poly import Coefficient, Exponent, LaurentPoly, coefficient_string
from src.util.config import DEFAULT_TERM_CAP
from .reduced import ReducedZeta

logger = logging.getLogger(__name__)


def _node_positions(zeta: ReducedZeta, nodes: Sequence[str]) -> Tuple[int, ...]:
    index = {n: i for i, n in enumerate(zeta.nodes)}
    return tuple(index[n] for n in nodes)


def decompose(zeta: ReducedZeta, h: ClassKey, term_cap: int = DEFAULT_TERM_CAP) -> DivisionResult:
    """f_h = P+_h + R/A with the remainder kept (S = all nodes)"""
    return divide(zeta.numerator(h), zeta.factors, range(zeta.nvars), term_cap=term_cap)


def polynomial_plus(zeta: ReducedZeta, h: ClassKey, term_cap: int = DEFAULT_TERM_CAP) -> LaurentPoly:
    """P+_h: the quotient of B_h by the end factors with S = all nodes"""
    result = divide(zeta.numerator(h), zeta.factors, range(zeta.nvars), want_remainder=False, term_cap=term_cap)
    logger.debug(f"➕ P+ for class {h}: [bold]{len(result.quotient)}[/bold] monomials")
    return result.quotient


def multiplicity(beta: Union[ReducedExponent, Sequence[int]], orbifold: OrbifoldGraph) -> int:
    """
    s(beta) over the rooted orbifold graph.

    Only signs matter, so beta may be given by its numerators. Coordinates are
    aligned with orbifold.nodes.

    Raises:
        GraphValidationError: If beta does not have one coordinate per node
    """
    values = beta.num if isinstance(beta, ReducedExponent) else tuple(beta)
    if len(values) != len(orbifold.nodes):
        raise GraphValidationError(f"exponent has {len(values)} coordinates for {len(orbifold.nodes)} nodes")
    position = {n: i for i, n in enumerate(orbifold.nodes)}
    total = 1 if values[position[orbifold.root]] >= 0 else 0
    for n, m in orbifold.edges:
        if values[position[n]] >= 0 and values[position[m]] < 0:
            total += 1
    return total


@dataclass
class PolynomialPart:
    """
    P+_h and P_h of one class.

    Attributes:
        h: Class in H
        den: Exponent denominator det(Gamma)
        nodes: Node ids (coordinate order)
        root: Orbifold root used for the multiplicities
        terms: (beta, p_beta, s(beta)) in graded-lexicographic descending order
    """

    h: ClassKey
    den: int
    nodes: Tuple[str, ...]
    root: str
    terms: List[Tuple[Exponent, Coefficient, int]] = field(default_factory=list)

    @property
    def plus(self) -> LaurentPoly:
        return LaurentPoly(len(self.nodes), self.den, {b: p for b, p, _ in self.terms})

    @property
    def weighted(self) -> LaurentPoly:
        """P_h = sum s(beta) p_beta t^beta"""
        return LaurentPoly(len(self.nodes), self.den, {b: s * p for b, p, s in self.terms})

    def multiplicities(self) -> Dict[Exponent, int]:
        return {b: s for b, _, s in self.terms}

    def with_multiplicity_at_least(self, k: int) -> List[Tuple[Exponent, Coefficient, int]]:
        return [t for t in self.terms if t[2] >= k]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "h": list(self.h),
            "root": self.root,
            "terms": [
                {
                    "exp": {"num": list(b), "den": self.den},
                    "values": exponent_strings(b, self.den),
                    "coeff": coefficient_string(p),
                    "s": s,
                }
                for b, p, s in self.terms
            ],
        }


def polynomial_part(
    zeta: ReducedZeta,
    h: ClassKey,
    orbifold: Optional[OrbifoldGraph] = None,
    plus: Optional[LaurentPoly] = None,
    term_cap: int = DEFAULT_TERM_CAP,
) -> PolynomialPart:
    """
    P_h = sum_{beta in B_h} s(beta) p_beta t^beta.

    Args:
        zeta: The class-split reduced zeta-function
        h: Class in H
        orbifold: Rooted orbifold graph; defaults to the smallest node id as root
        plus: A precomputed P+_h
    """
    orbifold = orbifold or orbifold_graph(zeta.lattice.graph)
    plus = plus if plus is not None else polynomial_plus(zeta, h, term_cap)
    terms = [(b, p, multiplicity(b, orbifold)) for b, p in plus]
    return PolynomialPart(h=tuple(h), den=zeta.den, nodes=zeta.nodes, root=orbifold.root, terms=terms)


def polynomial_part_via_pairs(
    zeta: ReducedZeta,
    h: ClassKey,
    orbifold: Optional[OrbifoldGraph] = None,
    term_cap: int = DEFAULT_TERM_CAP,
) -> LaurentPoly:
    """P_h from divisions with S = {n} and S = {n, n'} over the orbifold graph"""
    orbifold = orbifold or orbifold_graph(zeta.lattice.graph)
    numerator = zeta.numerator(h)
    result = LaurentPoly.zero(zeta.nvars, zeta.den)

    def quotient(nodes: Sequence[str]) -> LaurentPoly:
        subset = _node_positions(zeta, nodes)
        return divide(numerator, zeta.factors, subset, want_remainder=False, term_cap=term_cap).quotient

    for n, m in orbifold.edges:
        result = result + quotient([n, m])
    for n in orbifold.nodes:
        weight = orbifold.valency[n] - 1
        if weight:
            result = result - quotient([n]).scale(weight)
    return result


def root_invariance(
    zeta: ReducedZeta,
    h: ClassKey,
    plus: Optional[LaurentPoly] = None,
    term_cap: int = DEFAULT_TERM_CAP,
) -> bool:
    """P_h is the same for every choice of orbifold root"""
    plus = plus if plus is not None else polynomial_plus(zeta, h, term_cap)
    base = orbifold_graph(zeta.lattice.graph)
    reference = polynomial_part(zeta, h, base, plus).weighted
    return all(
        polynomial_part(zeta, h, base.reroot(root), plus).weighted == reference
        for root in base.nodes
    )


def sign_pattern_holds(beta: Sequence[int], order: Sequence[int]) -> bool:
    """
    Along a bamboo (coordinate positions in path order) the nonnegative
    coordinates of beta form one nonempty contiguous run.
    """
    signs = [beta[i] >= 0 for i in order]
    if not any(signs):
        return False
    first = signs.index(True)
    last = len(signs) - 1 - signs[::-1].index(True)
    return all(signs[first:last + 1])


def decomposition_check(
    zeta: ReducedZeta,
    h: ClassKey,
    box: Sequence[int],
    term_cap: int = DEFAULT_TERM_CAP,
) -> bool:
    """taylor(P+_h) + taylor(R/A) equals taylor(f_h) on the exponents NOT >= box"""
    box = tuple(box)
    result = decompose(zeta, h, term_cap)
    left: Dict[Exponent, Coefficient] = {
        b: p for b, p in result.quotient if any(x < y for x, y in zip(b, box))
    }
    for e, c in taylor_coefficients(result.remainder, zeta.factors, box, term_cap).items():
        left[e] = left.get(e, 0) + c
    left = {e: c for e, c in left.items() if c}
    right = taylor_coefficients(zeta.numerator(h), zeta.factors, box, term_cap)
    return left == right
