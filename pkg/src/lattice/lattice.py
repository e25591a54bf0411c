"""
Lattice Data

Exact arithmetic in the lattice L spanned by the vertices of a negative
definite plumbing tree and in its dual L'. Vectors are RationalVector values in
the E_v basis over the global denominator det(Gamma); the adjugate of -I holds
every E*_v as an integer column.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, List, Sequence, Tuple, Union

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from src.graph.plumbing import NoNodesError, PlumbingGraph, require_valid
from .discriminant import ClassKey, DiscriminantGroup, discriminant_group_of_form
from .rational import RationalVector, ReducedExponent

logger = logging.getLogger(__name__)

ClassLike = Union[ClassKey, RationalVector]


class LatticeError(Exception):
    """Raised when a vector is not an element of the dual lattice L'"""
    pass


@dataclass(frozen=True, eq=False)
class LatticeData:
    """
    Intersection form, dual basis, canonical class and discriminant group of a graph.

    Attributes:
        graph: The validated plumbing graph
        det: det(-I) = |H|
        adjugate: det * (-I)^-1, an integer matrix with positive entries
        group: Discriminant group H = L'/L with its class map
    """

    graph: PlumbingGraph
    det: int
    adjugate: Tuple[Tuple[int, ...], ...]
    group: DiscriminantGroup
    form: Tuple[Tuple[int, ...], ...] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.graph)

    # ------------------------------------------------------------------
    # Pairings

    def dual_basis_vector(self, v: str) -> RationalVector:
        """E*_v: the vector with (E*_v, E_w) = -delta_vw"""
        j = self.graph.index[self.graph.require(v)]
        return RationalVector(tuple(row[j] for row in self.adjugate), self.det)

    @cached_property
    def dual_basis(self) -> Dict[str, RationalVector]:
        return {v: self.dual_basis_vector(v) for v in self.graph.ids}

    def basis_vector(self, v: str) -> RationalVector:
        j = self.graph.index[self.graph.require(v)]
        return RationalVector.integral((1 if i == j else 0 for i in range(self.size)), self.det)

    def pairing(self, v: str, w: str) -> Fraction:
        """(E*_v, E*_w) from the inverse matrix"""
        i = self.graph.index[self.graph.require(v)]
        j = self.graph.index[self.graph.require(w)]
        return Fraction(-self.adjugate[i][j], self.det)

    def pairing_by_determinants(self, v: str, w: str) -> Fraction:
        """(E*_v, E*_w) = -det(Gamma minus [v, w]) / det(Gamma)"""
        removed = self.graph.path_vertices(v, w)
        return Fraction(-self.graph.component_determinant(u for u in self.graph.ids if u not in removed), self.det)

    def _form_image(self, x: RationalVector) -> List[Fraction]:
        """(x, E_v) for every v"""
        return [
            Fraction(sum(a * b for a, b in zip(row, x.num)), x.den)
            for row in self.form
        ]

    def pair(self, x: RationalVector, y: RationalVector) -> Fraction:
        """(x, y) = x^T I y"""
        image = self._form_image(y)
        return sum((Fraction(a, x.den) * b for a, b in zip(x.num, image)), Fraction(0))

    def self_pairing(self, x: RationalVector) -> Fraction:
        return self.pair(x, x)

    def chi(self, k: RationalVector, x: RationalVector) -> Fraction:
        """chi_k(x) = -(k + x, x) / 2"""
        return -self.pair(k + x, x) / 2

    @cached_property
    def canonical_class(self) -> RationalVector:
        """K with (K + E_v, E_v) + 2 = 0, i.e. K = sum_v (e_v + 2) E*_v"""
        weights = [v.euler + 2 for v in self.graph.vertices]
        num = tuple(
            sum(w * a for w, a in zip(weights, row))
            for row in self.adjugate
        )
        return RationalVector(num, self.det)

    # ------------------------------------------------------------------
    # Classes

    def dual_coordinates(self, x: RationalVector) -> List[int]:
        """
        Coordinates c of x = sum_v c_v E*_v, that is c_v = -(x, E_v).

        Raises:
            LatticeError: If x is not in L'
        """
        coords = []
        for value in self._form_image(x):
            if value.denominator != 1:
                raise LatticeError(f"vector {x.to_dict()} is not in the dual lattice")
            coords.append(-int(value))
        return coords

    def class_of(self, x: RationalVector) -> ClassKey:
        return self.group.class_of_dual_coordinates(self.dual_coordinates(x))

    def as_class(self, h: ClassLike) -> ClassKey:
        """Accept either a class tuple or any l' representing it"""
        if isinstance(h, RationalVector):
            return self.class_of(h)
        h = tuple(int(c) for c in h)
        if len(h) != len(self.group.invariant_factors):
            raise LatticeError(f"class {h} does not match invariant factors {self.group.invariant_factors}")
        return self.group.reduce(h)

    def element_of_class(self, h: ClassLike) -> RationalVector:
        """Some l' in L' with [l'] = h (sum of E*_v with the transformation coefficients)"""
        coords = self.group.dual_coordinates_of(self.as_class(h))
        num = [0] * self.size
        for v, c in zip(self.graph.ids, coords):
            if c:
                e_star = self.dual_basis[v]
                for i in range(self.size):
                    num[i] += c * e_star.num[i]
        return RationalVector(tuple(num), self.det)

    def representative_r(self, h: ClassLike) -> RationalVector:
        """The unique r_h with E-coordinates in [0, 1) and [r_h] = h"""
        if isinstance(h, RationalVector):
            self.dual_coordinates(h)
            return h.fractional_part()
        return self.element_of_class(h).fractional_part()

    def classes(self) -> List[ClassKey]:
        return self.group.elements()

    def class_order(self, h: ClassLike) -> int:
        return self.group.order_of(self.as_class(h))

    def class_add(self, a: ClassLike, b: ClassLike) -> ClassKey:
        return self.group.add(self.as_class(a), self.as_class(b))

    def class_scale(self, a: ClassLike, k: int) -> ClassKey:
        return self.group.scale(self.as_class(a), k)

    @cached_property
    def dual_classes(self) -> Dict[str, ClassKey]:
        """[E*_v] for every vertex"""
        return {
            v: self.group.class_of_dual_coordinates([1 if u == v else 0 for u in self.graph.ids])
            for v in self.graph.ids
        }

    @cached_property
    def dual_orders(self) -> Dict[str, int]:
        """Order o_v of [E*_v] in H"""
        return {v: self.group.order_of(h) for v, h in self.dual_classes.items()}

    # ------------------------------------------------------------------
    # Lipman cone and deep points

    def is_deep(self, x: RationalVector) -> bool:
        """(x + K, E_v) < 0 for every v"""
        return all(value < 0 for value in self._form_image(x + self.canonical_class))

    def deep_point(self, margin: int = 1) -> RationalVector:
        """
        An integral x with (x + K, E_v) < 0 for every v.

        Starts from ceil(-K + margin * sum_v E*_v) and doubles the margin until
        the strict inequalities hold.
        """
        if margin < 1:
            raise ValueError(f"margin must be a positive integer, got {margin}")
        total = RationalVector(
            tuple(sum(row) for row in self.adjugate),
            self.det,
        )
        while True:
            x = (total.scale(margin) - self.canonical_class).ceil()
            if self.is_deep(x):
                logger.debug(f"📍 Deep point found with margin [bold]{margin}[/bold]")
                return x
            margin *= 2

    def shifted_deep_point(self, x: RationalVector) -> RationalVector:
        """A second deep point different from x"""
        for v in self.graph.ids:
            candidate = x + self.basis_vector(v)
            if self.is_deep(candidate):
                return candidate
        # x + det * E*_v stays integral and moves (x + K, E_w) by -det * delta_vw
        v = min(self.graph.ids, key=lambda u: (sum(self.dual_basis[u].num), self.graph.index[u]))
        return x + self.dual_basis[v].scale(self.det)

    # ------------------------------------------------------------------
    # Node projection

    @property
    def nodes(self) -> Tuple[str, ...]:
        return self.graph.nodes

    def project_to_nodes(self, x: RationalVector) -> ReducedExponent:
        """pi_N(x): the node coordinates of x"""
        if not self.nodes:
            raise NoNodesError()
        index = self.graph.index
        return ReducedExponent(tuple(x.num[index[n]] for n in self.nodes), x.den)

    @cached_property
    def projected_duals(self) -> Dict[str, Tuple[int, ...]]:
        """Numerators of pi_N(E*_v) over det for every vertex"""
        index = self.graph.index
        return {
            v: tuple(self.adjugate[index[n]][index[v]] for n in self.nodes)
            for v in self.graph.ids
        }


def _adjugate(graph: PlumbingGraph, det: int) -> Tuple[Tuple[int, ...], ...]:
    inverse = graph.negative_form().to_field().inv().to_Matrix()
    n = len(graph)
    return tuple(tuple(int(inverse[i, j] * det) for j in range(n)) for i in range(n))


@lru_cache(maxsize=64)
def lattice_data(graph: PlumbingGraph) -> LatticeData:
    """
    Build (and memoize per graph value) the lattice data of a negative definite tree.

    Raises:
        GraphValidationError: If the graph is not a negative definite tree
    """
    require_valid(graph)
    det = graph.determinant()
    form = tuple(tuple(row) for row in graph.intersection_matrix())
    negative = [[-a for a in row] for row in form]
    data = LatticeData(
        graph=graph,
        det=det,
        adjugate=_adjugate(graph, det),
        group=discriminant_group_of_form(negative),
        form=form,
    )
    logger.info(f"🔷 Lattice of [bold]{len(graph)}[/bold] vertices: det [bold cyan]{det}[/bold cyan], H = {data.group.invariant_factors or '(trivial)'}")
    return data


def dual_basis_vector(graph: PlumbingGraph, v: str) -> RationalVector:
    return lattice_data(graph).dual_basis_vector(v)


def pairing(graph: PlumbingGraph, v: str, w: str) -> Fraction:
    return lattice_data(graph).pairing(v, w)


def discriminant_group(graph: PlumbingGraph) -> DiscriminantGroup:
    return lattice_data(graph).group


def representative_r(graph: PlumbingGraph, h: ClassLike) -> RationalVector:
    return lattice_data(graph).representative_r(h)


def canonical_class(graph: PlumbingGraph) -> RationalVector:
    return lattice_data(graph).canonical_class


def chi(graph: PlumbingGraph, k: RationalVector, x: RationalVector) -> Fraction:
    return lattice_data(graph).chi(k, x)


def deep_point(graph: PlumbingGraph, margin: int = 1) -> RationalVector:
    return lattice_data(graph).deep_point(margin)


def project_to_nodes(graph: PlumbingGraph, x: RationalVector) -> ReducedExponent:
    return lattice_data(graph).project_to_nodes(x)
