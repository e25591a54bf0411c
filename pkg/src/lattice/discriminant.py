"""
Discriminant Group

H = L'/L computed from the Smith normal form D = S * M * T of M = -I.
An element l' of L' with E*-coordinates c (integral, c = M x for E-coordinates
x) has class S c reduced modulo the invariant factors. Only the factors
greater than one are kept, so H is carried as a tuple of residues.
"""

import itertools
import logging
from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterator, List, Sequence, Tuple

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

logger = logging.getLogger(__name__)

ClassKey = Tuple[int, ...]


@dataclass(frozen=True)
class DiscriminantGroup:
    """
    Finite abelian group H with the class map of the dual lattice.

    Attributes:
        invariant_factors: d_1 | d_2 | ... (only factors > 1)
        transform: Rows of S for the kept factors (E*-coordinates -> residues)
        inverse_columns: Columns of S^-1 for the kept factors (residues -> E*-coordinates)
        order: |H| = det(Gamma)
    """

    invariant_factors: Tuple[int, ...]
    transform: Tuple[Tuple[int, ...], ...]
    inverse_columns: Tuple[Tuple[int, ...], ...]
    order: int

    @property
    def zero(self) -> ClassKey:
        return (0,) * len(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def reduce(self, residues: Sequence[int]) -> ClassKey:
        return tuple(r % d for r, d in zip(residues, self.invariant_factors))

    def class_of_dual_coordinates(self, coordinates: Sequence[int]) -> ClassKey:
        """Class of sum_v c_v E*_v for integral c"""
        return tuple(
            sum(s * c for s, c in zip(row, coordinates)) % d
            for row, d in zip(self.transform, self.invariant_factors)
        )

    def dual_coordinates_of(self, h: ClassKey) -> List[int]:
        """Integral E*-coordinates of one element of the class h"""
        size = len(self.inverse_columns[0]) if self.inverse_columns else 0
        coords = [0] * size
        for value, column in zip(h, self.inverse_columns):
            for k, entry in enumerate(column):
                coords[k] += value * entry
        return coords

    def add(self, a: ClassKey, b: ClassKey) -> ClassKey:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariant_factors))

    def neg(self, a: ClassKey) -> ClassKey:
        return tuple((-x) % d for x, d in zip(a, self.invariant_factors))

    def scale(self, a: ClassKey, k: int) -> ClassKey:
        return tuple((k * x) % d for x, d in zip(a, self.invariant_factors))

    def order_of(self, a: ClassKey) -> int:
        result = 1
        for x, d in zip(a, self.invariant_factors):
            result = lcm(result, d // gcd(x, d))
        return result

    def elements(self) -> List[ClassKey]:
        """All elements of H in lexicographic order (the zero class first)"""
        return list(itertools.product(*(range(d) for d in self.invariant_factors)))

    def __iter__(self) -> Iterator[ClassKey]:
        return iter(self.elements())


def discriminant_group_of_form(form: Sequence[Sequence[int]]) -> DiscriminantGroup:
    """
    Smith normal form of a positive definite integer matrix M and its class map.

    Args:
        form: The matrix M = -I as nested integer rows
    """
    m = Matrix(form)
    diagonal, s, _ = smith_normal_decomp(m, domain=ZZ)
    n = m.rows
    s_inverse = s.inv()

    factors, rows, columns = [], [], []
    order = 1
    for i in range(n):
        d = abs(int(diagonal[i, i]))
        order *= d
        if d > 1:
            factors.append(d)
            rows.append(tuple(int(s[i, j]) for j in range(n)))
            columns.append(tuple(int(s_inverse[j, i]) for j in range(n)))

    group = DiscriminantGroup(
        invariant_factors=tuple(factors),
        transform=tuple(rows),
        inverse_columns=tuple(columns),
        order=order,
    )
    logger.debug(f"🔢 Smith normal form invariant factors: [bold cyan]{group.invariant_factors or '(trivial)'}[/bold cyan]")
    return group
