"""
Counting Function Oracle

Q_h(x) = sum of the Taylor coefficients p_l' of Z(t) over l' NOT >= x with
[l'] = h, computed in the full vertex coordinates. For a deep point x,

    Q_h(x) = chi_{K + 2 r_h}(x) + sw_h^norm

which gives an independent route to the normalized Seiberg-Witten invariant.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Tuple

from src.lattice.discriminant import ClassKey
from src.lattice.lattice import LatticeData
from src.lattice.rational import RationalVector, ceil_div
from src.laurent.division import TermBudgetExceeded
from src.util.config import DEFAULT_TERM_CAP

logger = logging.getLogger(__name__)


def _numerator_terms(lattice: LatticeData) -> Dict[Tuple[ClassKey, Tuple[int, ...]], int]:
    """prod_{delta_v > 2} (1 - t^E*_v)^(delta_v - 2) in full coordinates with classes"""
    group = lattice.group
    valency = lattice.graph.classification.valency
    current = {(group.zero, (0,) * lattice.size): 1}
    for v in lattice.graph.ids:
        for _ in range(max(0, valency[v] - 2)):
            step: Dict[Tuple[ClassKey, Tuple[int, ...]], int] = {}
            e_star = lattice.dual_basis[v].num
            g = lattice.dual_classes[v]
            for (cls, exp), coeff in current.items():
                step[(cls, exp)] = step.get((cls, exp), 0) + coeff
                key = (group.add(cls, g), tuple(a + b for a, b in zip(exp, e_star)))
                step[key] = step.get(key, 0) - coeff
            current = {k: c for k, c in step.items() if c}
    return current


def _generators(lattice: LatticeData) -> List[str]:
    """Vertices contributing 1/(1 - t^E*_v), with (2 - delta_v) copies each"""
    valency = lattice.graph.classification.valency
    gens = []
    for v in lattice.graph.ids:
        gens.extend([v] * max(0, 2 - valency[v]))
    return gens


def counting_all_classes(
    lattice: LatticeData,
    x: RationalVector,
    term_cap: int = DEFAULT_TERM_CAP,
) -> Dict[ClassKey, int]:
    """
    Q_h(x) for every class h at once.

    Depth-first search over the numerator terms and the multiplicities of all
    generators but the last; the last generator is summed in closed form and
    its multiplicities are distributed over classes by residue.

    Raises:
        TermBudgetExceeded: If more than term_cap partial sums are visited
    """
    group = lattice.group
    bound = x.num
    gens = _generators(lattice)
    totals: Dict[ClassKey, int] = {h: 0 for h in group.elements()}

    def reach(v: str) -> Fraction:
        c = lattice.dual_basis[v].num
        return max(Fraction(b, w) for b, w in zip(bound, c))

    if gens:
        last = max(gens, key=lambda v: (reach(v), -lattice.graph.index[v]))
        gens.remove(last)
        last_exp = lattice.dual_basis[last].num
        last_class = lattice.dual_classes[last]
        last_order = lattice.dual_orders[last]
    else:
        last = None

    def below(point) -> bool:
        return any(a < b for a, b in zip(point, bound))

    visits = 0
    for (start_class, start), coeff in _numerator_terms(lattice).items():
        stack = [(start, start_class, 0)]
        while stack:
            point, cls, index = stack.pop()
            visits += 1
            if visits > term_cap:
                raise TermBudgetExceeded("counting function", term_cap)
            if index < len(gens):
                v = gens[index]
                step = lattice.dual_basis[v].num
                g = lattice.dual_classes[v]
                while below(point):
                    stack.append((point, cls, index + 1))
                    point = tuple(a + b for a, b in zip(point, step))
                    cls = group.add(cls, g)
                continue

            if last is None:
                if below(point):
                    totals[cls] += coeff
                continue
            # point + m * last_exp is NOT >= bound exactly for m < count
            count = max(
                (ceil_div(b - a, w) for a, b, w in zip(point, bound, last_exp) if b > a),
                default=0,
            )
            for j in range(min(count, last_order)):
                hits = (count - j + last_order - 1) // last_order
                key = group.add(cls, group.scale(last_class, j))
                totals[key] += coeff * hits

    logger.debug(f"🔢 Counting function visited [bold]{visits}[/bold] partial sums")
    return totals


def counting_function(
    lattice: LatticeData,
    h: ClassKey,
    x: RationalVector,
    term_cap: int = DEFAULT_TERM_CAP,
) -> int:
    """Q_h(x): the coefficients of Z over l' NOT >= x in class h"""
    return counting_all_classes(lattice, x, term_cap).get(tuple(h), 0)


def normalized_sw_from_counting(
    lattice: LatticeData,
    x: RationalVector,
    term_cap: int = DEFAULT_TERM_CAP,
) -> Dict[ClassKey, Fraction]:
    """sw_h^norm = Q_h(x) - chi_{K + 2 r_h}(x) for every class"""
    counts = counting_all_classes(lattice, x, term_cap)
    result = {}
    for h, q in counts.items():
        r = lattice.representative_r(h)
        k = lattice.canonical_class + r + r
        result[h] = q - lattice.chi(k, x)
    return result
