"""
Unit Tests for the Counting Function Oracle
"""

import itertools
from fractions import Fraction
from math import ceil

import pytest

import sys
from pathlib import Path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.knots.surgery import surgery_graph, surgery_spec
from src.lattice.lattice import lattice_data
from src.lattice.rational import RationalVector
from src.laurent.division import TermBudgetExceeded
from src.zeta.counting import counting_all_classes, counting_function, normalized_sw_from_counting
from src.zeta.invariants import sw_invariants
from src.zeta.polynomial import polynomial_part
from src.zeta.reduced import build_reduced_zeta


def brute_force_counts(lattice, x: RationalVector):
    """Q_h(x) for a star graph by explicit enumeration of (1 - t^E*_c) / prod_ends (1 - t^E*_v)"""
    center = lattice.graph.nodes[0]
    ends = lattice.graph.ends
    bounds = [
        max(ceil(x[i] / lattice.dual_basis[v][i]) for i in range(lattice.size))
        for v in ends
    ]
    counts = {h: 0 for h in lattice.classes()}
    for start, coeff in ((RationalVector.zero(lattice.size, lattice.det), 1), (lattice.dual_basis[center], -1)):
        for steps in itertools.product(*(range(b + 1) for b in bounds)):
            point = start
            for v, m in zip(ends, steps):
                point = point + lattice.dual_basis[v].scale(m)
            if not point >= x:
                counts[lattice.class_of(point)] += coeff
    return counts


class TestCountingFunction:
    """Q_h(x) over the full lattice"""

    def test_matches_enumeration(self, star_graph):
        """The closed-form last generator agrees with brute force"""
        lattice = lattice_data(star_graph)
        x = lattice.deep_point()
        assert counting_all_classes(lattice, x) == brute_force_counts(lattice, x)

    def test_single_class(self, star_graph):
        """counting_function picks one entry of the all-class result"""
        lattice = lattice_data(star_graph)
        x = lattice.deep_point()
        everything = counting_all_classes(lattice, x)
        for h in lattice.classes():
            assert counting_function(lattice, h, x) == everything[h]

    def test_budget(self, star_graph):
        """The visit cap applies"""
        lattice = lattice_data(star_graph)
        with pytest.raises(TermBudgetExceeded):
            counting_all_classes(lattice, lattice.deep_point(margin=4), term_cap=5)


class TestNormalizedInvariant:
    """sw_h^norm = Q_h(x) - chi_{K + 2 r_h}(x)"""

    def test_e8_vanishes(self, e8_graph):
        """The E8 invariant is 0"""
        lattice = lattice_data(e8_graph)
        assert normalized_sw_from_counting(lattice, lattice.deep_point()) == {(): 0}

    def test_independent_of_deep_point(self, two_node_graph):
        """Two deep points give the same value"""
        lattice = lattice_data(two_node_graph)
        x = lattice.deep_point()
        y = lattice.shifted_deep_point(x)
        assert normalized_sw_from_counting(lattice, x) == normalized_sw_from_counting(lattice, y)

    @pytest.mark.parametrize("fixture", ["star_graph", "two_node_graph"])
    def test_equals_polynomial_part_at_one(self, fixture, request):
        """The counting route reproduces P_h(1) for every class"""
        graph = request.getfixturevalue(fixture)
        lattice = lattice_data(graph)
        zeta = build_reduced_zeta(graph)
        values = normalized_sw_from_counting(lattice, lattice.deep_point())
        for h in lattice.classes():
            assert values[h] == Fraction(polynomial_part(zeta, h).weighted.evaluate_at_one())

    def test_z7_report_without_oracle(self, z7_report):
        """The session report of the Z/7 graph carries no counting values"""
        assert z7_report.deep_points == []
        assert all(entry.counting == [] for entry in z7_report.classes)
        assert z7_report.class_for((0,)).sw_norm == 2

    def test_z7_counting_stops_at_the_cap(self, z7_graph):
        """A bounded counting run on the Z/7 graph raises instead of running on"""
        lattice = lattice_data(z7_graph)
        with pytest.raises(TermBudgetExceeded):
            counting_all_classes(lattice, lattice.deep_point(), term_cap=10_000)

    def test_surgery_deep_points_agree(self):
        """Both deep points of the (2, 3, 7) surgery graph give P_h(1) = 1"""
        report = sw_invariants(surgery_graph(surgery_spec([[(2, 3)]], 1)))
        assert len(report.deep_points) == 2
        entry = report.class_for(())
        assert entry.counting == [1, 1]
        assert entry.sw_norm == entry.p_at_1 == 1
