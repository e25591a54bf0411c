"""
Unit Tests for Surgery Graphs, the Q Route and the Structure Checks

The main example is (-7/2)-surgery along three trefoils: H = Z/7, Q(t) =
3 + 3t^2 - t^3 + t^4 and sw_0^norm = Q_0(1) = 2.
"""

import pytest

import sys
from pathlib import Path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.graph.parser import graph_to_dict
from src.knots.algebraic import KnotDataError
from src.knots.surgery import (
    FAIL,
    PASS,
    PLUS,
    SKIPPED,
    SurgeryDataError,
    block_determinant_checks,
    chi_correction,
    class_of_residue,
    lens_chain_graph,
    normalization_lift,
    q_route,
    structure_checks,
    surgery_from_document,
    surgery_graph,
    surgery_layout,
    surgery_spec,
)
from src.lattice.lattice import lattice_data
from src.laurent.poly import LaurentPoly
from src.zeta.invariants import sw_invariants

Z7_Q_AT_ONE = {0: 2, 1: 4, 2: 1, 3: 0, 4: 3, 5: 3, 6: -1}


@pytest.fixture(scope="module")
def trefoil_spec():
    """(-1)-surgery along one trefoil: the Brieskorn sphere of (2, 3, 7)"""
    return surgery_spec([[(2, 3)]], 1)


class TestSurgerySpec:
    """Construction and validation"""

    def test_derived_numbers(self, z7_spec):
        """m, nu, mu and the continued fraction of 7/2"""
        assert z7_spec.m == 18
        assert z7_spec.nu == 3
        assert z7_spec.mu == 6
        assert z7_spec.continued_fraction == [4, 2]

    @pytest.mark.parametrize("p, q", [(0, 1), (7, 0), (6, 4)])
    def test_invalid_coefficients(self, p, q):
        """p, q > 0 and coprime"""
        with pytest.raises(SurgeryDataError):
            surgery_spec([[(2, 3)]], p, q)

    def test_no_knots(self):
        """At least one knot"""
        with pytest.raises(SurgeryDataError):
            surgery_spec([], 7, 2)

    def test_document(self):
        """JSON surgery documents default q to 1"""
        spec = surgery_from_document({"knots": [{"newton_pairs": [[2, 3]]}], "p": 5})
        assert (spec.p, spec.q) == (5, 1)
        with pytest.raises(SurgeryDataError):
            surgery_from_document({"knots": [{"newton_pairs": [[2, 3]]}]})
        with pytest.raises(KnotDataError):
            surgery_from_document({"knots": [{"newton_pairs": [[3, 2]]}], "p": 5})


class TestSurgeryGraph:
    """Graph assembly"""

    def test_z7_matches_data_file(self, z7_spec, z7_graph):
        """Vertex order, weights and edges of the three-trefoil graph"""
        assert graph_to_dict(surgery_graph(z7_spec)) == graph_to_dict(z7_graph)

    def test_z7_layout(self, z7_spec):
        """v+ has weight -4 - 18, followed by a -2 chain vertex"""
        layout = surgery_layout(z7_spec)
        assert layout.graph.euler(PLUS) == -22
        assert layout.chain == ["v+1"]
        assert layout.generator == "v+1"
        assert [kg.center for kg in layout.knot_graphs] == ["K1.v1", "K2.v1", "K3.v1"]

    def test_single_trefoil(self, trefoil_spec):
        """p/q = 1: v+ has weight -7, no chain and det 1"""
        layout = surgery_layout(trefoil_spec)
        assert layout.graph.euler(PLUS) == -7
        assert layout.chain == []
        assert layout.generator == PLUS
        assert lattice_data(layout.graph).det == 1

    def test_determinant_is_p(self):
        """det = p for several coefficients"""
        for p, q in [(5, 2), (5, 1), (3, 1), (11, 4)]:
            graph = surgery_graph(surgery_spec([[(2, 3)], [(2, 5)]], p, q))
            assert lattice_data(graph).det == p

    def test_class_of_residue(self, z7_spec):
        """h -> [h E*_v+1] is a bijection onto Z/7"""
        classes = {class_of_residue(z7_spec, h) for h in range(7)}
        assert len(classes) == 7
        assert class_of_residue(z7_spec, 0) == (0,)

    @pytest.mark.parametrize("knots, p, q", [
        ([[(2, 3)]] * 3, 7, 2),
        ([[(2, 3), (2, 1)]], 5, 2),
        ([[(2, 3), (2, 3)], [(2, 5)]], 3, 1),
        ([[(2, 3), (3, 1)]], 7, 3),
    ])
    def test_block_determinants(self, knots, p, q):
        """D_i = p + a_i p_i (p_{i+1} ... p_r)^2 q and the recursion between consecutive D_i"""
        assert block_determinant_checks(surgery_spec(knots, p, q)) == []


class TestQRoute:
    """Delta(t) = 1 + (mu/2)(t - 1) + (t - 1)^2 Q(t)"""

    def test_three_trefoils(self, z7_spec):
        """Delta and Q of the connected sum"""
        route = q_route(z7_spec)
        assert route.to_dict()["delta"] == [1, -3, 6, -7, 6, -3, 1]
        assert route.coefficients == [3, 0, 3, -1, 1]
        assert route.symmetry_holds()

    def test_residue_parts(self, z7_spec):
        """Q_h(t) collects q_n with n = floor((7i + h)/2)"""
        route = q_route(z7_spec)
        assert route.part(0) == LaurentPoly(1, 1, {(0,): 3, (3,): -1})
        assert route.part(1) == LaurentPoly(1, 1, {(0,): 3, (4,): 1})
        assert {h: route.value_at_one(h) for h in range(7)} == Z7_Q_AT_ONE
        assert route.part(7) == route.part(0)

    def test_residue_sum(self, z7_spec):
        """With q = 2 every q_n is collected twice"""
        assert q_route(z7_spec).residue_sum_check() == {"equals_Q": False, "equals_qQ": True}

    def test_residue_sum_integral_surgery(self):
        """With q = 1 the parts add up to Q"""
        route = q_route(surgery_spec([[(2, 5)]], 3))
        assert route.residue_sum_check() == {"equals_Q": True, "equals_qQ": True}

    def test_single_knot_matches_gaps(self):
        """For one knot the coefficients count the gaps above i"""
        for pairs in ([(2, 3)], [(2, 5)], [(2, 3), (2, 1)]):
            spec = surgery_spec([pairs], 1)
            route = q_route(spec)
            gaps = spec.knots[0].semigroup.gaps
            assert route.coefficients == [sum(1 for g in gaps if g > i) for i in range(spec.mu - 1)]


class TestNormalizationLift:
    """The lift of each residue class and the chi correction sw_norm - Q_h(1)"""

    def test_lens_chain(self, z7_spec):
        """The bare chain of 7/2 is -4 - -2"""
        chain = lens_chain_graph(z7_spec)
        assert [(v.id, v.euler) for v in chain.vertices] == [(PLUS, -4), ("v+1", -2)]
        assert chain.determinant() == 7

    def test_integral_surgery(self):
        """With q = 1 the lift is h E*_v+"""
        spec = surgery_spec([[(2, 5)]], 3)
        lattice = lattice_data(surgery_graph(spec))
        for h in range(3):
            assert normalization_lift(spec, h) == lattice.dual_basis[PLUS].scale(h)

    def test_z7_lifts(self, z7_spec):
        """Digits of 7/2: h = 2a + b lifts to a E*_v+ + b E*_v+1"""
        lattice = lattice_data(surgery_graph(z7_spec))
        plus, last = lattice.dual_basis[PLUS], lattice.dual_basis["v+1"]
        assert normalization_lift(z7_spec, 2) == plus
        assert normalization_lift(z7_spec, 3) == plus + last
        assert normalization_lift(z7_spec, 6) == plus.scale(3)
        for h in range(7):
            assert lattice.class_of(normalization_lift(z7_spec, h)) == class_of_residue(z7_spec, h)

    def test_z7_corrections(self, z7_spec):
        """Only h = 6 has a nonzero correction on the three-trefoil graph"""
        assert [chi_correction(z7_spec, h) for h in range(7)] == [0, 0, 0, 0, 0, 0, 3]

    def test_differs_from_multiple_of_generator(self):
        """For 5/2 along (2,3),(2,1) the h = 4 lift is 2 E*_v+, shifting chi by 4 against 4 E*_v+1"""
        spec = surgery_spec([[(2, 3), (2, 1)]], 5, 2)
        lattice = lattice_data(surgery_graph(spec))
        canonical = lattice.canonical_class
        plus, last = lattice.dual_basis[PLUS], lattice.dual_basis["v+1"]
        assert normalization_lift(spec, 4) == plus.scale(2)
        assert lattice.chi(canonical, last.scale(4)) - lattice.chi(canonical, plus.scale(2)) == 4


class TestStructureChecks:
    """Polynomial parts of surgery graphs against the Q route"""

    def test_z7_all_pass(self, z7_spec, z7_report):
        """Every check passes on the three-trefoil graph"""
        report = structure_checks(z7_spec, z7_report)
        assert report.passed
        assert all(r.status == PASS for r in report.results)
        assert len(report.results) == 8

    def test_z7_alexander_route(self, z7_spec, z7_report):
        """sw_0^norm = Q_0(1) = 2"""
        assert z7_report.class_for(class_of_residue(z7_spec, 0)).sw_norm == Z7_Q_AT_ONE[0]
        assert structure_checks(z7_spec, z7_report).result("alexander_route_agrees").status == PASS

    def test_plus_not_a_node(self, trefoil_spec):
        """v+ with one neighbour skips the checks that need it as a node"""
        report = structure_checks(trefoil_spec, sw_invariants(surgery_graph(trefoil_spec)))
        skipped = {r.name for r in report.results if r.status == SKIPPED}
        assert skipped == {
            "nonnegative_plus_multiplicity_one",
            "negative_part_is_chi_difference",
            "center_coordinates_bounded",
            "nonnegative_plus_part_is_Q",
        }
        assert report.passed

    def test_brieskorn_invariant(self, trefoil_spec):
        """The (2, 3, 7) sphere has sw_0^norm = Q_0(1) = 1"""
        report = sw_invariants(surgery_graph(trefoil_spec))
        assert report.class_for(()).sw_norm == 1
        assert q_route(trefoil_spec).value_at_one(0) == 1

    @pytest.mark.parametrize("knots, p, q", [
        ([[(2, 3)]], 5, 2),
        ([[(2, 5)]], 3, 1),
        ([[(2, 3)], [(2, 3)]], 5, 1),
        ([[(2, 3)], [(2, 3)]], 3, 2),
        ([[(2, 3), (2, 1)]], 5, 2),
        ([[(2, 3), (2, 1)], [(2, 3)]], 3, 1),
        ([[(2, 3)], [(2, 3)], [(2, 5)]], 11, 3),
    ])
    def test_small_family(self, knots, p, q):
        """No check fails on small surgeries along one to three torus and iterated torus knots"""
        spec = surgery_spec(knots, p, q)
        report = structure_checks(spec, sw_invariants(surgery_graph(spec), oracle=False))
        assert report.passed, report.to_dict()["checks"]

    def test_report_serializes(self, z7_spec, z7_report):
        """to_dict lists every check with its status"""
        data = structure_checks(z7_spec, z7_report).to_dict()
        assert data["passed"] is True
        assert data["surgery"]["continued_fraction"] == [4, 2]
        assert {c["status"] for c in data["checks"]} == {PASS}

    def test_failure_is_reported(self, z7_spec, z7_report):
        """A corrupted invariant turns the Alexander route check into a failure"""
        entry = z7_report.class_for((0,))
        original = entry.sw_norm
        entry.sw_norm = original + 1
        try:
            report = structure_checks(z7_spec, z7_report)
        finally:
            entry.sw_norm = original
        assert report.result("alexander_route_agrees").status == FAIL
        assert not report.passed
