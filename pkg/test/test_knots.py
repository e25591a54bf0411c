"""
Unit Tests for Algebraic Knots and Their Resolution Graphs
"""

import pytest
from sympy import diff

import sys
from pathlib import Path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.graph.plumbing import validate
from src.knots.algebraic import (
    AlgebraicKnot,
    KnotDataError,
    alexander,
    delta_invariant,
    knot_from_document,
    linking_pairs,
    monodromy_polynomial_part,
    monodromy_polynomial_part_by_division,
    numerical_semigroup,
    parse_newton_pairs,
    q_coefficients_from_gaps,
    t,
)
from src.knots.resolution import (
    knot_resolution_graph,
    negative_continued_fraction,
    resolution_checks,
)
from src.laurent.poly import LaurentPoly

KNOTS = [
    [(2, 3)],
    [(2, 5)],
    [(3, 4)],
    [(2, 3), (2, 1)],
    [(2, 3), (2, 3)],
    [(2, 3), (3, 1)],
]


class TestNewtonPairs:
    """Validation, parsing and linking pairs"""

    def test_linking_pairs(self):
        """a_2 = q_2 + a_1 p_1 p_2"""
        assert linking_pairs([(2, 3), (2, 1)]) == [(2, 3), (2, 13)]
        assert linking_pairs([(2, 3), (2, 3)]) == [(2, 3), (2, 15)]

    def test_parse(self):
        """'p,q;p,q' text"""
        assert parse_newton_pairs("2,3; 2,1") == [(2, 3), (2, 1)]
        assert AlgebraicKnot.parse("2,3").newton_pairs == ((2, 3),)

    @pytest.mark.parametrize("text", ["", "2;3", "2,3,4", "a,b"])
    def test_malformed_text(self, text):
        """Malformed pairs are rejected"""
        with pytest.raises(KnotDataError):
            parse_newton_pairs(text)

    @pytest.mark.parametrize("pairs", [[(1, 3)], [(2, 0)], [(2, 4)], [(3, 2)], [(2, 3), (2, 2)]])
    def test_invalid_pairs(self, pairs):
        """p >= 2, q >= 1, coprime, and q_1 > p_1"""
        with pytest.raises(KnotDataError):
            AlgebraicKnot(tuple(pairs))

    def test_document(self):
        """JSON knot documents"""
        knot = knot_from_document({"newton_pairs": [[2, 3], [2, 1]], "name": "cusp cable"})
        assert knot.newton_pairs == ((2, 3), (2, 1))
        with pytest.raises(KnotDataError):
            knot_from_document({"newton_pairs": []})
        with pytest.raises(KnotDataError):
            knot_from_document({"newton_pairs": [[2, 3]], "genus": 1})


class TestSemigroup:
    """Semigroups and gaps"""

    def test_trefoil(self):
        """<2, 3> has the single gap 1"""
        semigroup = AlgebraicKnot(((2, 3),)).semigroup
        assert semigroup.gaps == (1,)
        assert semigroup.mu == 2

    def test_iterated(self):
        """(2,3),(2,1) gives <4, 6, 13> with mu 16"""
        knot = AlgebraicKnot(((2, 3), (2, 1)))
        assert knot.semigroup.generators == (4, 6, 13)
        assert knot.semigroup.gaps == (1, 2, 3, 5, 7, 9, 11, 15)
        assert knot.mu == 16
        assert delta_invariant(knot) == 8

    @pytest.mark.parametrize("pairs", KNOTS)
    def test_symmetric(self, pairs):
        """Plane curve semigroups are symmetric"""
        assert AlgebraicKnot(tuple(pairs)).semigroup.is_symmetric()

    def test_membership(self):
        """Members below the conductor and beyond"""
        semigroup = numerical_semigroup([2, 5])
        assert semigroup.members_below(6) == [0, 2, 4, 5]
        assert 100 in semigroup
        assert -1 not in semigroup

    def test_trivial_generator(self):
        """<1> is all of N"""
        assert numerical_semigroup([1]).gaps == ()

    def test_not_coprime(self):
        """Generators must be coprime"""
        with pytest.raises(KnotDataError):
            numerical_semigroup([2, 4])


class TestAlexander:
    """Alexander polynomials and the monodromy polynomial part"""

    def test_torus_knots(self):
        """Trefoil and the (2, 5) torus knot"""
        assert AlgebraicKnot(((2, 3),)).alexander_coefficients() == [1, -1, 1]
        assert AlgebraicKnot(((2, 5),)).alexander_coefficients() == [1, -1, 1, -1, 1]

    @pytest.mark.parametrize("pairs", KNOTS)
    def test_normalization(self, pairs):
        """Delta(1) = 1, Delta'(1) = mu/2, degree mu and palindromic coefficients"""
        knot = AlgebraicKnot(tuple(pairs))
        delta = knot.alexander
        assert delta.eval(1) == 1
        assert 2 * diff(delta.as_expr(), t).subs(t, 1) == knot.mu
        coefficients = knot.alexander_coefficients()
        assert len(coefficients) - 1 == knot.mu
        assert coefficients == coefficients[::-1]

    @pytest.mark.parametrize("pairs", KNOTS)
    def test_monodromy_part_by_division(self, pairs):
        """The quotient of Delta by (1 - t) is minus the sum over the gaps"""
        knot = AlgebraicKnot(tuple(pairs))
        assert monodromy_polynomial_part_by_division(knot) == monodromy_polynomial_part(knot)

    def test_trefoil_monodromy_part(self):
        """-t for the trefoil"""
        knot = AlgebraicKnot(((2, 3),))
        assert monodromy_polynomial_part(knot) == LaurentPoly(1, 1, {(1,): -1})
        assert alexander(knot) == LaurentPoly.univariate([1, -1, 1])

    def test_q_coefficients(self):
        """q_i counts the gaps above i"""
        assert q_coefficients_from_gaps(AlgebraicKnot(((2, 3),))) == [1]
        assert q_coefficients_from_gaps(AlgebraicKnot(((2, 5),))) == [2, 1, 1]

    def test_to_dict(self):
        """Knot reports carry the derived data"""
        data = AlgebraicKnot(((2, 3),)).to_dict()
        assert data["linking_pairs"] == [[2, 3]]
        assert data["multiplicity"] == 6
        assert data["delta"] == 1
        assert data["alexander"] == [1, -1, 1]
        assert data["semigroup"]["gaps"] == [1]


class TestContinuedFractions:
    """Hirzebruch-Jung expansions"""

    @pytest.mark.parametrize("p, q, expected", [
        (7, 2, [4, 2]),
        (5, 2, [3, 2]),
        (5, 1, [5]),
        (1, 1, [1]),
        (13, 6, [3, 2, 2, 2, 2, 2]),
    ])
    def test_expansions(self, p, q, expected):
        """p/q = k_0 - 1/(k_1 - ...)"""
        assert negative_continued_fraction(p, q) == expected

    @pytest.mark.parametrize("p, q", [(0, 1), (3, 0), (4, 2)])
    def test_invalid(self, p, q):
        """Positive and coprime only"""
        with pytest.raises(ValueError):
            negative_continued_fraction(p, q)


class TestResolutionGraph:
    """Minimal embedded resolution graphs"""

    def test_trefoil(self):
        """A -1 center with legs -2 and -3"""
        kg = knot_resolution_graph(AlgebraicKnot(((2, 3),)))
        assert kg.vertices == [("v1", -1), ("v1.p1", -2), ("v1.q1", -3)]
        assert kg.center == "v1"

    def test_prefix(self):
        """Every id carries the prefix"""
        kg = knot_resolution_graph(AlgebraicKnot(((2, 3),)), prefix="K2.")
        assert kg.graph.ids == ("K2.v1", "K2.v1.p1", "K2.v1.q1")

    def test_two_pairs_without_link_chain(self):
        """(2,3),(2,1): v1 becomes -3 and touches the new -1 center directly"""
        kg = knot_resolution_graph(AlgebraicKnot(((2, 3), (2, 1))))
        weights = dict(kg.vertices)
        assert weights["v1"] == -3
        assert weights["v2"] == -1
        assert weights["v2.p1"] == -2
        assert ("v2", "v1") in kg.edges
        assert kg.center == "v2"

    def test_two_pairs_with_link_chain(self):
        """(2,3),(2,3): a -3 vertex separates the centers and v1 becomes -2"""
        kg = knot_resolution_graph(AlgebraicKnot(((2, 3), (2, 3))))
        weights = dict(kg.vertices)
        assert weights["v1"] == -2
        assert weights["v2.a1"] == -3
        assert kg.graph.path_vertices("v1", "v2") == ["v1", "v2.a1", "v2"]

    @pytest.mark.parametrize("pairs", KNOTS)
    def test_checks_pass(self, pairs):
        """det 1, a -1 center and the block determinants"""
        kg = knot_resolution_graph(AlgebraicKnot(tuple(pairs)))
        assert resolution_checks(kg) == []
        assert validate(kg.graph).det == 1
        p_r, a_r = kg.knot.linking_pairs[-1]
        assert kg.graph.complement_determinant([kg.center]) == a_r * p_r

    def test_blocks(self):
        """Gamma_1 holds v1 and its legs, Gamma_2 everything"""
        kg = knot_resolution_graph(AlgebraicKnot(((2, 3), (2, 3))))
        assert kg.subgraph_through(1) == {"v1", "v1.p1", "v1.q1"}
        assert kg.subgraph_through(2) == set(kg.graph.ids)

    def test_checks_detect_tampering(self):
        """A wrong weight is reported"""
        kg = knot_resolution_graph(AlgebraicKnot(((2, 3),)))
        kg.graph = type(kg.graph).from_lists([("v1", -1), ("v1.p1", -2), ("v1.q1", -4)], kg.edges)
        assert resolution_checks(kg)

