"""
Unit Tests for Sparse Laurent Polynomials
"""

from fractions import Fraction

import pytest

import sys
from pathlib import Path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.laurent.poly import (
    LaurentAlgebraError,
    LaurentPoly,
    VariableMismatchError,
    coefficient_string,
    evaluate_at_one,
    grlex_key,
)


class TestConstruction:
    """Constructors and normalization"""

    def test_zero_coefficients_are_dropped(self):
        """A zero coefficient never becomes a stored term"""
        poly = LaurentPoly(2, 1, {(1, 0): 0, (0, 1): 3})
        assert len(poly) == 1
        assert poly.coefficient((1, 0)) == 0

    def test_integral_fractions_become_ints(self):
        """Fraction(4, 2) is stored as the int 2"""
        poly = LaurentPoly.monomial((1,), Fraction(4, 2))
        assert poly.coefficient((1,)) == 2
        assert isinstance(poly.coefficient((1,)), int)

    def test_from_terms_accumulates(self):
        """Repeated exponents are summed and cancellations vanish"""
        poly = LaurentPoly.from_terms(1, 1, [((2,), 1), ((2,), -1), ((3,), 2), ((3,), 5)])
        assert poly.terms == {(3,): 7}

    def test_univariate_respects_denominator(self):
        """coefficients[i] sits at t^(i/den)"""
        poly = LaurentPoly.univariate([1, 0, 3], den=2)
        assert poly.terms == {(0,): 1, (4,): 3}

    def test_bad_denominator(self):
        """The denominator must be positive"""
        with pytest.raises(LaurentAlgebraError):
            LaurentPoly(1, 0)

    def test_exponent_length_checked(self):
        """Exponents must have nvars coordinates"""
        with pytest.raises(VariableMismatchError):
            LaurentPoly(2, 1, {(1,): 1})


class TestArithmetic:
    """Ring operations"""

    def test_product_and_difference(self):
        """(1 - t)(1 + t) = 1 - t^2"""
        one = LaurentPoly.one(1)
        t = LaurentPoly.monomial((1,))
        assert (one - t) * (one + t) == one - t * t

    def test_negative_exponents(self):
        """t^-3 * t^3 = 1"""
        assert LaurentPoly.monomial((-3,)) * LaurentPoly.monomial((3,)) == LaurentPoly.one(1)

    def test_scalar_multiplication(self):
        """Scalars multiply from either side"""
        poly = LaurentPoly(1, 1, {(0,): 1, (2,): -1})
        assert 3 * poly == poly * 3 == poly.scale(3)
        assert poly * Fraction(1, 2) == LaurentPoly(1, 1, {(0,): Fraction(1, 2), (2,): Fraction(-1, 2)})

    def test_negation_cancels(self):
        """p + (-p) is the zero polynomial"""
        poly = LaurentPoly(2, 7, {(-34, 7): 1, (2, 12): -1})
        assert not (poly + -poly)

    def test_variable_mismatch(self):
        """Different nvars or denominators do not combine"""
        with pytest.raises(VariableMismatchError):
            LaurentPoly.one(1) + LaurentPoly.one(2)
        with pytest.raises(VariableMismatchError):
            LaurentPoly.one(1, den=7) * LaurentPoly.one(1, den=1)

    def test_shift_and_restrict(self):
        """shift multiplies by a monomial, restrict filters exponents"""
        poly = LaurentPoly(2, 1, {(0, 0): 1, (1, -1): 2})
        shifted = poly.shift((1, 1))
        assert shifted.terms == {(1, 1): 1, (2, 0): 2}
        assert shifted.restrict(lambda e: e[1] > 0).terms == {(1, 1): 1}
        with pytest.raises(VariableMismatchError):
            poly.shift((1,))

    def test_scale_by_monomial(self):
        """c * t^e * p"""
        poly = LaurentPoly.monomial((1,), 2)
        assert poly.scale_by_monomial((2,), -1).terms == {(3,): -2}


class TestQueries:
    """Ordering, evaluation and serialization"""

    def test_grlex_descending_iteration(self):
        """Higher total degree first, ties broken lexicographically"""
        poly = LaurentPoly(2, 1, {(0, 0): 1, (1, 0): 1, (0, 2): 1, (2, 0): 1})
        assert poly.exponents() == [(2, 0), (0, 2), (1, 0), (0, 0)]
        assert grlex_key((2, 0)) > grlex_key((0, 2))

    def test_evaluate_at_one(self):
        """P(1) is the coefficient sum"""
        poly = LaurentPoly(1, 7, {(-34,): 3, (-27,): -3, (5,): Fraction(1, 2)})
        assert poly.evaluate_at_one() == Fraction(1, 2)
        assert evaluate_at_one(LaurentPoly.zero(3)) == 0

    def test_degree(self):
        """Componentwise maximum exponent"""
        poly = LaurentPoly(2, 1, {(3, -1): 1, (0, 4): 1})
        assert poly.degree() == (3, 4)
        assert LaurentPoly.zero(2).degree() is None

    def test_to_dict(self):
        """Exponents as num/den, coefficients as ints or strings"""
        poly = LaurentPoly(1, 7, {(-34,): Fraction(1, 2), (-27,): -1})
        assert poly.to_dict() == [
            {"exp": {"num": [-27], "den": 7}, "coeff": -1},
            {"exp": {"num": [-34], "den": 7}, "coeff": "1/2"},
        ]

    def test_coefficient_string(self):
        """ints pass through, other rationals become strings"""
        assert coefficient_string(Fraction(6, 3)) == 2
        assert coefficient_string(Fraction(-1, 7)) == "-1/7"

    def test_hash_follows_equality(self):
        """Equal polynomials hash alike"""
        a = LaurentPoly(1, 1, {(1,): 1, (0,): 2})
        b = LaurentPoly.from_terms(1, 1, [((0,), 2), ((1,), 1)])
        assert a == b
        assert hash(a) == hash(b)
