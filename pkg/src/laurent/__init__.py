"""
Laurent Algebra Package

Sparse exact Laurent polynomials with exponents in (1/d)Z^N, denominator
factor lists prod(1 - t^c), Taylor coefficient enumeration and the
multivariable Euclidean division with respect to a coordinate subset.
"""

from .poly import (
    LaurentPoly,
    LaurentAlgebraError,
    VariableMismatchError,
    Exponent,
    Coefficient,
    coefficient_string,
    evaluate_at_one,
    grlex_key,
)
from .division import (
    DenominatorFactorList,
    DivisionResult,
    FactorError,
    TermBudgetExceeded,
    geometric_lift,
    taylor_coefficients,
    divide,
    check_division,
    less_on,
)

__all__ = [
    "LaurentPoly",
    "LaurentAlgebraError",
    "VariableMismatchError",
    "Exponent",
    "Coefficient",
    "coefficient_string",
    "evaluate_at_one",
    "grlex_key",
    "DenominatorFactorList",
    "DivisionResult",
    "FactorError",
    "TermBudgetExceeded",
    "geometric_lift",
    "taylor_coefficients",
    "divide",
    "check_division",
    "less_on",
]
