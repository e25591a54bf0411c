"""
Zeta Division Package

Class-split reduced zeta-functions, the polynomial parts P+_h and P_h through
multivariable division and the multiplicity function, the counting-function
oracle, and the per-class Seiberg-Witten invariant report.

Main Components:
- build_reduced_zeta: class-tracking expansion in node variables
- polynomial_plus / polynomial_part / polynomial_part_via_pairs: polynomial parts
- counting_function / counting_all_classes: Q_h(x) over the full lattice
- build_invariant_report / sw_invariants: the InvariantReport
"""

from .reduced import ReducedZeta, build_reduced_zeta, estimate_expansion_terms
from .polynomial import (
    PolynomialPart,
    decompose,
    polynomial_plus,
    multiplicity,
    polynomial_part,
    polynomial_part_via_pairs,
    root_invariance,
    sign_pattern_holds,
    decomposition_check,
)
from .counting import counting_all_classes, counting_function, normalized_sw_from_counting
from .invariants import ClassInvariants, InvariantReport, build_invariant_report, sw_invariants

__all__ = [
    "ReducedZeta",
    "build_reduced_zeta",
    "estimate_expansion_terms",
    "PolynomialPart",
    "decompose",
    "polynomial_plus",
    "multiplicity",
    "polynomial_part",
    "polynomial_part_via_pairs",
    "root_invariance",
    "sign_pattern_holds",
    "decomposition_check",
    "counting_all_classes",
    "counting_function",
    "normalized_sw_from_counting",
    "ClassInvariants",
    "InvariantReport",
    "build_invariant_report",
    "sw_invariants",
]
