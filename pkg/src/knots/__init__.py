"""
Knots and Surgery Package

Algebraic knots from Newton pairs (semigroups, Alexander polynomials,
monodromy polynomial parts), their embedded resolution graphs, and the
plumbing graphs of (-p/q)-surgeries along connected sums of such knots with
the Alexander-polynomial route to the Seiberg-Witten invariants.

Main Components:
- AlgebraicKnot / linking_pairs / semigroup / alexander: knot invariants
- knot_resolution_graph: minimal embedded resolution graph with determinant checks
- SurgerySpec / surgery_graph / surgery_layout: surgery 3-manifold graphs
- q_route / structure_checks: Q_h(t) and the checks against the polynomial parts
- normalization_lift / chi_correction: the lift of each residue class relating Q_h(1) to sw_norm
"""

from .algebraic import (
    AlgebraicKnot,
    KnotDataError,
    KnotDocument,
    NumericalSemigroup,
    alexander,
    delta_invariant,
    knot_from_document,
    linking_pairs,
    monodromy_polynomial_part,
    monodromy_polynomial_part_by_division,
    numerical_semigroup,
    parse_newton_pairs,
    q_coefficients_from_gaps,
    semigroup,
    validate_newton_pairs,
)
from .resolution import (
    KnotGraph,
    ResolutionGraphError,
    knot_resolution_graph,
    negative_continued_fraction,
    resolution_checks,
)
from .surgery import (
    PLUS,
    CheckReport,
    CheckResult,
    QPolynomial,
    QRouteError,
    SurgeryDataError,
    SurgeryDocument,
    SurgeryLayout,
    SurgerySpec,
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

__all__ = [
    "AlgebraicKnot",
    "KnotDataError",
    "KnotDocument",
    "NumericalSemigroup",
    "alexander",
    "delta_invariant",
    "knot_from_document",
    "linking_pairs",
    "monodromy_polynomial_part",
    "monodromy_polynomial_part_by_division",
    "numerical_semigroup",
    "parse_newton_pairs",
    "q_coefficients_from_gaps",
    "semigroup",
    "validate_newton_pairs",
    "KnotGraph",
    "ResolutionGraphError",
    "knot_resolution_graph",
    "negative_continued_fraction",
    "resolution_checks",
    "PLUS",
    "CheckReport",
    "CheckResult",
    "QPolynomial",
    "QRouteError",
    "SurgeryDataError",
    "SurgeryDocument",
    "SurgeryLayout",
    "SurgerySpec",
    "block_determinant_checks",
    "chi_correction",
    "class_of_residue",
    "lens_chain_graph",
    "normalization_lift",
    "q_route",
    "structure_checks",
    "surgery_from_document",
    "surgery_graph",
    "surgery_layout",
    "surgery_spec",
]
