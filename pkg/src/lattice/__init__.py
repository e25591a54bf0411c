"""
Lattice Package

Exact lattice arithmetic for negative definite plumbing trees: dual basis,
intersection pairing, discriminant group H = L'/L with its class map,
representatives r_h, canonical class K, the chi function, deep points of the
Lipman cone and the projection to node coordinates.
"""

from .rational import RationalVector, ReducedExponent, rational_string, exponent_strings, ceil_div
from .discriminant import ClassKey, DiscriminantGroup, discriminant_group_of_form
from .lattice import (
    LatticeData,
    LatticeError,
    lattice_data,
    dual_basis_vector,
    pairing,
    discriminant_group,
    representative_r,
    canonical_class,
    chi,
    deep_point,
    project_to_nodes,
)

__all__ = [
    "RationalVector",
    "ReducedExponent",
    "rational_string",
    "exponent_strings",
    "ceil_div",
    "ClassKey",
    "DiscriminantGroup",
    "discriminant_group_of_form",
    "LatticeData",
    "LatticeError",
    "lattice_data",
    "dual_basis_vector",
    "pairing",
    "discriminant_group",
    "representative_r",
    "canonical_class",
    "chi",
    "deep_point",
    "project_to_nodes",
]
