"""Exact evaluation and certification of binomial determinants with a parameter mu."""

from holodet.exact import MU, MuPoly, MuRat
from holodet.families import FamilySpec, build_matrix, parse_family
from holodet.det import determinant, cofactor_vector

__version__ = "0.1.0"

__all__ = [
    "MU",
    "MuPoly",
    "MuRat",
    "FamilySpec",
    "build_matrix",
    "parse_family",
    "determinant",
    "cofactor_vector",
]
