"""Exact arithmetic kernels: sparse polynomials, Laurent polynomials, determinants."""

from .laurent import LaurentPoly, evaluate, t_coefficient
from .matrix import PolyMatrix, determinant
from .poly import (
    MultiPoly,
    exact_divide,
    format_poly,
    parse_poly,
    poly_from_json,
    poly_to_json,
    weight_of_monomial,
)

__all__ = [
    "LaurentPoly",
    "MultiPoly",
    "PolyMatrix",
    "determinant",
    "evaluate",
    "exact_divide",
    "format_poly",
    "parse_poly",
    "poly_from_json",
    "poly_to_json",
    "t_coefficient",
    "weight_of_monomial",
]
