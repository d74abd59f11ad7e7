"""Exact sparse polynomials over Q and exact / modular matrix rank."""
from ._backend import BACKEND
from .matrix import (
    CoefficientMatrix,
    bareiss_rank,
    fraction_str,
    matrix_rank,
    modular_rank,
    parse_fraction,
    random_prime,
    rank_of_polynomials,
    rational_nullspace,
)
from .polynomial import (
    SparsePolynomial,
    Universe,
    UniverseMismatch,
    monomial_sort_key,
    poly_add,
    poly_eval,
    poly_mul,
    poly_scale,
)

__all__ = [
    "BACKEND",
    "CoefficientMatrix",
    "SparsePolynomial",
    "Universe",
    "UniverseMismatch",
    "bareiss_rank",
    "fraction_str",
    "matrix_rank",
    "modular_rank",
    "monomial_sort_key",
    "parse_fraction",
    "poly_add",
    "poly_eval",
    "poly_mul",
    "poly_scale",
    "random_prime",
    "rank_of_polynomials",
    "rational_nullspace",
]
