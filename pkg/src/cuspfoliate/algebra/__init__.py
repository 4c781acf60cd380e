"""Exact coefficient domains, sparse polynomials and weighted valuations."""

from fractions import Fraction as Rational

from .extension import ExtElement, ExtField, binomial_factor, check_irreducible, ext_invert, rational_root
from .poly import (
    SparsePoly,
    divide_exact,
    order_at_origin,
    partial_derivative,
    poly_sum,
    substitute,
)
from .weights import (
    WeightVector,
    euler_identity_holds,
    find_quasihomogeneous_weights,
    weighted_valuation,
)

__all__ = [
    "Rational",
    "ExtElement",
    "ExtField",
    "ext_invert",
    "binomial_factor",
    "check_irreducible",
    "rational_root",
    "SparsePoly",
    "divide_exact",
    "order_at_origin",
    "partial_derivative",
    "poly_sum",
    "substitute",
    "WeightVector",
    "euler_identity_holds",
    "find_quasihomogeneous_weights",
    "weighted_valuation",
]
