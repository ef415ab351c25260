"""Local motivic Brouwer degrees (EKL forms) of polynomial maps over Q and F_p."""

from .ekl import EKLResult, diagonalize, ekl_class, milnor_form
from .field import GF, QQ, Field
from .gw import (
    QuadraticForm,
    classify_string,
    diagonal_form,
    direct_sum,
    equivalent,
    hilbert_symbol,
    hyperbolic,
    invariants,
    product,
    witt_decompose,
)
from .localalg import local_algebra, socle_element, staircase_type
from .poly import Poly, PolyMap, PolyRing, gradient
from .transforms import apply_linear, compose, pad_identity, product_map, reduce_dimension, row_operation

__all__ = [
    "QQ", "GF", "Field", "Poly", "PolyMap", "PolyRing", "gradient",
    "local_algebra", "socle_element", "staircase_type",
    "EKLResult", "ekl_class", "diagonalize", "milnor_form",
    "QuadraticForm", "diagonal_form", "hyperbolic", "direct_sum", "product",
    "invariants", "equivalent", "hilbert_symbol", "witt_decompose", "classify_string",
    "compose", "product_map", "apply_linear", "row_operation", "pad_identity", "reduce_dimension",
]
