"""
Exact arithmetic layer: finite fields, polynomials, matrices and classes.
"""

from .classes import (
    ClassHandle,
    Group,
    SimilarityClass,
    SLClass,
    TraceSet,
    class_of,
    closure_of,
    enumerate_classes,
    minimal_rank,
    sl_split,
)
from .field import FieldCtx, FieldElement, extension_field, field_create, field_from_order
from .linalg import Matrix, companion, direct_sum, invariant_factors, is_similar
from .parsing import parse_class, parse_element, parse_poly

__all__ = [
    "ClassHandle",
    "FieldCtx",
    "FieldElement",
    "Group",
    "Matrix",
    "SLClass",
    "SimilarityClass",
    "TraceSet",
    "class_of",
    "closure_of",
    "companion",
    "direct_sum",
    "enumerate_classes",
    "extension_field",
    "field_create",
    "field_from_order",
    "invariant_factors",
    "is_similar",
    "minimal_rank",
    "parse_class",
    "parse_element",
    "parse_poly",
    "sl_split",
]
