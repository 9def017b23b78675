"""
Brute-force oracle: orbits, trace sets, class products and verification sweeps.
"""

from .models import DichotomyCase, PairFailure, ProductSection, Scope, VerificationReport
from .orbits import class_product_decomposition, orbit, orbit_size, trace_set
from .verification import (
    class_product_survey,
    check_pair,
    verify_gl2_irreducible_claim,
    verify_theorem,
)

__all__ = [
    "DichotomyCase",
    "PairFailure",
    "ProductSection",
    "Scope",
    "VerificationReport",
    "class_product_survey",
    "check_pair",
    "class_product_decomposition",
    "orbit",
    "orbit_size",
    "trace_set",
    "verify_gl2_irreducible_claim",
    "verify_theorem",
]
