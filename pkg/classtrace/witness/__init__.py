"""
Witness constructions: explicit (W, Q) with a prescribed trace of WQ.
"""

from .dispatcher import route_name, witness
from .factorization import block_factor, embed_corner, split_product
from .models import Construction, TraceDichotomy, WitnessPair, verify
from .normal_forms import InterleaveForm, interleave_form
from .similarity import conjugation_search, similarity_witness
from .special_linear import (
    sl3_witness,
    sl43_witness,
    sl_cyclic_even,
    sl_cyclic_odd,
    sl_general_witness,
)
from .two_by_two import trace_dichotomy_2x2, witness_2x2

__all__ = [
    "Construction",
    "InterleaveForm",
    "TraceDichotomy",
    "WitnessPair",
    "conjugation_search",
    "interleave_form",
    "block_factor",
    "route_name",
    "sl3_witness",
    "sl43_witness",
    "sl_cyclic_even",
    "sl_cyclic_odd",
    "sl_general_witness",
    "embed_corner",
    "split_product",
    "similarity_witness",
    "trace_dichotomy_2x2",
    "verify",
    "witness",
    "witness_2x2",
]
