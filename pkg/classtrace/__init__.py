__version__ = "0.1.0"

from .config import DEFAULT_CONFIG, EngineConfig
from .core.classes import SimilarityClass, SLClass, TraceSet, class_of, enumerate_classes
from .core.field import FieldCtx, FieldElement, field_create, field_from_order
from .core.linalg import Matrix
from .core.parsing import parse_class, parse_element
from .oracle.orbits import class_product_decomposition, trace_set
from .oracle.verification import class_product_survey, verify_gl2_irreducible_claim, verify_theorem
from .witness.dispatcher import witness
from .witness.models import WitnessPair

__all__ = [
    "DEFAULT_CONFIG",
    "EngineConfig",
    "FieldCtx",
    "FieldElement",
    "Matrix",
    "SLClass",
    "SimilarityClass",
    "TraceSet",
    "WitnessPair",
    "__version__",
    "class_product_survey",
    "class_of",
    "class_product_decomposition",
    "enumerate_classes",
    "field_create",
    "field_from_order",
    "parse_class",
    "parse_element",
    "trace_set",
    "verify_gl2_irreducible_claim",
    "verify_theorem",
    "witness",
]
