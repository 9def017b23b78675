"""
CLI commands package.
"""

from .classes import classes_command
from .init import init_command
from .products import product_classes_command
from .trace_set import trace_set_command
from .verify import verify_command, verify_gl2_claim_command
from .witness import witness_command

__all__ = [
    "classes_command",
    "init_command",
    "product_classes_command",
    "trace_set_command",
    "verify_command",
    "verify_gl2_claim_command",
    "witness_command",
]
