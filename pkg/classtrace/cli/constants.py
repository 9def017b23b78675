"""
CLI constants for validation enums and exit codes.

NOTE: Engine defaults live in EngineConfig; this module only holds what the
command line itself validates against.
"""

from typing import Final

from ..config import CONFIG_FILE_NAME as ENGINE_CONFIG_FILE

# Configuration file written by `classtrace init`
CONFIG_FILE_NAME: Final[str] = ENGINE_CONFIG_FILE

# Groups a class pair can live in (enum for validation)
GROUPS: Final[list[str]] = ["M", "GL", "SL"]

# Theorems checked by `verify`: 1 is the similarity-class statement, 2 the SL one
THEOREM_GROUPS: Final[dict[str, str]] = {"1": "M", "2": "SL"}

# Exit codes
EXIT_OK: Final[int] = 0
EXIT_TRACE_EXCLUDED: Final[int] = 2
EXIT_CONSTRUCTION_FAILED: Final[int] = 3
EXIT_USAGE: Final[int] = 4
EXIT_BUDGET: Final[int] = 5
