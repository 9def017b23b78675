"""
Input validation functions for CLI commands.
"""

from typing import Callable

import typer

from .constants import GROUPS, THEOREM_GROUPS

# Validation option sets mapped to names
VALIDATION_SETS = {
    "group": (GROUPS, "group"),
    "theorem": (list(THEOREM_GROUPS), "theorem"),
}


def validate_option(value: str, valid_options: list[str], option_name: str) -> str:
    """Generic validator for CLI options; matching ignores case."""
    by_lower = {option.lower(): option for option in valid_options}
    if value.lower() not in by_lower:
        raise typer.BadParameter(
            f"Invalid {option_name} '{value}'. Must be one of: {', '.join(valid_options)}"
        )
    return by_lower[value.lower()]


def _make_validator(key: str) -> Callable[[str], str]:
    """Factory for creating validators."""
    options, name = VALIDATION_SETS[key]
    return lambda value: validate_option(value, options, name)


validate_group = _make_validator("group")
validate_theorem = _make_validator("theorem")


def parse_modulus(text: str | None) -> list[int] | None:
    """Ascending modulus coefficients from "c0,c1,...,ck"."""
    if text is None:
        return None
    try:
        return [int(part) for part in text.replace("[", "").replace("]", "").split(",")]
    except ValueError as e:
        raise typer.BadParameter(
            f"Modulus must be comma-separated integers, got '{text}'"
        ) from e


def validate_positive(value: int | None, option_name: str) -> int | None:
    if value is not None and value < 1:
        raise typer.BadParameter(f"{option_name} must be a positive integer")
    return value
