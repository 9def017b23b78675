"""
Configuration loading utilities shared by the commands.
"""

import logging
from pathlib import Path
from typing import Any, Dict

import yaml

from ..config import EngineConfig
from ..core.classes import ClassHandle, Group
from ..core.field import FieldCtx, field_from_order
from ..core.parsing import parse_class
from .validators import parse_modulus

logger = logging.getLogger(__name__)


def load_engine_config(
    config_path: Path | None = None,
    *,
    seed: int | None = None,
    budget: int | None = None,
    jobs: int | None = None,
) -> EngineConfig:
    """Effective engine configuration; command-line flags win over every other source.

    Raises:
        ConfigurationError: If the file, the environment or a flag holds an invalid value.
    """
    config = EngineConfig.from_sources(config_path, seed=seed, orbit_budget=budget, jobs=jobs)
    logger.debug(f"Using engine config {config.to_dict()}")
    return config


def load_field(q: int, modulus: str | None, config: EngineConfig) -> FieldCtx:
    """GF(q) with an optional explicit modulus, bounded by config.field_bound."""
    return field_from_order(q, parse_modulus(modulus), bound=config.field_bound)


def save_config(config_dict: Dict[str, Any], output_path: Path) -> None:
    """Save configuration dictionary to YAML file.

    Args:
        config_dict: Configuration dictionary to save.
        output_path: Path where to save the config file.
    """
    with open(output_path, "w", encoding="utf-8") as f:
        yaml.dump(config_dict, f, default_flow_style=False, sort_keys=False, indent=2)


def load_class_pair(
    field: FieldCtx, omega: str, psi: str, *, group: Group, n: int
) -> tuple[ClassHandle, ClassHandle]:
    """Parse --omega and --psi.

    Raises:
        ParseError: If either text is malformed or has the wrong size.
    """
    return (
        parse_class(field, omega, group=group, n=n),
        parse_class(field, psi, group=group, n=n),
    )
