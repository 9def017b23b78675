"""
Engine configuration for classtrace.

EngineConfig is the single source of truth for every bound, budget and seed.
Values come from the defaults below, then an optional classtrace.yaml, then
CLASSTRACE_* environment variables (a .env file is honoured), then explicit
overrides from the caller.
"""

import logging
import os
from pathlib import Path
from typing import Any, Dict, Mapping

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .exceptions import ConfigurationError

logger = logging.getLogger(__name__)

CONFIG_FILE_NAME = "classtrace.yaml"

ENV_PREFIX = "CLASSTRACE_"
ENV_FIELDS = {
    "BUDGET": "orbit_budget",
    "SEED": "seed",
    "JOBS": "jobs",
}


class EngineConfig(BaseModel):
    """Bounds, budgets and seeds shared by all modules."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    field_bound: int = Field(default=64, description="Largest field order for field_create")
    extension_bound: int = Field(
        default=65536, description="Largest field order reachable through extension_field"
    )
    orbit_budget: int = Field(default=50_000_000, description="Maximum orbit size")
    enumeration_bound: int = Field(
        default=50_000_000, description="Maximum q^(n^2) accepted by class enumeration"
    )
    search_bound: int = Field(default=1_000_000, description="Cap on every seeded search")
    centralizer_enumeration_bound: int = Field(
        default=65536, description="Largest centralizer algebra enumerated exhaustively"
    )
    centralizer_samples: int = Field(
        default=512, description="Random centralizer elements drawn above the bound"
    )
    seed: int = Field(default=1729, description="Default seed for seeded strategies")
    jobs: int = Field(default=1, description="Worker threads for verification")

    @field_validator(
        "field_bound",
        "extension_bound",
        "orbit_budget",
        "enumeration_bound",
        "search_bound",
        "centralizer_enumeration_bound",
        "centralizer_samples",
        "jobs",
    )
    @classmethod
    def _positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be a positive integer")
        return v

    @field_validator("seed")
    @classmethod
    def _non_negative_seed(cls, v: int) -> int:
        if v < 0:
            raise ValueError("seed must be non-negative")
        return v

    def with_overrides(self, **overrides: Any) -> "EngineConfig":
        """Return a copy with the non-None overrides applied and validated."""
        updates = {k: v for k, v in overrides.items() if v is not None}
        if not updates:
            return self
        return build_config({**self.model_dump(), **updates})

    def to_dict(self) -> Dict[str, Any]:
        """Convert config to dictionary format."""
        return self.model_dump()

    @classmethod
    def generate_yaml_dict(cls) -> Dict[str, Any]:
        """Dictionary written by `classtrace init`."""
        defaults = cls()
        return {
            "bounds": {
                "field_bound": defaults.field_bound,
                "extension_bound": defaults.extension_bound,
                "enumeration_bound": defaults.enumeration_bound,
                "search_bound": defaults.search_bound,
                "centralizer_enumeration_bound": defaults.centralizer_enumeration_bound,
            },
            "oracle": {
                "orbit_budget": defaults.orbit_budget,
                "centralizer_samples": defaults.centralizer_samples,
                "jobs": defaults.jobs,
            },
            "seed": defaults.seed,
        }

    @classmethod
    def from_sources(
        cls,
        path: Path | None = None,
        env: Mapping[str, str] | None = None,
        **overrides: Any,
    ) -> "EngineConfig":
        """
        Build the effective configuration.

        Args:
            path: YAML file to read; defaults to classtrace.yaml in the working directory
                when it exists.
            env: Environment mapping; defaults to os.environ after loading .env.
            **overrides: Explicit values (None entries are ignored).

        Raises:
            ConfigurationError: If any source holds an invalid value.
        """
        values: Dict[str, Any] = {}

        config_path = path if path is not None else Path.cwd() / CONFIG_FILE_NAME
        if config_path.exists():
            values.update(_flatten_yaml(_read_yaml(config_path)))
        elif path is not None:
            raise ConfigurationError(
                "Configuration file not found", details={"path": str(config_path)}
            )

        if env is None:
            load_dotenv()
            env = os.environ
        for suffix, field_name in ENV_FIELDS.items():
            raw = env.get(ENV_PREFIX + suffix)
            if raw is None or raw == "":
                continue
            try:
                values[field_name] = int(float(raw)) if "e" in raw.lower() else int(raw)
            except ValueError as e:
                raise ConfigurationError(
                    f"Environment variable {ENV_PREFIX + suffix} must be an integer",
                    details={"value": raw},
                    cause=e,
                ) from e

        values.update({k: v for k, v in overrides.items() if v is not None})
        config = build_config(values)
        logger.debug(f"Effective engine config: {config.to_dict()}")
        return config


def build_config(values: Mapping[str, Any]) -> EngineConfig:
    """Validate a flat mapping into an EngineConfig."""
    try:
        return EngineConfig(**dict(values))
    except ValidationError as e:
        raise ConfigurationError(
            "Invalid engine configuration", details={"errors": e.error_count()}, cause=e
        ) from e


def _read_yaml(config_path: Path) -> Dict[str, Any]:
    try:
        with open(config_path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigurationError(
            "Configuration file is not valid YAML", details={"path": str(config_path)}, cause=e
        ) from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigurationError(
            "Configuration file must contain a mapping at the top level",
            details={"path": str(config_path)},
        )
    return data


def _flatten_yaml(data: Mapping[str, Any]) -> Dict[str, Any]:
    # Sections are cosmetic; keys are the EngineConfig field names.
    flat: Dict[str, Any] = {}
    for key, value in data.items():
        if isinstance(value, Mapping):
            flat.update(_flatten_yaml(value))
        else:
            flat[key] = value
    return flat


DEFAULT_CONFIG = EngineConfig()
