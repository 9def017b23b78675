"""
Shared pytest fixtures and configuration for all tests.

This conftest is at the root of the tests/ directory and provides
fields, engine configs and a class parser to every test module.
"""

from typing import Callable

import pytest

from classtrace.config import EngineConfig
from classtrace.core.classes import ClassHandle, Group
from classtrace.core.field import FieldCtx, field_create
from classtrace.core.parsing import parse_class

# ==================== Field Fixtures ====================


@pytest.fixture
def gf2() -> FieldCtx:
    return field_create(2)


@pytest.fixture
def gf3() -> FieldCtx:
    return field_create(3)


@pytest.fixture
def gf4() -> FieldCtx:
    """GF(4) with modulus x^2 + x + 1."""
    return field_create(2, 2)


@pytest.fixture
def gf5() -> FieldCtx:
    return field_create(5)


@pytest.fixture
def gf9() -> FieldCtx:
    return field_create(3, 2)


# ==================== Configuration Fixtures ====================


@pytest.fixture
def engine_config() -> EngineConfig:
    """Default bounds with a fixed seed."""
    return EngineConfig(seed=7)


@pytest.fixture
def tiny_budget() -> EngineConfig:
    """Orbit budget small enough to trip on any nontrivial orbit."""
    return EngineConfig(orbit_budget=3)


# ==================== Class Helpers ====================


@pytest.fixture
def make_class() -> Callable[..., ClassHandle]:
    """Parse class text: make_class(field, "x-1,(x-1)^2", group="M")."""

    def _make(field: FieldCtx, text: str, group: Group = "M") -> ClassHandle:
        return parse_class(field, text, group=group)

    return _make
