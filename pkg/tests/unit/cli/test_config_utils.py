"""
Tests for configuration loading and utility functions.
"""

import pytest
import yaml

from classtrace.cli.config_utils import (
    load_class_pair,
    load_engine_config,
    load_field,
    save_config,
)
from classtrace.cli.constants import CONFIG_FILE_NAME
from classtrace.config import EngineConfig
from classtrace.core.classes import SLClass
from classtrace.exceptions import (
    ConfigurationError,
    FieldTooLargeError,
    NotPrimeError,
    ParseError,
    ReducibleModulusError,
)


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    """Run in an empty directory with no CLASSTRACE_* variables set."""
    for name in ("CLASSTRACE_BUDGET", "CLASSTRACE_SEED", "CLASSTRACE_JOBS"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)
    return tmp_path


class TestLoadEngineConfig:
    """Test the effective configuration seen by commands."""

    def test_defaults(self, clean_env):
        """Should return defaults without file, env or flags."""
        assert load_engine_config() == EngineConfig()

    def test_cwd_file(self, clean_env):
        """Should read classtrace.yaml from the working directory."""
        (clean_env / CONFIG_FILE_NAME).write_text("seed: 5\noracle:\n  jobs: 2\n")
        config = load_engine_config()
        assert config.seed == 5
        assert config.jobs == 2

    def test_flags_win(self, clean_env, monkeypatch):
        """Should prefer flags over environment and file."""
        (clean_env / CONFIG_FILE_NAME).write_text("seed: 5\n")
        monkeypatch.setenv("CLASSTRACE_SEED", "6")
        monkeypatch.setenv("CLASSTRACE_BUDGET", "100")
        config = load_engine_config(seed=7, jobs=3)
        assert config.seed == 7
        assert config.orbit_budget == 100
        assert config.jobs == 3

    def test_budget_flag(self, clean_env):
        """--budget sets the orbit budget."""
        assert load_engine_config(budget=42).orbit_budget == 42

    def test_explicit_path(self, clean_env):
        """Should read an explicit path."""
        path = clean_env / "other.yaml"
        path.write_text("bounds:\n  search_bound: 10\n")
        assert load_engine_config(path).search_bound == 10

    def test_invalid_value(self, clean_env):
        """Should raise ConfigurationError for invalid values."""
        (clean_env / CONFIG_FILE_NAME).write_text("oracle:\n  jobs: 0\n")
        with pytest.raises(ConfigurationError):
            load_engine_config()


class TestLoadField:
    """Test field construction from --q and --modulus."""

    def test_prime(self):
        field = load_field(5, None, EngineConfig())
        assert field.order == 5

    def test_extension_default_modulus(self):
        field = load_field(4, None, EngineConfig())
        assert field.order == 4
        assert list(field.modulus) == [1, 1, 1]

    def test_explicit_modulus(self):
        field = load_field(9, "2,2,1", EngineConfig())
        assert list(field.modulus) == [2, 2, 1]

    def test_not_prime_power(self):
        with pytest.raises(NotPrimeError):
            load_field(6, None, EngineConfig())

    def test_reducible_modulus(self):
        with pytest.raises(ReducibleModulusError):
            load_field(4, "1,0,1", EngineConfig())

    def test_field_bound(self):
        with pytest.raises(FieldTooLargeError):
            load_field(7, None, EngineConfig(field_bound=5))


class TestSaveConfig:
    """Test configuration saving."""

    def test_round_trip(self, tmp_path):
        """Should write YAML that loads back unchanged."""
        path = tmp_path / CONFIG_FILE_NAME
        save_config(EngineConfig.generate_yaml_dict(), path)
        with open(path, encoding="utf-8") as f:
            assert yaml.safe_load(f) == EngineConfig.generate_yaml_dict()


class TestLoadClassPair:
    """Test --omega/--psi parsing."""

    def test_sl_labels(self, gf3):
        omega, psi = load_class_pair(gf3, "(x-1)^2@label=2", "x^2+1", group="SL", n=2)
        assert isinstance(omega, SLClass)
        assert omega.label == gf3.element(2)
        assert psi.n == 2

    def test_wrong_size(self, gf3):
        with pytest.raises(ParseError):
            load_class_pair(gf3, "(x-1)^3", "x^2+1", group="M", n=2)
