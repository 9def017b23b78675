"""
Tests for EngineConfig loading and validation.
"""

import pytest
import yaml

from classtrace.config import (
    CONFIG_FILE_NAME,
    DEFAULT_CONFIG,
    EngineConfig,
    build_config,
)
from classtrace.exceptions import ConfigurationError


class TestEngineConfigDefaults:
    """Test default bounds."""

    def test_defaults(self):
        """Should carry the documented default bounds."""
        config = EngineConfig()
        assert config.field_bound == 64
        assert config.extension_bound == 65536
        assert config.orbit_budget == 50_000_000
        assert config.search_bound == 1_000_000
        assert config.seed == 1729
        assert config.jobs == 1

    def test_default_config_is_engine_config(self):
        """Should expose a module-level default instance."""
        assert DEFAULT_CONFIG == EngineConfig()

    def test_frozen(self):
        """Should reject attribute assignment."""
        with pytest.raises(Exception):
            DEFAULT_CONFIG.seed = 3  # type: ignore[misc]

    def test_unknown_key_rejected(self):
        """Should reject unknown fields through build_config."""
        with pytest.raises(ConfigurationError):
            build_config({"orbit_bugdet": 10})

    @pytest.mark.parametrize("field", ["orbit_budget", "jobs", "field_bound"])
    def test_non_positive_rejected(self, field):
        """Should reject zero bounds."""
        with pytest.raises(ConfigurationError):
            build_config({field: 0})

    def test_negative_seed_rejected(self):
        """Should reject negative seeds."""
        with pytest.raises(ConfigurationError):
            build_config({"seed": -1})


class TestWithOverrides:
    """Test override merging."""

    def test_none_overrides_return_same_instance(self):
        """Should ignore None values."""
        config = EngineConfig()
        assert config.with_overrides(seed=None, jobs=None) is config

    def test_overrides_applied(self):
        """Should replace only the given fields."""
        config = EngineConfig().with_overrides(seed=5, orbit_budget=100)
        assert config.seed == 5
        assert config.orbit_budget == 100
        assert config.jobs == 1

    def test_invalid_override(self):
        """Should validate overridden values."""
        with pytest.raises(ConfigurationError):
            EngineConfig().with_overrides(jobs=-2)


class TestFromSources:
    """Test layered loading: file, then environment, then overrides."""

    def test_no_sources(self, tmp_path, monkeypatch):
        """Should fall back to defaults when nothing is configured."""
        monkeypatch.chdir(tmp_path)
        assert EngineConfig.from_sources(env={}) == EngineConfig()

    def test_yaml_sections_flattened(self, tmp_path):
        """Should read nested sections by field name."""
        path = tmp_path / CONFIG_FILE_NAME
        path.write_text(yaml.dump({"bounds": {"field_bound": 32}, "oracle": {"jobs": 4}, "seed": 9}))
        config = EngineConfig.from_sources(path, env={})
        assert config.field_bound == 32
        assert config.jobs == 4
        assert config.seed == 9

    def test_cwd_file_picked_up(self, tmp_path, monkeypatch):
        """Should read classtrace.yaml from the working directory."""
        (tmp_path / CONFIG_FILE_NAME).write_text("seed: 11\n")
        monkeypatch.chdir(tmp_path)
        assert EngineConfig.from_sources(env={}).seed == 11

    def test_empty_file(self, tmp_path):
        """Should treat an empty file as no settings."""
        path = tmp_path / CONFIG_FILE_NAME
        path.write_text("")
        assert EngineConfig.from_sources(path, env={}) == EngineConfig()

    def test_missing_explicit_path(self, tmp_path):
        """Should raise when an explicit file does not exist."""
        with pytest.raises(ConfigurationError, match="not found"):
            EngineConfig.from_sources(tmp_path / "missing.yaml", env={})

    def test_invalid_yaml(self, tmp_path):
        """Should raise on malformed YAML."""
        path = tmp_path / CONFIG_FILE_NAME
        path.write_text("seed: [1, 2\n")
        with pytest.raises(ConfigurationError, match="not valid YAML"):
            EngineConfig.from_sources(path, env={})

    def test_non_mapping_yaml(self, tmp_path):
        """Should raise when the document is not a mapping."""
        path = tmp_path / CONFIG_FILE_NAME
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigurationError, match="mapping"):
            EngineConfig.from_sources(path, env={})

    def test_environment_over_file(self, tmp_path):
        """Environment variables should override the file."""
        path = tmp_path / CONFIG_FILE_NAME
        path.write_text("seed: 3\njobs: 2\n")
        config = EngineConfig.from_sources(
            path, env={"CLASSTRACE_SEED": "8", "CLASSTRACE_BUDGET": "1e6"}
        )
        assert config.seed == 8
        assert config.jobs == 2
        assert config.orbit_budget == 1_000_000

    def test_blank_environment_ignored(self, tmp_path, monkeypatch):
        """Should skip empty environment values."""
        monkeypatch.chdir(tmp_path)
        assert EngineConfig.from_sources(env={"CLASSTRACE_JOBS": ""}).jobs == 1

    def test_bad_environment_value(self, tmp_path, monkeypatch):
        """Should raise on non-integer environment values."""
        monkeypatch.chdir(tmp_path)
        with pytest.raises(ConfigurationError, match="CLASSTRACE_JOBS"):
            EngineConfig.from_sources(env={"CLASSTRACE_JOBS": "many"})

    def test_overrides_win(self, tmp_path, monkeypatch):
        """Explicit overrides should beat the environment."""
        monkeypatch.chdir(tmp_path)
        config = EngineConfig.from_sources(env={"CLASSTRACE_SEED": "8"}, seed=2, jobs=None)
        assert config.seed == 2


class TestGenerateYamlDict:
    """Test the init template."""

    def test_round_trips_through_from_sources(self, tmp_path):
        """Should load back to the defaults."""
        path = tmp_path / CONFIG_FILE_NAME
        path.write_text(yaml.dump(EngineConfig.generate_yaml_dict()))
        assert EngineConfig.from_sources(path, env={}) == EngineConfig()

    def test_sections(self):
        """Should group keys into bounds and oracle sections."""
        data = EngineConfig.generate_yaml_dict()
        assert set(data) == {"bounds", "oracle", "seed"}
        assert "orbit_budget" in data["oracle"]
