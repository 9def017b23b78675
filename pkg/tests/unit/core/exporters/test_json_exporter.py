"""
Tests for JSON exporter.
"""

import json

import pytest

from classtrace.core.exporters import ExportConfig, JSONExporter
from classtrace.exceptions import ConfigurationError


class _Doc:
    def __init__(self, value):
        self.value = value

    def to_dict(self):
        return {"value": self.value, "label": "é"}


class TestJSONExporter:
    """Test JSON rendering and file export."""

    def test_default_config(self):
        """Should use default export settings."""
        exporter = JSONExporter()
        assert exporter.config == ExportConfig()

    def test_to_document_variants(self):
        """Should accept objects with to_dict, dicts and lists of them."""
        exporter = JSONExporter()
        assert exporter.to_document(_Doc(1)) == {"value": 1, "label": "é"}
        assert exporter.to_document({"k": 2}) == {"k": 2}
        assert exporter.to_document([_Doc(1), {"k": 2}]) == [
            {"value": 1, "label": "é"},
            {"k": 2},
        ]

    def test_unserializable(self):
        """Should raise ConfigurationError for objects without a JSON form."""
        with pytest.raises(ConfigurationError):
            JSONExporter().to_document(object())

    def test_dumps_is_deterministic(self):
        """Identical inputs should give identical text with key order preserved."""
        exporter = JSONExporter()
        first = exporter.dumps({"z": 1, "a": [1, 2]})
        assert first == exporter.dumps({"z": 1, "a": [1, 2]})
        assert first.index('"z"') < first.index('"a"')

    def test_non_ascii_kept(self):
        """Should not escape non-ASCII characters."""
        assert "é" in JSONExporter().dumps(_Doc(0))

    def test_export_creates_parents(self, tmp_path):
        """Should create missing directories and end the file with a newline."""
        target = tmp_path / "nested" / "out.json"
        JSONExporter().export(_Doc(5), target)
        text = target.read_text(encoding="utf-8")
        assert text.endswith("\n")
        assert json.loads(text)["value"] == 5

    def test_custom_indent(self):
        """Should honour a custom indent."""
        exporter = JSONExporter(ExportConfig(JSON_INDENT=4))
        assert '\n    "k"' in exporter.dumps({"k": 1})
