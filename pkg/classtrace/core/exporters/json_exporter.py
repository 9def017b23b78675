"""JSON exporter for witnesses, trace sets, class lists and reports."""

import json
from pathlib import Path
from typing import Any, Dict

from ...exceptions import ConfigurationError
from ...protocols import is_serializable
from .config import ExportConfig


class JSONExporter:
    """Render documents as deterministic JSON text and optionally write them to disk."""

    def __init__(self, config: ExportConfig | None = None) -> None:
        """Initialize JSON exporter.

        Args:
            config: Export configuration. Uses defaults if None.
        """
        self.config = config or ExportConfig()

    def to_document(self, obj: Any) -> Dict[str, Any] | list[Any]:
        """Turn an object with to_dict(), a dict or a list of such objects into plain JSON data.

        Raises:
            ConfigurationError: If the object cannot be serialized.
        """
        if is_serializable(obj):
            return obj.to_dict()
        if isinstance(obj, dict):
            return obj
        if isinstance(obj, (list, tuple)):
            return [self.to_document(item) for item in obj]
        raise ConfigurationError(
            "Object has no JSON representation", details={"type": type(obj).__name__}
        )

    def dumps(self, obj: Any) -> str:
        """Serialize to text; identical inputs give byte-identical output."""
        return json.dumps(
            self.to_document(obj),
            indent=self.config.JSON_INDENT,
            ensure_ascii=self.config.ENSURE_ASCII,
            sort_keys=self.config.JSON_SORT_KEYS,
        )

    def export(self, obj: Any, output_path: Path) -> None:
        """Export to a JSON file.

        Args:
            obj: Document to export.
            output_path: File path where to save JSON.
        """
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, "w", encoding=self.config.JSON_ENCODING) as f:
            f.write(self.dumps(obj))
            f.write("\n")
