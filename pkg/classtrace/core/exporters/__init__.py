"""Document export."""

from .config import ExportConfig
from .json_exporter import JSONExporter

__all__ = ["ExportConfig", "JSONExporter"]
