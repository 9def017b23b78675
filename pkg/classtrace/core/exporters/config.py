"""Serialization constants for exported documents."""

from dataclasses import dataclass


@dataclass(frozen=True)
class ExportConfig:
    """Configuration for JSON export."""

    JSON_ENCODING: str = "utf-8"
    JSON_INDENT: int = 2
    JSON_SORT_KEYS: bool = False

    # Witness and report documents
    WITNESS_FILENAME: str = "witness.json"
    REPORT_FILENAME: str = "report.json"

    ENSURE_ASCII: bool = False
