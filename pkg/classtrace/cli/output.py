"""
JSON output and error reporting for the commands.

Machine output is JSON on standard output; human summaries and logs go to
standard error so the two never mix.
"""

import logging
from pathlib import Path
from typing import Any, NoReturn

import typer
from rich.console import Console

from ..core.exporters import JSONExporter
from ..exceptions import (
    BudgetExceededError,
    ClassTraceError,
    ConstructionFailedError,
    HypothesisViolatedError,
    ScalarClassError,
    TooLargeError,
    TraceExcludedError,
    UnsupportedCaseError,
    WitnessError,
)
from .constants import (
    EXIT_BUDGET,
    EXIT_CONSTRUCTION_FAILED,
    EXIT_TRACE_EXCLUDED,
    EXIT_USAGE,
)

logger = logging.getLogger(__name__)

console = Console(stderr=True)
exporter = JSONExporter()


def exit_code_for(error: ClassTraceError) -> int:
    """Exit code of a library error."""
    if isinstance(error, TraceExcludedError):
        return EXIT_TRACE_EXCLUDED
    if isinstance(error, (BudgetExceededError, TooLargeError)):
        return EXIT_BUDGET
    if isinstance(error, (ScalarClassError, UnsupportedCaseError, HypothesisViolatedError)):
        return EXIT_USAGE
    if isinstance(error, (ConstructionFailedError, WitnessError)):
        return EXIT_CONSTRUCTION_FAILED
    return EXIT_USAGE


def emit(document: Any, output: Path | None = None, default_name: str | None = None) -> None:
    """Print a document as JSON and, with --output, write it to a file too.

    An existing directory as output receives default_name inside it.
    """
    typer.echo(exporter.dumps(document))
    if output is None:
        return
    target = output / default_name if output.is_dir() and default_name else output
    exporter.export(document, target)
    console.print(f"[green]Wrote[/green] {target}")


def emit_error(payload: dict[str, Any]) -> None:
    typer.echo(exporter.dumps(payload))


def fail(error: ClassTraceError) -> NoReturn:
    """Report a library error as a JSON error object and exit with its code."""
    code = exit_code_for(error)
    logger.debug(f"Exiting with code {code}: {error!r}")
    emit_error(error.to_dict())
    console.print(f"[red]Error:[/red] {error.message}")
    raise typer.Exit(code=code) from error
