"""
Main CLI application setup and entry point.
"""

import importlib
import logging
import sys
from typing import Sequence

import typer
from typer import Abort, BadParameter, Exit

from .commands.classes import classes_command
from .commands.init import init_command
from .commands.products import product_classes_command
from .commands.trace_set import trace_set_command
from .commands.verify import verify_command, verify_gl2_claim_command
from .commands.witness import witness_command
from .constants import EXIT_OK, EXIT_USAGE
from .output import console, emit_error

# Parser errors come from the click that typer itself runs on.
UsageError = importlib.import_module(BadParameter.__module__).UsageError


def version_callback(value: bool) -> None:
    """Show version and exit."""
    if value:
        from classtrace import __version__

        typer.echo(f"classtrace version: {__version__}")
        raise typer.Exit()


def verbose_callback(ctx: typer.Context, value: bool) -> bool:
    """Configure logging based on verbose flag; logs always go to standard error."""
    if value:
        logging.basicConfig(
            level=logging.DEBUG,
            format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
        logging.getLogger("classtrace").setLevel(logging.DEBUG)
    else:
        logging.basicConfig(
            level=logging.WARNING,
            format="%(levelname)s: %(message)s",
        )
    return value


app = typer.Typer(
    name="classtrace",
    help="Build matrices with prescribed traces from conjugacy classes over finite fields, and verify trace surjectivity by brute force.",
    add_completion=False,
    pretty_exceptions_show_locals=False,
)


@app.callback()
def main_callback(
    verbose: bool = typer.Option(
        False,
        "--verbose",
        "-v",
        help="Enable verbose output with detailed logging",
        callback=verbose_callback,
        is_eager=True,
    ),
    version: bool = typer.Option(
        False,
        "--version",
        help="Show version and exit",
        callback=version_callback,
        is_eager=True,
    ),
) -> None:
    """
    classtrace CLI - trace witnesses for class pairs over GF(q).

    JSON goes to standard output; summaries and logs go to standard error.
    """


# Register commands
app.command(name="init", help="Create a default classtrace.yaml in the current directory.")(
    init_command
)
app.command(name="classes", help="List the classes of M(n, q), GL(n, q) or SL(n, q).")(
    classes_command
)
app.command(name="witness", help="Build a verified pair (W, Q) with tr(WQ) = tau.")(
    witness_command
)
app.command(name="trace-set", help="Brute-force trace set of a class pair.")(trace_set_command)
app.command(name="product-classes", help="Classes met by the product of two classes.")(
    product_classes_command
)
app.command(name="verify", help="Verify trace surjectivity over every class pair.")(
    verify_command
)
app.command(
    name="verify-gl2-claim", help="Check the irreducible 2x2 trace claim by brute force."
)(verify_gl2_claim_command)


def run(argv: Sequence[str] | None = None) -> int:
    """Run the app and return its exit code instead of exiting.

    Usage errors from argument parsing become exit code 4 with a JSON error object.
    """
    try:
        result = app(
            args=list(argv) if argv is not None else None,
            prog_name="classtrace",
            standalone_mode=False,
        )
    except Exit as e:
        return e.exit_code
    except UsageError as e:
        emit_error({"error": "UsageError", "message": e.format_message(), "details": {}})
        console.print(f"[red]Usage error:[/red] {e.format_message()}")
        return EXIT_USAGE
    except Abort:
        console.print("Aborted.")
        return 1
    return result if isinstance(result, int) else EXIT_OK


def main() -> None:
    """Main entry point for the CLI."""
    sys.exit(run())


if __name__ == "__main__":
    main()
