"""
Init command - writes the default engine configuration file.
"""

from pathlib import Path

import typer
from typing_extensions import Annotated

from classtrace.config import EngineConfig

from ..config_utils import save_config
from ..constants import CONFIG_FILE_NAME
from ..output import console


def init_command(
    force: Annotated[
        bool, typer.Option("--force", "-f", help="Overwrite an existing configuration file.")
    ] = False,
) -> None:
    """Create classtrace.yaml with every engine default spelled out."""
    output_path = Path.cwd() / CONFIG_FILE_NAME

    if output_path.exists() and not force:
        console.print(f"[yellow]A configuration file: '{CONFIG_FILE_NAME}' already exists.[/yellow]")
        if not typer.confirm("Overwrite it?", err=True):
            console.print("Initialization cancelled.")
            return

    try:
        save_config(EngineConfig.generate_yaml_dict(), output_path)
    except OSError as err:
        console.print(f"[red]Error saving config: {err}[/red]")
        raise typer.Exit(code=1) from err
    console.print(f"[green]Config successfully initiated at: {output_path}[/green]")
    console.print("Edit the bounds there, or override them with CLASSTRACE_BUDGET, CLASSTRACE_SEED and CLASSTRACE_JOBS.")
