"""
Option types shared by several commands.
"""

from pathlib import Path
from typing import Optional

import typer
from typing_extensions import Annotated

QOption = Annotated[int, typer.Option("--q", "-q", help="Field order p^k.")]
NOption = Annotated[int, typer.Option("--n", "-n", help="Matrix size.")]
GroupOption = Annotated[str, typer.Option("--group", "-g", help="Group: 'M', 'GL' or 'SL'.")]
ModulusOption = Annotated[
    Optional[str],
    typer.Option(
        "--modulus", help="Ascending coefficients of the defining polynomial, e.g. '1,1,1'."
    ),
]
OmegaOption = Annotated[
    str,
    typer.Option(
        "--omega", help="First class as invariant factors, e.g. 'x-1,(x-1)^2' or '(x-1)^3@label=2'."
    ),
]
PsiOption = Annotated[str, typer.Option("--psi", help="Second class, same format as --omega.")]
SeedOption = Annotated[Optional[int], typer.Option("--seed", "-s", help="Seed for searches.")]
BudgetOption = Annotated[
    Optional[int], typer.Option("--budget", help="Maximum orbit size for brute force.")
]
JobsOption = Annotated[Optional[int], typer.Option("--jobs", "-j", help="Worker threads.")]
OutputOption = Annotated[
    Optional[Path], typer.Option("--output", "-o", help="Also write the JSON document here.")
]
ConfigOption = Annotated[
    Optional[Path],
    typer.Option("--config", "-c", help="Engine config file (default: ./classtrace.yaml).", exists=True, dir_okay=False),
]
