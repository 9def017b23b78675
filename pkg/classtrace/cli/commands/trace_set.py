"""
Trace-set command - brute-force {tr(wq) : w in omega, q in psi}.
"""

import logging
from typing import cast

import typer
from typing_extensions import Annotated

from classtrace.core.classes import Group
from classtrace.exceptions import ClassTraceError
from classtrace.oracle.orbits import trace_set

from ..config_utils import load_class_pair, load_engine_config, load_field
from ..options import (
    BudgetOption,
    ConfigOption,
    GroupOption,
    ModulusOption,
    NOption,
    OmegaOption,
    OutputOption,
    PsiOption,
    QOption,
)
from ..output import console, emit, fail
from ..validators import validate_group, validate_positive

logger = logging.getLogger(__name__)


def trace_set_command(
    q: QOption,
    n: NOption,
    omega: OmegaOption,
    psi: PsiOption,
    group: GroupOption = "M",
    full: Annotated[
        bool, typer.Option("--full", help="Walk the whole orbit instead of stopping at K.")
    ] = False,
    budget: BudgetOption = None,
    modulus: ModulusOption = None,
    output: OutputOption = None,
    config: ConfigOption = None,
) -> None:
    """Enumerate the orbit of omega against a fixed member of psi."""
    group_val = cast(Group, validate_group(group))
    validate_positive(budget, "--budget")
    try:
        engine = load_engine_config(config, budget=budget)
        field = load_field(q, modulus, engine)
        om, ps = load_class_pair(field, omega, psi, group=group_val, n=n)
        logger.debug(f"Trace set of {om} | {ps}, early exit {not full}")
        traces = trace_set(om, ps, early_exit=not full, config=engine)
    except ClassTraceError as e:
        fail(e)

    if traces.complete:
        status = "[green]all of K[/green]"
    else:
        status = f"[yellow]misses {len(traces.missing())}[/yellow]"
    console.print(f"Trace set of {om} | {ps}: {status}")
    emit(
        {"omega": om.to_text(), "psi": ps.to_text(), "group": group_val, **traces.to_dict()},
        output,
        "trace_set.json",
    )
