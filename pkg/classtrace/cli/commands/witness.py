"""
Witness command - builds a verified pair (W, Q) with a prescribed trace.
"""

import logging
from typing import cast

import typer
from typing_extensions import Annotated

from classtrace.core.classes import Group
from classtrace.core.exporters import ExportConfig
from classtrace.core.parsing import parse_element
from classtrace.exceptions import ClassTraceError
from classtrace.witness.dispatcher import route_name, witness

from ..config_utils import load_class_pair, load_engine_config, load_field
from ..options import (
    ConfigOption,
    GroupOption,
    ModulusOption,
    NOption,
    OmegaOption,
    OutputOption,
    PsiOption,
    QOption,
    SeedOption,
)
from ..output import console, emit, fail
from ..validators import validate_group

logger = logging.getLogger(__name__)


def witness_command(
    q: QOption,
    n: NOption,
    omega: OmegaOption,
    psi: PsiOption,
    tau: Annotated[str, typer.Option("--tau", "-t", help="Target trace, a field element.")],
    group: GroupOption = "M",
    seed: SeedOption = None,
    modulus: ModulusOption = None,
    output: OutputOption = None,
    config: ConfigOption = None,
) -> None:
    """Build W in omega and Q in psi with tr(WQ) = tau; the pair is verified before output."""
    group_val = cast(Group, validate_group(group))
    try:
        engine = load_engine_config(config, seed=seed)
        field = load_field(q, modulus, engine)
        om, ps = load_class_pair(field, omega, psi, group=group_val, n=n)
        target = parse_element(field, tau)
        logger.debug(f"Witness request {om} | {ps} tau={target} in {group_val}({n}, {q})")
        pair = witness(om, ps, target, group_val, seed=engine.seed, config=engine)
    except ClassTraceError as e:
        fail(e)

    route = route_name(pair.omega, pair.psi, group_val)
    console.print(
        f"[green]Verified[/green] tr(WQ) = {pair.tau} via [cyan]{route}[/cyan]"
        + (" [yellow](search fallback)[/yellow]" if pair.search else "")
    )
    emit(pair, output, ExportConfig().WITNESS_FILENAME)
