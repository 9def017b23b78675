"""
Classes command - lists every class of M(n, q), GL(n, q) or SL(n, q).
"""

import logging
from typing import cast

from classtrace.core.classes import Group, enumerate_classes
from classtrace.exceptions import ClassTraceError

from ..config_utils import load_engine_config, load_field
from ..options import ConfigOption, GroupOption, ModulusOption, NOption, OutputOption, QOption
from ..output import console, emit, fail
from ..validators import validate_group

logger = logging.getLogger(__name__)


def classes_command(
    q: QOption,
    n: NOption,
    group: GroupOption = "M",
    modulus: ModulusOption = None,
    output: OutputOption = None,
    config: ConfigOption = None,
) -> None:
    """List classes in the invariant-factor text format, with labels for split SL classes."""
    group_val = cast(Group, validate_group(group))
    logger.debug(f"Listing classes: q={q}, n={n}, group={group_val}")
    try:
        engine = load_engine_config(config)
        field = load_field(q, modulus, engine)
        found = enumerate_classes(n, field, group_val, config=engine)
    except ClassTraceError as e:
        fail(e)

    console.print(f"[cyan]{len(found)}[/cyan] classes of {group_val}({n}, {q})")
    emit(
        {
            "field": field.to_dict(),
            "n": n,
            "group": group_val,
            "count": len(found),
            "classes": [c.to_dict() for c in found],
        },
        output,
        "classes.json",
    )
