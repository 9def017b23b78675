"""
Product-classes command - which classes the product omega * psi meets.
"""

import logging
from typing import cast

from classtrace.core.classes import Group
from classtrace.exceptions import ClassTraceError
from classtrace.oracle.orbits import class_product_decomposition

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


def product_classes_command(
    q: QOption,
    n: NOption,
    omega: OmegaOption,
    psi: PsiOption,
    group: GroupOption = "M",
    budget: BudgetOption = None,
    modulus: ModulusOption = None,
    output: OutputOption = None,
    config: ConfigOption = None,
) -> None:
    """Decompose {wq : w in omega, q in psi} into classes."""
    group_val = cast(Group, validate_group(group))
    validate_positive(budget, "--budget")
    try:
        engine = load_engine_config(config, budget=budget)
        field = load_field(q, modulus, engine)
        om, ps = load_class_pair(field, omega, psi, group=group_val, n=n)
        decomposition = class_product_decomposition(om, ps, config=engine)
    except ClassTraceError as e:
        fail(e)

    logger.debug(f"{om} * {ps} meets {[c.to_text() for c in decomposition]}")
    console.print(f"{om} * {ps} meets [cyan]{len(decomposition)}[/cyan] class(es)")
    emit(
        {
            "omega": om.to_text(),
            "psi": ps.to_text(),
            "group": group_val,
            "count": len(decomposition),
            "classes": [c.to_dict() for c in decomposition],
        },
        output,
        "product_classes.json",
    )
