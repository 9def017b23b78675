"""
Verify commands - brute-force sweeps over every class pair of a small group.
"""

import logging
from pathlib import Path
from typing import Optional, cast

import typer
from rich.table import Table
from typing_extensions import Annotated

from classtrace.core.classes import Group
from classtrace.core.exporters import ExportConfig
from classtrace.exceptions import ClassTraceError
from classtrace.oracle.models import VerificationReport
from classtrace.oracle.verification import verify_gl2_irreducible_claim, verify_theorem

from ..config_utils import load_engine_config, load_field
from ..constants import EXIT_CONSTRUCTION_FAILED, THEOREM_GROUPS
from ..options import (
    BudgetOption,
    ConfigOption,
    JobsOption,
    ModulusOption,
    NOption,
    OutputOption,
    QOption,
    SeedOption,
)
from ..output import console, emit, fail
from ..validators import validate_positive, validate_theorem

logger = logging.getLogger(__name__)


def verify_command(
    q: QOption,
    n: NOption,
    theorem: Annotated[
        str,
        typer.Option(
            "--theorem", help="1: similarity classes of M(n, q); 2: conjugacy classes of SL(n, q)."
        ),
    ] = "1",
    gl: Annotated[
        bool, typer.Option("--gl", help="Restrict the similarity-class sweep to nonsingular classes.")
    ] = False,
    sampled: Annotated[
        Optional[int], typer.Option("--sampled", help="Check N seeded random pairs only.")
    ] = None,
    products: Annotated[
        bool, typer.Option("--products", help="Add class-product decompositions to the report.")
    ] = False,
    oracle: Annotated[
        bool, typer.Option("--oracle/--no-oracle", help="Compare against brute-force trace sets.")
    ] = True,
    seed: SeedOption = None,
    budget: BudgetOption = None,
    jobs: JobsOption = None,
    modulus: ModulusOption = None,
    output: OutputOption = None,
    config: ConfigOption = None,
) -> None:
    """Check every nonscalar class pair: trace set all of K and a verified witness per trace."""
    theorem_val = validate_theorem(theorem)
    group = cast(Group, "GL" if gl and theorem_val == "1" else THEOREM_GROUPS[theorem_val])
    validate_positive(sampled, "--sampled")
    validate_positive(budget, "--budget")
    validate_positive(jobs, "--jobs")
    logger.debug(f"Verifying theorem {theorem_val} as {group}({n}, {q}), sampled={sampled}")
    try:
        engine = load_engine_config(config, seed=seed, budget=budget, jobs=jobs)
        field = load_field(q, modulus, engine)
        report = verify_theorem(
            n,
            field,
            group,
            sampled=sampled,
            seed=engine.seed,
            products=products,
            oracle=oracle,
            config=engine,
        )
    except ClassTraceError as e:
        fail(e)
    _finish(report, output)


def verify_gl2_claim_command(
    q: QOption,
    budget: BudgetOption = None,
    modulus: ModulusOption = None,
    output: OutputOption = None,
    config: ConfigOption = None,
) -> None:
    """Check that irreducible 2x2 classes always reach every trace (no proof is known)."""
    validate_positive(budget, "--budget")
    try:
        engine = load_engine_config(config, budget=budget)
        field = load_field(q, modulus, engine)
        report = verify_gl2_irreducible_claim(field, config=engine)
    except ClassTraceError as e:
        fail(e)
    _finish(report, output)


def _finish(report: VerificationReport, output: Path | None) -> None:
    _print_summary(report)
    emit(report.to_dict(), output, ExportConfig().REPORT_FILENAME)
    if not report.passed:
        raise typer.Exit(code=EXIT_CONSTRUCTION_FAILED)


def _print_summary(report: VerificationReport) -> None:
    scope = report.scope
    table = Table(title=f"{scope.group}({scope.n}, {scope.q}): {report.claim}")
    table.add_column("Check")
    table.add_column("Count", justify="right")
    table.add_row("Pairs", str(report.pairs_checked))
    table.add_row("Full trace sets", str(report.full_trace_sets))
    table.add_row("Witnesses", str(report.witnesses_built))
    table.add_row("Search fallbacks", str(report.search_fallbacks))
    table.add_row("Dichotomy cases", str(len(report.dichotomy_cases)))
    table.add_row("Oracle skipped", str(report.oracle_skipped))
    table.add_row("Failures", str(len(report.failures)))
    if report.products is not None:
        table.add_row("Single-class products", str(report.products.single_class_products))
    console.print(table)
    verdict = "[green]PASSED[/green]" if report.passed else "[red]FAILED[/red]"
    console.print(f"{verdict} ({report.mode})")
