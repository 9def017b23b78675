"""
Verification sweeps comparing the witness constructions with brute force.

For every class pair in scope the oracle trace set must be all of K and a
verified witness must be built for every tau. 2x2 pairs instead have to match
the trace dichotomy exactly. Failures are collected into the report; nothing
here raises for a failed check.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from typing import Sequence

import numpy as np

from ..config import DEFAULT_CONFIG, EngineConfig
from ..core.classes import ClassHandle, Group, TraceSet, closure_of, enumerate_classes
from ..core.field import FieldCtx, FieldElement
from ..exceptions import (
    BudgetExceededError,
    ClassTraceError,
    TraceExcludedError,
    UnsupportedCaseError,
)
from ..witness.dispatcher import witness
from ..witness.models import TraceDichotomy
from ..witness.two_by_two import trace_dichotomy_2x2
from .models import DichotomyCase, PairFailure, ProductSection, Scope, VerificationReport
from .orbits import class_product_decomposition, trace_set

logger = logging.getLogger(__name__)


@dataclass
class PairOutcome:
    """Per-pair tallies merged into a VerificationReport."""

    witnesses: int = 0
    full: bool = False
    oracle_skipped: bool = False
    search_fallbacks: int = 0
    dichotomy: DichotomyCase | None = None
    failures: list[PairFailure] = dataclass_field(default_factory=list)


def _failure(
    omega: ClassHandle,
    psi: ClassHandle,
    reason: str,
    tau: FieldElement | None = None,
    error: Exception | None = None,
) -> PairFailure:
    return PairFailure(
        omega=omega.to_text(),
        psi=psi.to_text(),
        tau=None if tau is None else str(tau),
        reason=reason,
        error=None if error is None else type(error).__name__,
    )


def _expected_dichotomy(omega: ClassHandle, psi: ClassHandle) -> TraceDichotomy:
    om, ps = closure_of(omega), closure_of(psi)
    if om.eigenvalues():
        return trace_dichotomy_2x2(om, ps)
    if ps.eigenvalues():
        return trace_dichotomy_2x2(ps, om)
    return TraceDichotomy(full=True)


def _compare_oracle(
    omega: ClassHandle, psi: ClassHandle, group: Group, traces: TraceSet, outcome: PairOutcome
) -> None:
    outcome.full = traces.complete
    if omega.n == 2 and group != "SL":
        expected = _expected_dichotomy(omega, psi)
        missing = traces.missing()
        if expected.full and missing:
            outcome.failures.append(
                _failure(omega, psi, f"trace set misses {[str(x) for x in missing]}")
            )
        elif expected.excluded is not None:
            if [x.value for x in missing] != [expected.excluded.value]:
                reason = f"dichotomy predicts {expected.excluded}, oracle misses {[str(x) for x in missing]}"
                outcome.failures.append(_failure(omega, psi, reason))
            else:
                outcome.dichotomy = DichotomyCase(
                    omega=omega.to_text(), psi=psi.to_text(), excluded=str(expected.excluded)
                )
        return
    if not traces.complete:
        outcome.failures.append(
            _failure(omega, psi, f"trace set misses {[str(x) for x in traces.missing()]}")
        )


def check_pair(
    omega: ClassHandle,
    psi: ClassHandle,
    group: Group,
    *,
    oracle: bool = True,
    seed: int | None = None,
    config: EngineConfig | None = None,
) -> PairOutcome:
    """Oracle trace set plus a witness for every tau, for one ordered class pair."""
    cfg = config or DEFAULT_CONFIG
    outcome = PairOutcome()
    traces: TraceSet | None = None
    if oracle:
        try:
            traces = trace_set(omega, psi, early_exit=True, config=cfg)
        except BudgetExceededError as e:
            logger.info(f"Oracle skipped for {omega} | {psi}: {e.message}")
            outcome.oracle_skipped = True
    if traces is not None:
        _compare_oracle(omega, psi, group, traces, outcome)

    for tau in omega.field:
        try:
            pair = witness(omega, psi, tau, group, seed=seed, config=cfg)
        except TraceExcludedError as e:
            if traces is not None and tau in traces:
                outcome.failures.append(
                    _failure(omega, psi, "excluded trace is realized by the oracle", tau, e)
                )
            continue
        except UnsupportedCaseError:
            break
        except ClassTraceError as e:
            outcome.failures.append(_failure(omega, psi, e.message, tau, e))
            continue
        outcome.witnesses += 1
        if pair.search:
            outcome.search_fallbacks += 1
    return outcome


def _claim(n: int, group: Group) -> str:
    if n == 2:
        return "2x2 trace dichotomy"
    if group == "SL":
        return "tr(Omega Psi) = K for nonscalar conjugacy classes of SL(n, K)"
    return "tr(Omega Psi) = K for nonscalar similarity classes of M(n, K)"


def _sample_pairs(
    pairs: list[tuple[ClassHandle, ClassHandle]], count: int | None, seed: int
) -> tuple[list[tuple[ClassHandle, ClassHandle]], bool]:
    if count is None or count >= len(pairs):
        return pairs, False
    rng = np.random.default_rng(seed)
    chosen = sorted(int(i) for i in rng.choice(len(pairs), size=count, replace=False))
    return [pairs[i] for i in chosen], True


def verify_theorem(
    n: int,
    field: FieldCtx,
    group: Group,
    *,
    sampled: int | None = None,
    seed: int | None = None,
    products: bool = False,
    oracle: bool = True,
    config: EngineConfig | None = None,
) -> VerificationReport:
    """
    Check every (or a seeded sample of) ordered nonscalar class pair.

    Args:
        n: Matrix size.
        field: Field of the classes.
        group: "M", "GL" or "SL".
        sampled: Number of pairs to sample; None checks all pairs.
        seed: Seed for sampling and for every construction.
        products: Add the class-product section.
        oracle: Compute brute-force trace sets; off leaves only witness checks.
        config: Engine bounds; jobs sets the worker count.

    Raises:
        UnsupportedCaseError: For SL(2, q).
    """
    if n == 2 and group == "SL":
        raise UnsupportedCaseError(
            "2x2 special linear classes are outside every construction", details={"q": field.order}
        )
    cfg = config or DEFAULT_CONFIG
    run_seed = cfg.seed if seed is None else seed
    started = time.perf_counter()
    classes = [c for c in enumerate_classes(n, field, group, config=cfg) if not c.is_scalar]
    pairs, was_sampled = _sample_pairs([(a, b) for a in classes for b in classes], sampled, run_seed)
    logger.info(f"Verifying {len(pairs)} pairs of {group}({n}, {field.order}) with {cfg.jobs} worker(s)")

    def run(pair: tuple[ClassHandle, ClassHandle]) -> PairOutcome:
        return check_pair(pair[0], pair[1], group, oracle=oracle, seed=run_seed, config=cfg)

    with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
        outcomes = list(pool.map(run, pairs))

    report = VerificationReport(
        scope=Scope(n=n, q=field.order, group=group),
        claim=_claim(n, group),
        mode="sampled" if was_sampled else "exhaustive",
        seed=run_seed,
        budget=cfg.orbit_budget,
        jobs=cfg.jobs,
        pairs_checked=len(pairs),
    )
    for outcome in outcomes:
        report.witnesses_built += outcome.witnesses
        report.full_trace_sets += int(outcome.full)
        report.oracle_skipped += int(outcome.oracle_skipped)
        report.search_fallbacks += outcome.search_fallbacks
        if outcome.dichotomy is not None:
            report.dichotomy_cases.append(outcome.dichotomy)
        report.failures.extend(outcome.failures)
    report.exhaustive = not was_sampled and report.oracle_skipped == 0
    if products:
        report.products = _product_section(classes, field, cfg)
        report.exhaustive = report.exhaustive and report.products.skipped_pairs == 0
    report.timing = time.perf_counter() - started
    logger.info(
        f"Verified {report.pairs_checked} pairs: {len(report.failures)} failure(s), "
        f"{report.search_fallbacks} search fallback(s), {report.timing:.1f}s"
    )
    return report


def _product_section(
    classes: Sequence[ClassHandle], field: FieldCtx, config: EngineConfig
) -> ProductSection:
    section = ProductSection()
    sizes = []
    for a in classes:
        for b in classes:
            try:
                decomposition = class_product_decomposition(a, b, config=config)
            except BudgetExceededError:
                section.skipped_pairs += 1
                continue
            section.pairs_checked += 1
            sizes.append(len(decomposition))
            if len(decomposition) == 1:
                section.single_class_products += 1
            if len(decomposition) >= field.order:
                section.products_with_at_least_q_classes += 1
    if sizes:
        section.min_classes, section.max_classes = min(sizes), max(sizes)
    return section


def class_product_survey(
    n: int, field: FieldCtx, group: Group, *, config: EngineConfig | None = None
) -> ProductSection:
    """Class-product decompositions of all ordered pairs of nonscalar classes."""
    cfg = config or DEFAULT_CONFIG
    classes = [c for c in enumerate_classes(n, field, group, config=cfg) if not c.is_scalar]
    return _product_section(classes, field, cfg)


def verify_gl2_irreducible_claim(
    field: FieldCtx, *, config: EngineConfig | None = None
) -> VerificationReport:
    """Oracle-only check that every pair of irreducible 2x2 classes has trace set K."""
    cfg = config or DEFAULT_CONFIG
    started = time.perf_counter()
    classes = [c for c in enumerate_classes(2, field, "GL", config=cfg) if closure_of(c).is_irreducible]
    report = VerificationReport(
        scope=Scope(n=2, q=field.order, group="GL"),
        claim="tr(Omega Psi) = K for irreducible classes of GL(2, q)",
        budget=cfg.orbit_budget,
        jobs=cfg.jobs,
        unproved_claim=True,
    )
    for a in classes:
        for b in classes:
            report.pairs_checked += 1
            traces = trace_set(a, b, early_exit=True, config=cfg)
            if traces.complete:
                report.full_trace_sets += 1
            else:
                report.failures.append(
                    _failure(a, b, f"trace set misses {[str(x) for x in traces.missing()]}")
                )
    report.timing = time.perf_counter() - started
    return report
