"""
Route a witness request to the construction whose hypotheses it meets.

Any ConstructionFailedError from a primary construction falls back to a
seeded conjugation search; the resulting pair is flagged with
search_fallback in its provenance. TraceExcludedError is never retried.
"""

from __future__ import annotations

import logging

from ..config import DEFAULT_CONFIG, EngineConfig
from ..core.classes import ClassHandle, Group, SLClass, as_group_class, closure_of
from ..core.field import FieldElement
from ..exceptions import (
    ConstructionFailedError,
    DimensionMismatchError,
    HypothesisViolatedError,
    MixedFieldsError,
    ScalarClassError,
    UnsupportedCaseError,
)
from ..protocols import WitnessBuilderProtocol
from .models import Construction, WitnessPair, verify
from .similarity import conjugation_search, similarity_witness
from .special_linear import (
    sl3_witness,
    sl43_witness,
    sl_cyclic_even,
    sl_cyclic_odd,
    sl_from_similarity,
    sl_general_witness,
)
from .two_by_two import build_2x2, witness_2x2

logger = logging.getLogger(__name__)


def route_name(omega: ClassHandle, psi: ClassHandle, group: Group) -> str:
    """Name of the construction witness() tries first."""
    om, ps = closure_of(omega), closure_of(psi)
    field = om.field
    n = om.n
    if n == 2:
        if group == "SL":
            return "unsupported"
        if om.eigenvalues():
            return "2x2"
        return "2x2 swapped" if ps.eigenvalues() else "search"
    if group != "SL":
        return "similarity"
    unsplit = any(
        isinstance(c, SLClass) and c.is_similarity_class
        for c in (as_group_class(omega, "SL"), as_group_class(psi, "SL"))
    )
    if field.order == 2 or unsplit:
        return "similarity with label repair"
    if om.is_cyclic and ps.is_cyclic:
        m = n // 2
        if n % 2 == 0 and m >= 2 and (field.order > 3 or m >= 3):
            return "cyclic even"
        if n % 2 == 1 and m >= 2 and field.order >= 4:
            return "cyclic odd"
    if n == 3:
        return "sl3"
    if n == 4 and field.order == 3:
        return "sl43"
    return "sl general"


def _check_request(om: ClassHandle, ps: ClassHandle, tau: FieldElement, group: Group) -> None:
    if om.field != ps.field or tau.owner != om.field:
        raise MixedFieldsError(
            "Classes and trace must share one field",
            details={"omega": repr(om.field), "psi": repr(ps.field), "tau": repr(tau.owner)},
        )
    if om.n != ps.n:
        raise DimensionMismatchError("Classes have different sizes", details={"omega": om.n, "psi": ps.n})
    for name, c in (("omega", om), ("psi", ps)):
        if c.is_scalar:
            raise ScalarClassError(f"{name} is scalar", details={name: c.to_text()})
        if group == "GL" and not closure_of(c).is_nonsingular:
            raise HypothesisViolatedError(f"{name} is singular; GL classes are nonsingular", details={name: c.to_text()})


def witness(
    omega: ClassHandle,
    psi: ClassHandle,
    tau: FieldElement,
    group: Group = "M",
    *,
    seed: int | None = None,
    config: EngineConfig | None = None,
) -> WitnessPair:
    """
    Verified (W, Q) in Omega x Psi with tr(WQ) = tau.

    Args:
        omega: Class of W; coerced to an SL class when group is SL.
        psi: Class of Q.
        tau: Target trace.
        group: "M", "GL" or "SL".
        seed: Seed for every search step; defaults to the configured seed.
        config: Engine bounds.

    Raises:
        ScalarClassError: If either class is scalar.
        TraceExcludedError: For 2x2 pairs outside the trace set.
        UnsupportedCaseError: For 2x2 SL requests.
        ConstructionFailedError: If the primary construction and the search both fail.
    """
    cfg = config or DEFAULT_CONFIG
    run_seed = cfg.seed if seed is None else seed
    om, ps = as_group_class(omega, group), as_group_class(psi, group)
    _check_request(om, ps, tau, group)
    route = route_name(om, ps, group)
    logger.debug(f"witness {group}({om.n}, {om.field.order}) {om} | {ps} tau={tau}: route {route}")

    try:
        return _dispatch(route, om, ps, tau, group, seed=run_seed, config=cfg)
    except ConstructionFailedError as e:
        logger.warning(f"Route '{route}' failed ({e.message}); falling back to conjugation search")
    construction = conjugation_search(
        om.representative(), ps.representative(), tau, special=group == "SL", seed=run_seed, config=cfg
    )
    construction.note(f"primary route '{route}' failed")
    return verify(construction, om, ps, tau, group, cfg)


def _dispatch(
    route: str,
    om: ClassHandle,
    ps: ClassHandle,
    tau: FieldElement,
    group: Group,
    *,
    seed: int,
    config: EngineConfig,
) -> WitnessPair:
    if route == "unsupported":
        raise UnsupportedCaseError(
            "2x2 special linear classes are outside every construction",
            details={"omega": om.to_text(), "psi": ps.to_text()},
        )
    if route == "2x2":
        pair = witness_2x2(om, ps, tau, seed=seed, config=config)
        return verify(_rebuild(pair), om, ps, tau, group, config)
    if route == "2x2 swapped":
        built = build_2x2(closure_of(ps), closure_of(om), tau).swapped().note("swapped factors")
        return verify(built, om, ps, tau, group, config)
    if route == "search":
        raise ConstructionFailedError(
            "Both 2x2 classes are irreducible; no template applies",
            details={"omega": om.to_text(), "psi": ps.to_text()},
        )
    if route == "similarity":
        return similarity_witness(om, ps, tau, seed=seed, config=config)

    builders: dict[str, WitnessBuilderProtocol] = {
        "similarity with label repair": sl_from_similarity,
        "cyclic even": sl_cyclic_even,
        "cyclic odd": sl_cyclic_odd,
        "sl3": sl3_witness,
        "sl43": sl43_witness,
        "sl general": sl_general_witness,
    }
    result: WitnessPair = builders[route](om, ps, tau, seed=seed, config=config)
    return result


def _rebuild(pair: WitnessPair) -> Construction:
    construction = Construction(pair.w, pair.q, steps=list(pair.provenance))
    construction.conjugators.extend(pair.conjugators)
    return construction

