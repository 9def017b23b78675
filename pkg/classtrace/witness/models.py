"""Result types for witness constructions and their verification."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List

from ..config import EngineConfig
from ..core.classes import ClassHandle, Group, SLClass, class_of
from ..core.field import FieldElement
from ..core.linalg import Matrix
from ..exceptions import ClassTraceError, ConstructionFailedError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TraceDichotomy:
    """Whether a 2x2 class pair realizes every trace, and the one it misses otherwise."""

    full: bool
    excluded: FieldElement | None = None

    def to_dict(self) -> Dict[str, Any]:
        return {"full": self.full, "excluded": None if self.excluded is None else str(self.excluded)}


@dataclass
class Construction:
    """Unverified (W, Q) together with the audit trail that produced it."""

    w: Matrix
    q: Matrix
    steps: List[str] = field(default_factory=list)
    conjugators: List[tuple[str, Matrix]] = field(default_factory=list)
    search: bool = False

    def note(self, step: str) -> Construction:
        self.steps.append(step)
        return self

    def conjugate_w(self, name: str, x: Matrix) -> Construction:
        self.w = self.w.conjugate(x)
        self.conjugators.append((name, x))
        return self

    def conjugate_q(self, name: str, x: Matrix) -> Construction:
        self.q = self.q.conjugate(x)
        self.conjugators.append((name, x))
        return self

    def swapped(self) -> Construction:
        return Construction(self.q, self.w, list(self.steps), list(self.conjugators), self.search)


@dataclass(frozen=True)
class WitnessPair:
    """Verified (W, Q) with W in omega, Q in psi and tr(WQ) = tau."""

    w: Matrix
    q: Matrix
    tau: FieldElement
    omega: ClassHandle
    psi: ClassHandle
    group: Group
    provenance: tuple[str, ...]
    conjugators: tuple[tuple[str, Matrix], ...] = ()
    search: bool = False

    @property
    def product(self) -> Matrix:
        return self.w @ self.q

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.group,
            "field": self.w.field.to_dict(),
            "n": self.w.rows,
            "omega": _class_entry(self.omega),
            "psi": _class_entry(self.psi),
            "tau": str(self.tau),
            "W": self.w.to_text_rows(),
            "Q": self.q.to_text_rows(),
            "product": self.product.to_text_rows(),
            "provenance": {
                "steps": list(self.provenance),
                "search_fallback": self.search,
                "conjugators": [
                    {"name": name, "rows": x.to_text_rows()} for name, x in self.conjugators
                ],
            },
        }


def _class_entry(c: ClassHandle) -> Dict[str, Any]:
    entry: Dict[str, Any] = {"text": c.to_text()}
    if isinstance(c, SLClass):
        entry["label"] = str(c.label)
    return entry


def in_class(a: Matrix, c: ClassHandle, group: Group, config: EngineConfig | None = None) -> bool:
    """Membership by invariant factors, plus the SL label when group is SL."""
    if group == "SL" and a.det() != a.field.one:
        return False
    try:
        return class_of(a, "SL" if group == "SL" else "M", config=config) == c
    except ClassTraceError as e:
        logger.debug(f"Class membership check failed: {e}")
        return False


def verify(
    construction: Construction,
    omega: ClassHandle,
    psi: ClassHandle,
    tau: FieldElement,
    group: Group,
    config: EngineConfig | None = None,
) -> WitnessPair:
    """
    Turn a construction into a WitnessPair after checking every postcondition.

    Raises:
        ConstructionFailedError: If W or Q lies outside its class or the trace is wrong.
    """
    w, q = construction.w, construction.q
    problems = []
    if not in_class(w, omega, group, config):
        problems.append("W not in omega")
    if not in_class(q, psi, group, config):
        problems.append("Q not in psi")
    trace = (w @ q).trace()
    if trace != tau:
        problems.append(f"trace {trace} != {tau}")
    if problems:
        raise ConstructionFailedError(
            "Constructed pair failed verification",
            details={
                "problems": problems,
                "steps": construction.steps,
                "omega": omega.to_text(),
                "psi": psi.to_text(),
                "tau": str(tau),
            },
        )
    return WitnessPair(
        w=w,
        q=q,
        tau=tau,
        omega=omega,
        psi=psi,
        group=group,
        provenance=tuple(construction.steps),
        conjugators=tuple(construction.conjugators),
        search=construction.search,
    )
