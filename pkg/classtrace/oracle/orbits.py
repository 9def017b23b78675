"""
Brute-force conjugation orbits, trace sets and class-product decompositions.

Orbits are generated breadth first from a generating set of the acting group:
the transvections I + a E_ij with a running over an additive basis of K
generate SL(n, K), and diag(omega, 1, ..., 1) with omega primitive extends
them to GL(n, K). Matrices are deduplicated by their canonical byte key.
"""

from __future__ import annotations

import logging
from collections import deque
from functools import lru_cache
from typing import Callable, Iterator, Literal

import numpy as np

from ..config import DEFAULT_CONFIG, EngineConfig
from ..core.classes import ClassHandle, Group, SLClass, TraceSet, class_of
from ..core.field import FieldCtx
from ..core.linalg import Matrix
from ..exceptions import BudgetExceededError

logger = logging.getLogger(__name__)

ActingGroup = Literal["GL", "SL"]


def acting_group(c: ClassHandle) -> ActingGroup:
    """SL classes are orbits under SL(n, K); similarity classes under GL(n, K)."""
    return "SL" if isinstance(c, SLClass) else "GL"


def group_generators(field: FieldCtx, n: int, group: ActingGroup) -> list[tuple[Matrix, Matrix]]:
    """(X, X^-1) pairs generating the acting group."""
    basis = [field.one] + [field.generator**j for j in range(1, field.k)]
    pairs: list[tuple[Matrix, Matrix]] = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for a in basis:
                forward = np.eye(n, dtype=np.int64)
                backward = np.eye(n, dtype=np.int64)
                forward[i, j] = a.value
                backward[i, j] = (-a).value
                pairs.append((Matrix.from_ints(field, forward), Matrix.from_ints(field, backward)))
    if group == "GL" and field.order > 2:
        omega = field.primitive
        scaling = Matrix.diag(field, [omega] + [field.one] * (n - 1))
        pairs.append((scaling, Matrix.diag(field, [omega.inverse()] + [field.one] * (n - 1))))
    return pairs


def orbit(
    rep: Matrix, group: ActingGroup = "GL", *, config: EngineConfig | None = None
) -> Iterator[Matrix]:
    """
    Every conjugate X^-1 rep X for X in the acting group, each exactly once.

    Raises:
        BudgetExceededError: As soon as more than orbit_budget matrices are seen.
    """
    cfg = config or DEFAULT_CONFIG
    field = rep.field
    n = rep.rows
    gens = [(x.array, x_inv.array) for x, x_inv in group_generators(field, n, group)]
    seen = {rep.key()}
    queue = deque([rep.array])
    yield rep
    while queue:
        current = queue.popleft()
        for x, x_inv in gens:
            image = x_inv @ current @ x
            key = np.asarray(image.view(np.ndarray), dtype=np.uint16).tobytes()
            if key in seen:
                continue
            seen.add(key)
            if len(seen) > cfg.orbit_budget:
                raise BudgetExceededError(
                    "Orbit exceeds the configured budget",
                    details={"n": n, "q": field.order, "group": group, "budget": cfg.orbit_budget},
                )
            queue.append(image)
            yield Matrix(field, image)
    logger.debug(f"Orbit of size {len(seen)} under {group}({n}, {field.order})")


def orbit_size(rep: Matrix, group: ActingGroup = "GL", *, config: EngineConfig | None = None) -> int:
    return sum(1 for _ in orbit(rep, group, config=config))


def group_order(field: FieldCtx, n: int, group: ActingGroup) -> int:
    """|GL(n, q)| or |SL(n, q)|."""
    q = field.order
    order = 1
    for i in range(n):
        order *= q**n - q**i
    return order if group == "GL" else order // (q - 1)


def _trace_against(fixed: Matrix) -> Callable[[Matrix], int]:
    fixed_t = fixed.array.T.copy()

    def trace_of(a: Matrix) -> int:
        return int(np.add.reduce((a.array * fixed_t).reshape(-1)))

    return trace_of


def trace_set(
    omega: ClassHandle,
    psi: ClassHandle,
    *,
    early_exit: bool = True,
    config: EngineConfig | None = None,
) -> TraceSet:
    """
    {tr(w q) : w in Omega, q in Psi}, computed with q fixed to the representative of Psi.

    Raises:
        BudgetExceededError: If the orbit of Omega exceeds the budget.
    """
    cfg = config or DEFAULT_CONFIG
    field = omega.field
    trace_of = _trace_against(psi.representative())
    found: set[int] = set()
    stopped = False
    for w in orbit(omega.representative(), acting_group(omega), config=cfg):
        found.add(trace_of(w))
        if early_exit and len(found) == field.order:
            stopped = True
            break
    return TraceSet(field, frozenset(found), early_exit=stopped)


def trace_set_double(
    omega: ClassHandle, psi: ClassHandle, *, config: EngineConfig | None = None
) -> TraceSet:
    """Trace set by enumerating both orbits; the slow reference for trace_set."""
    cfg = config or DEFAULT_CONFIG
    field = omega.field
    omegas = list(orbit(omega.representative(), acting_group(omega), config=cfg))
    found: set[int] = set()
    for q in orbit(psi.representative(), acting_group(psi), config=cfg):
        for w in omegas:
            found.add((w @ q).trace().value)
    return TraceSet(field, frozenset(found))


def product_group(omega: ClassHandle, psi: ClassHandle) -> Group:
    return "SL" if isinstance(omega, SLClass) or isinstance(psi, SLClass) else "M"


def class_product_decomposition(
    omega: ClassHandle, psi: ClassHandle, *, config: EngineConfig | None = None
) -> list[ClassHandle]:
    """
    Classes met by {w q : w in Omega, q in Psi}, sorted by class text.

    Raises:
        BudgetExceededError: If the orbit of Omega exceeds the budget.
    """
    return list(_decomposition(omega, psi, config or DEFAULT_CONFIG))


@lru_cache(maxsize=4096)
def _decomposition(
    omega: ClassHandle, psi: ClassHandle, config: EngineConfig
) -> tuple[ClassHandle, ...]:
    group = product_group(omega, psi)
    fixed = psi.representative()
    found: dict[str, ClassHandle] = {}
    for w in orbit(omega.representative(), acting_group(omega), config=config):
        c = class_of(w @ fixed, group, config=config)
        found.setdefault(c.to_text(), c)
    logger.debug(f"{omega} * {psi}: {len(found)} classes")
    return tuple(found[text] for text in sorted(found))
