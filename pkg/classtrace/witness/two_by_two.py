"""
Witnesses for pairs of 2x2 classes.

Omega must have an eigenvalue alpha in K. With lambda the other eigenvalue
and Psi in companion form [[0, 1], [-det, tr]]:

    [[alpha, 0], [mu, lambda]] . [[0, 1], [-det, tr]]   has trace mu + lambda*tr

which reaches every tau when alpha != lambda. When Omega is primary,
W = [[alpha, 1], [0, alpha]] and Q = [[tr - eps, rho], [nu, eps]] give trace
alpha*tr + nu; nu = 0 needs Psi triangular, so an irreducible Psi misses
exactly alpha*tr(Psi).
"""

from __future__ import annotations

import logging

from ..config import EngineConfig
from ..core.classes import ClassHandle, SimilarityClass, closure_of
from ..core.field import FieldElement
from ..core.linalg import Matrix, similarity_transform
from ..exceptions import (
    HypothesisViolatedError,
    IrreducibleOmegaError,
    ScalarClassError,
    TraceExcludedError,
)
from .models import Construction, TraceDichotomy, WitnessPair, verify

logger = logging.getLogger(__name__)


def _check_pair(omega: SimilarityClass, psi: SimilarityClass) -> None:
    if omega.n != 2 or psi.n != 2:
        raise HypothesisViolatedError(
            "2x2 construction needs 2x2 classes", details={"omega": omega.n, "psi": psi.n}
        )
    for name, c in (("omega", omega), ("psi", psi)):
        if c.is_scalar:
            raise ScalarClassError(f"{name} is scalar", details={name: c.to_text()})


def _root(omega: SimilarityClass) -> FieldElement:
    roots = omega.eigenvalues()
    if not roots:
        raise IrreducibleOmegaError(
            "Omega has no eigenvalue in the field", details={"omega": omega.to_text()}
        )
    return roots[0]


def trace_dichotomy_2x2(omega: ClassHandle, psi: ClassHandle) -> TraceDichotomy:
    """Full trace set unless Omega is primary and Psi irreducible; then alpha*tr(Psi) is missed."""
    om, ps = closure_of(omega), closure_of(psi)
    _check_pair(om, ps)
    alpha = _root(om)
    if not om.is_primary or not ps.is_irreducible:
        return TraceDichotomy(full=True)
    return TraceDichotomy(full=False, excluded=alpha * ps.trace)


def build_2x2(omega: SimilarityClass, psi: SimilarityClass, tau: FieldElement) -> Construction:
    """Unverified 2x2 construction; see witness_2x2."""
    _check_pair(omega, psi)
    field = omega.field
    alpha = _root(omega)
    lam = omega.trace - alpha
    tr_psi, det_psi = psi.trace, psi.det

    if alpha != lam:
        mu = tau - lam * tr_psi
        w = Matrix.from_rows(field, [[alpha, field.zero], [mu, lam]])
        q = Matrix.from_rows(field, [[field.zero, field.one], [-det_psi, tr_psi]])
        return Construction(w, q, steps=[f"2x2 lower-triangular template mu={mu}"])

    w = Matrix.from_rows(field, [[alpha, field.one], [field.zero, alpha]])
    nu = tau - alpha * tr_psi
    if not nu.is_zero:
        rho = -det_psi / nu
        q = Matrix.from_rows(field, [[tr_psi, rho], [nu, field.zero]])
        return Construction(w, q, steps=[f"2x2 primary template nu={nu} rho={rho}"])

    psi_roots = psi.eigenvalues()
    if not psi_roots:
        raise TraceExcludedError(
            "Trace is excluded for a primary Omega and an irreducible Psi",
            excluded=alpha * tr_psi,
            details={"omega": omega.to_text(), "psi": psi.to_text(), "tau": str(tau)},
        )
    eps = psi_roots[0]
    q = Matrix.from_rows(field, [[tr_psi - eps, field.one], [field.zero, eps]])
    return Construction(w, q, steps=[f"2x2 primary template nu=0 eps={eps}"])


def witness_2x2(
    omega: ClassHandle,
    psi: ClassHandle,
    tau: FieldElement,
    *,
    seed: int | None = None,
    config: EngineConfig | None = None,
) -> WitnessPair:
    """
    Verified (W, Q) in Omega x Psi with tr(WQ) = tau for 2x2 similarity classes.

    Raises:
        ScalarClassError: If either class is scalar.
        IrreducibleOmegaError: If Omega has no eigenvalue in K.
        TraceExcludedError: If Omega is primary, Psi irreducible and tau = alpha*tr(Psi).
    """
    om, ps = closure_of(omega), closure_of(psi)
    construction = build_2x2(om, ps, tau)
    logger.debug(f"witness_2x2 {om} | {ps} tau={tau}: {construction.steps[-1]}")
    return verify(construction, om, ps, tau, "M", config)


def steer_2x2(
    a: Matrix, r: Matrix, t: FieldElement, *, config: EngineConfig | None = None
) -> Matrix:
    """
    X in GL(2, K) with tr(A^X R) = t.

    Uses the 2x2 templates in whichever order has an eigenvalue in K, then
    converts the pair (A', R') into one conjugator X = Y1 Y2^-1 where
    A' = A^Y1 and R' = R^Y2.
    """
    ca, cr = SimilarityClass.of_matrix(a), SimilarityClass.of_matrix(r)
    try:
        built = build_2x2(ca, cr, t)
        a_img, r_img = built.w, built.q
    except IrreducibleOmegaError:
        built = build_2x2(cr, ca, t)
        a_img, r_img = built.q, built.w
    y1 = similarity_transform(a, a_img, config=config)
    y2 = similarity_transform(r, r_img, config=config)
    return y1 @ y2.inverse()
