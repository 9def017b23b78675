"""
Witnesses for similarity classes of M(n, K), n >= 3.

With r = deg of the minimal polynomial of Psi at most that of Omega, take

    W0 = companion(mu_Omega) + rest        Q0 = R + S,  R = companion(mu_Psi)

and let A be the top-left r x r block of W0. Conjugating W0 by X + I only moves
A, and tr(W Q0) = tr(A^X R) + tr(D S) with D the lower-right block of W0, so
the whole problem reduces to steering tr(A^X R) inside GL(r, K).
"""

from __future__ import annotations

import logging
from typing import Iterator

import numpy as np

from ..config import DEFAULT_CONFIG, EngineConfig
from ..core.classes import ClassHandle, SimilarityClass, closure_of, minimal_rank
from ..core.field import FieldElement
from ..core.linalg import (
    Matrix,
    companion,
    direct_sum,
    is_cyclic,
    random_invertible,
    similarity_transform,
)
from ..exceptions import (
    ConstructionFailedError,
    HypothesisViolatedError,
    IrreducibleOmegaError,
    ScalarClassError,
    TraceExcludedError,
    WitnessError,
)
from .factorization import block_factor, embed_corner
from .models import Construction, WitnessPair, verify
from .two_by_two import steer_2x2

logger = logging.getLogger(__name__)

CORNER_RANDOM_TRIES = 256


def minpoly_first_representative(c: SimilarityClass) -> Matrix:
    """companion(minpoly) followed by the companions of the other invariant factors."""
    chain = c.chain
    parts = [companion(c.field, chain[-1])] + [companion(c.field, f) for f in chain[:-1]]
    return direct_sum(c.field, *parts)


def steer_trace(
    a: Matrix,
    r: Matrix,
    t: FieldElement,
    *,
    seed: int | None = None,
    config: EngineConfig | None = None,
) -> Matrix:
    """
    X in GL(k, K) with tr(A^X R) = t, for k x k matrices A and R.

    k = 2 uses the 2x2 templates. For k >= 3 with A and R cyclic the block
    factorization with D = [[1, 1], [e - 1, e]] + I gives A' R' of trace
    delta + 1 + e + (k - 3); otherwise the similarity witness of the two
    classes is used. Either way X = Y Z^-1 with A' = A^Y, R' = R^Z.

    Raises:
        ScalarClassError: If A or R is scalar.
        TraceExcludedError: If k = 2 and t is the excluded trace.
    """
    cfg = config or DEFAULT_CONFIG
    k = a.rows
    field = a.field
    if k == 1:
        if (a @ r).trace() != t:
            raise TraceExcludedError(
                "1x1 blocks have a fixed trace", excluded=(a @ r).trace(), details={"t": str(t)}
            )
        return Matrix.identity(field, 1)
    if k == 2:
        return steer_2x2(a, r, t, config=cfg)

    if is_cyclic(a) and is_cyclic(r):
        ca, cr = SimilarityClass.of_matrix(a), SimilarityClass.of_matrix(r)
        delta = ca.det * cr.det
        e = t - delta - field.from_int(k - 3) - field.one
        d = direct_sum(
            field,
            Matrix.from_rows(field, [[field.one, field.one], [e - field.one, e]]),
            Matrix.identity(field, k - 3),
        )
        factored = block_factor(ca, cr, d, seed=seed, config=cfg)
        a_img, r_img = factored.w, factored.q
    else:
        pair = similarity_witness(
            SimilarityClass.of_matrix(a), SimilarityClass.of_matrix(r), t, seed=seed, config=cfg
        )
        a_img, r_img = pair.w, pair.q
    y = similarity_transform(a, a_img, seed=seed, config=cfg)
    z = similarity_transform(r, r_img, seed=seed, config=cfg)
    return y @ z.inverse()


def _corner_candidates(
    w0: Matrix, r: int, *, seed: int, config: EngineConfig
) -> Iterator[tuple[str, Matrix]]:
    """Conjugators T whose W0^T corner is tried in turn: identity, planted diag(0, 1), random."""
    field = w0.field
    n = w0.rows
    yield "identity corner", Matrix.identity(field, n)
    if r == 2 and n >= 4 and not w0.det().is_zero and minimal_rank(w0) >= 2:
        target = Matrix.diag(field, [field.zero, field.one])
        try:
            yield "planted diag(0,1) corner", embed_corner(w0, target, seed=seed, config=config)
        except WitnessError as e:
            logger.debug(f"Corner planting skipped: {e}")
    rng = np.random.default_rng(seed)
    for _ in range(CORNER_RANDOM_TRIES):
        yield "random corner", random_invertible(field, n, rng)


def similarity_witness(
    omega: ClassHandle,
    psi: ClassHandle,
    tau: FieldElement,
    *,
    seed: int | None = None,
    config: EngineConfig | None = None,
) -> WitnessPair:
    """
    Verified (W, Q) in Omega x Psi with tr(WQ) = tau for nonscalar similarity classes, n >= 3.

    Raises:
        ScalarClassError: If either class is scalar.
        ConstructionFailedError: If no corner could be steered.
    """
    cfg = config or DEFAULT_CONFIG
    run_seed = cfg.seed if seed is None else seed
    om, ps = closure_of(omega), closure_of(psi)
    for name, c in (("omega", om), ("psi", ps)):
        if c.is_scalar:
            raise ScalarClassError(f"{name} is scalar", details={name: c.to_text()})
    if om.n != ps.n or om.n < 3:
        raise HypothesisViolatedError(
            "Similarity witness needs equal sizes n >= 3", details={"omega": om.n, "psi": ps.n}
        )

    swapped = ps.minpoly.degree > om.minpoly.degree
    big, small = (ps, om) if swapped else (om, ps)
    construction = _build_similarity(big, small, tau, seed=run_seed, config=cfg)
    if swapped:
        construction = construction.swapped().note("swapped factors")
    return verify(construction, om, ps, tau, "M", cfg)


def _build_similarity(
    big: SimilarityClass,
    small: SimilarityClass,
    tau: FieldElement,
    *,
    seed: int,
    config: EngineConfig,
) -> Construction:
    field = big.field
    n = big.n
    r = small.minpoly.degree
    w0 = minpoly_first_representative(big)
    q0 = minpoly_first_representative(small)
    r_block = q0.block(0, r, 0, r)
    s_block = q0.block(r, n, r, n)
    rest = Matrix.identity(field, n - r)

    for label, corner in _corner_candidates(w0, r, seed=seed, config=config):
        w_start = w0.conjugate(corner)
        a = w_start.block(0, r, 0, r)
        d = w_start.block(r, n, r, n)
        t = tau - (d @ s_block).trace()
        try:
            x = steer_trace(a, r_block, t, seed=seed, config=config)
        except (TraceExcludedError, ScalarClassError, IrreducibleOmegaError) as e:
            logger.debug(f"{label} rejected: {e.message}")
            continue
        construction = Construction(w0, q0, steps=[f"minimal polynomial degrees r={r}", label])
        construction.conjugate_w("corner", corner)
        construction.conjugate_w("steer", direct_sum(field, x, rest))
        return construction.note(f"steered tr(A^X R) to {t}")
    raise ConstructionFailedError(
        "No corner block could be steered to the target trace",
        details={"omega": big.to_text(), "psi": small.to_text(), "tau": str(tau)},
    )


def conjugation_search(
    omega_rep: Matrix,
    psi_rep: Matrix,
    tau: FieldElement,
    *,
    special: bool,
    seed: int,
    config: EngineConfig,
) -> Construction:
    """
    Search conjugates W = omega_rep^X with tr(W psi_rep) = tau.

    Exhaustive over all n x n matrices when q^(n^2) is within the search bound,
    else seeded random draws. special keeps det X = 1 by rescaling the first row.

    Raises:
        ConstructionFailedError: If the bound is exhausted.
    """
    field = omega_rep.field
    n = omega_rep.rows

    def attempt(x: Matrix) -> Construction | None:
        det = x.det()
        if det.is_zero:
            return None
        if special and det != field.one:
            x = Matrix.diag(field, [det.inverse()] + [field.one] * (n - 1)) @ x
        if (omega_rep.conjugate(x) @ psi_rep).trace() != tau:
            return None
        found = Construction(omega_rep, psi_rep, steps=["conjugation search"], search=True)
        return found.conjugate_w("search", x)

    total = field.order ** (n * n)
    if total <= config.search_bound:
        for index in range(total):
            digits = [(index // field.order**j) % field.order for j in range(n * n)]
            found = attempt(Matrix.from_ints(field, np.array(digits, dtype=np.int64).reshape(n, n)))
            if found is not None:
                return found
    else:
        rng = np.random.default_rng(seed)
        for _ in range(config.search_bound):
            found = attempt(Matrix.from_ints(field, rng.integers(0, field.order, size=(n, n))))
            if found is not None:
                return found
    raise ConstructionFailedError(
        "Conjugation search exhausted",
        details={"n": n, "q": field.order, "tau": str(tau), "search_bound": config.search_bound},
    )

