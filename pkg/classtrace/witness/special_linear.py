"""
Witnesses for conjugacy classes of SL(n, K).

An SL class is a det-one similarity class plus a label in K*/H, H the
centralizer determinant image. Every builder here tracks the determinant of
the conjugators it applies (the label of A^X is label(A) det X) and repairs
labels with diagonal conjugators that keep the block shapes it relies on.
"""

from __future__ import annotations

import itertools
import logging

import numpy as np

from ..config import DEFAULT_CONFIG, EngineConfig
from ..core.classes import ClassHandle, SimilarityClass, SLClass, as_group_class, class_of, minimal_rank
from ..core.field import FieldCtx, FieldElement
from ..core.linalg import (
    Matrix,
    block_matrix,
    companion,
    direct_sum,
    invariant_factors_from_divisors,
    similarity_transform,
)
from ..core.polynomials import poly_from_asc
from ..exceptions import (
    ConstructionFailedError,
    DimensionMismatchError,
    HypothesisViolatedError,
    InternalInconsistencyError,
    LinearAlgebraError,
    MrTooSmallError,
    ScalarClassError,
    WitnessError,
)
from .factorization import admissible_blocks, cyclic_class, embed_corner, split_product
from .models import Construction, WitnessPair, verify
from .normal_forms import interleave_form
from .similarity import steer_trace, similarity_witness
from .two_by_two import steer_2x2

logger = logging.getLogger(__name__)

MAX_BLOCK_ATTEMPTS = 64


def _require_sl(omega: ClassHandle, psi: ClassHandle) -> tuple[SLClass, SLClass]:
    om, ps = as_group_class(omega, "SL"), as_group_class(psi, "SL")
    assert isinstance(om, SLClass) and isinstance(ps, SLClass)
    for name, c in (("omega", om), ("psi", ps)):
        if c.is_scalar:
            raise ScalarClassError(f"{name} is scalar", details={name: c.to_text()})
    if om.n != ps.n or om.field != ps.field:
        raise DimensionMismatchError(
            "Classes must share size and field", details={"omega": om.n, "psi": ps.n}
        )
    return om, ps


def sl_label(a: Matrix, config: EngineConfig | None = None) -> FieldElement:
    c = class_of(a, "SL", config=config)
    assert isinstance(c, SLClass)
    return c.label


def _tail_scaling(field: FieldCtx, n: int, rho: FieldElement) -> Matrix:
    """diag(1, ..., 1, rho)."""
    return Matrix.diag(field, [field.one] * (n - 1) + [rho])


def _middle_scaling(field: FieldCtx, m: int, rho: FieldElement) -> Matrix:
    """diag(I_m, rho, I_m)."""
    return Matrix.diag(field, [field.one] * m + [rho] + [field.one] * m)


# ---------------------------------------------------------------- similarity route


def sl_from_similarity(
    omega: ClassHandle,
    psi: ClassHandle,
    tau: FieldElement,
    *,
    seed: int | None = None,
    config: EngineConfig | None = None,
) -> WitnessPair:
    """
    SL witness when at least one class is a whole similarity class.

    Builds the similarity witness and then conjugates both factors by
    diag(c, 1, ..., 1), which keeps the trace and moves the label of the split
    factor onto its target.

    Raises:
        HypothesisViolatedError: If both classes split.
    """
    cfg = config or DEFAULT_CONFIG
    om, ps = _require_sl(omega, psi)
    if not (om.is_similarity_class or ps.is_similarity_class):
        raise HypothesisViolatedError(
            "Label repair needs one unsplit class", details={"omega": om.to_text(), "psi": ps.to_text()}
        )
    pair = similarity_witness(om.closure, ps.closure, tau, seed=seed, config=cfg)
    construction = Construction(pair.w, pair.q, steps=list(pair.provenance))
    construction.conjugators.extend(pair.conjugators)
    field = om.field
    if not om.is_similarity_class:
        c = om.label / sl_label(pair.w, cfg)
    elif not ps.is_similarity_class:
        c = ps.label / sl_label(pair.q, cfg)
    else:
        c = field.one
    if c != field.one:
        repair = Matrix.diag(field, [c] + [field.one] * (om.n - 1))
        construction.conjugate_w("label repair", repair).conjugate_q("label repair", repair)
        construction.note(f"label repair by diag({c}, 1, ...)")
    return verify(construction, om, ps, tau, "SL", cfg)


# ---------------------------------------------------------------- cyclic classes


def _check_cyclic(om: SLClass, ps: SLClass) -> None:
    if not (om.is_cyclic and ps.is_cyclic):
        raise HypothesisViolatedError(
            "Both classes must be cyclic", details={"omega": om.to_text(), "psi": ps.to_text()}
        )


def _block_swap(field: FieldCtx, m: int) -> Matrix:
    eye, zero = Matrix.identity(field, m), Matrix.zeros(field, m, m)
    return block_matrix(field, [[zero, eye], [eye, zero]])


def _outer_reversal(field: FieldCtx, m: int) -> Matrix:
    eye, zero = Matrix.identity(field, m), Matrix.zeros(field, m, m)
    col, row = Matrix.zeros(field, m, 1), Matrix.zeros(field, 1, m)
    return block_matrix(
        field,
        [[zero, col, eye], [row, Matrix.identity(field, 1), row], [eye, col, zero]],
    )


def sl_cyclic_even(
    omega: ClassHandle,
    psi: ClassHandle,
    tau: FieldElement,
    *,
    seed: int | None = None,
    config: EngineConfig | None = None,
) -> WitnessPair:
    """
    Witness for cyclic classes of SL(2m, K), m >= 2 (m >= 3 when q <= 3).

    W = [[0, I], [C, D]] and Q = [[E, F], [I, 0]] give WQ = [[I, 0], [*, CF]].
    CF is normalized to lam + M, split as Z1 Z2 with tr Z1 = 0 and tr Z2 = tau,
    and W, Q are conjugated by I + X and I + Y^-1 with XY = Z1, which turns the
    product into [[Z1, 0], [*, X^-1 CF Y^-1]] of trace tr Z1 + tr Z2.

    Raises:
        HypothesisViolatedError: Outside the size, field or cyclicity hypotheses.
        ConstructionFailedError: If no normalizing block M worked.
    """
    cfg = config or DEFAULT_CONFIG
    run_seed = cfg.seed if seed is None else seed
    om, ps = _require_sl(omega, psi)
    _check_cyclic(om, ps)
    field = om.field
    n = om.n
    m = n // 2
    if n % 2 or m < 2 or (field.order <= 3 and m < 3):
        raise HypothesisViolatedError(
            "Even cyclic construction needs n = 2m, m >= 2, and m >= 3 when q <= 3",
            details={"n": n, "q": field.order},
        )

    w_form = interleave_form(om.representative(), seed=run_seed, config=cfg)
    q_form = interleave_form(ps.representative(), seed=run_seed, config=cfg)
    swap = _block_swap(field, m)
    w_base, q_base = om.representative(), ps.representative()
    w_conj = w_form.conjugator
    q_conj = q_form.conjugator @ swap
    w_int, q_int = w_base.conjugate(w_conj), q_base.conjugate(q_conj)
    c, f = w_int.block(m, n, 0, m), q_int.block(0, m, m, n)
    product_det = (c @ f).det()
    c_class, f_class = SimilarityClass.of_matrix(c), SimilarityClass.of_matrix(f)

    blocks = admissible_blocks(field, m - 1, product_det, seed=run_seed, config=cfg)
    for attempt, m_block in enumerate(itertools.islice(blocks, MAX_BLOCK_ATTEMPTS)):
        try:
            normal = split_product(c_class, f_class, m_block, seed=run_seed + attempt, config=cfg)
            r = similarity_transform(c, normal.w, seed=run_seed, config=cfg)
            s = similarity_transform(f, normal.q, seed=run_seed, config=cfg)
            w_det = w_conj.det() * r.det() * r.det()
            q_det = q_conj.det() * s.det() * s.det()
            delta_req, eps_req = w_det.inverse(), q_det.inverse()
            d1 = delta_req / eps_req
            z1_class = cyclic_class(field, m, field.zero, d1)
            z2_class = cyclic_class(field, m, tau, product_det / d1)
            factors = split_product(z1_class, z2_class, m_block, seed=run_seed + attempt, config=cfg)
        except (WitnessError, LinearAlgebraError) as e:
            logger.debug(f"Normalizing block {m_block.to_text_rows()} rejected: {e.message}")
            continue

        x = Matrix.diag(field, [delta_req] + [field.one] * (m - 1))
        y = x.inverse() @ factors.w
        eye = Matrix.identity(field, m)
        construction = Construction(w_base, q_base, steps=["interleaved forms", f"normalizing block attempt {attempt}"])
        construction.conjugate_w("interleave", w_conj).conjugate_q("interleave+swap", q_conj)
        construction.conjugate_w("normalize CF", direct_sum(field, r, r))
        construction.conjugate_q("normalize CF", direct_sum(field, s, s))
        construction.conjugate_w("factor X", direct_sum(field, eye, x))
        construction.conjugate_q("factor Y^-1", direct_sum(field, eye, y.inverse()))
        construction.note(f"CF = {normal.lam} + M, tr Z1 = 0, tr Z2 = {tau}")
        return verify(construction, om, ps, tau, "SL", cfg)
    raise ConstructionFailedError(
        "No normalizing block produced an even cyclic witness",
        details={"omega": om.to_text(), "psi": ps.to_text(), "tau": str(tau)},
    )


def sl_cyclic_odd(
    omega: ClassHandle,
    psi: ClassHandle,
    tau: FieldElement,
    *,
    seed: int | None = None,
    config: EngineConfig | None = None,
) -> WitnessPair:
    """
    Witness for cyclic classes of SL(2m + 1, K), m >= 2, q >= 4.

    W = [[0, 0, I], [0, beta, *], [C, *, *]] and the outer reversal of the
    same form for Psi give WQ = [[I, 0, 0], [*, beta gamma, 0], [*, *, CF]].
    After normalizing CF = X Z with tr X = 0, det X = 1 and tr Z = tau - beta gamma,
    conjugating W by I + X yields trace tr X + beta gamma + tr Z.

    Raises:
        HypothesisViolatedError: Outside the size, field or cyclicity hypotheses.
        ConstructionFailedError: If no normalizing block M worked.
    """
    cfg = config or DEFAULT_CONFIG
    run_seed = cfg.seed if seed is None else seed
    om, ps = _require_sl(omega, psi)
    _check_cyclic(om, ps)
    field = om.field
    n = om.n
    m = n // 2
    if n % 2 == 0 or m < 2 or field.order < 4:
        raise HypothesisViolatedError(
            "Odd cyclic construction needs n = 2m + 1, m >= 2 and q >= 4",
            details={"n": n, "q": field.order},
        )

    w_form = interleave_form(om.representative(), seed=run_seed, config=cfg)
    q_form = interleave_form(ps.representative(), seed=run_seed, config=cfg)
    reversal = _outer_reversal(field, m)
    w_base, q_base = om.representative(), ps.representative()
    w_conj = w_form.conjugator
    q_conj = q_form.conjugator @ reversal
    w_int, q_int = w_base.conjugate(w_conj), q_base.conjugate(q_conj)
    c, f = w_int.block(m + 1, n, 0, m), q_int.block(0, m, m + 1, n)
    beta, gamma = w_int[m, m], q_int[m, m]
    product_det = (c @ f).det()
    c_class, f_class = SimilarityClass.of_matrix(c), SimilarityClass.of_matrix(f)
    x_class = cyclic_class(field, m, field.zero, field.one)
    z_class = cyclic_class(field, m, tau - beta * gamma, product_det)

    blocks = admissible_blocks(field, m - 1, product_det, seed=run_seed, config=cfg)
    for attempt, m_block in enumerate(itertools.islice(blocks, MAX_BLOCK_ATTEMPTS)):
        try:
            normal = split_product(c_class, f_class, m_block, seed=run_seed + attempt, config=cfg)
            r = similarity_transform(c, normal.w, seed=run_seed, config=cfg)
            s = similarity_transform(f, normal.q, seed=run_seed, config=cfg)
            factors = split_product(x_class, z_class, m_block, seed=run_seed + attempt, config=cfg)
        except (WitnessError, LinearAlgebraError) as e:
            logger.debug(f"Normalizing block {m_block.to_text_rows()} rejected: {e.message}")
            continue

        one = Matrix.identity(field, 1)
        rho_w = (w_conj.det() * r.det() * r.det()).inverse()
        rho_q = (q_conj.det() * s.det() * s.det()).inverse()
        construction = Construction(w_base, q_base, steps=["odd interleaved forms", f"normalizing block attempt {attempt}"])
        construction.conjugate_w("interleave", w_conj).conjugate_q("interleave+reversal", q_conj)
        construction.conjugate_w("normalize CF", direct_sum(field, r, one, r))
        construction.conjugate_q("normalize CF", direct_sum(field, s, one, s))
        construction.conjugate_w("label", _middle_scaling(field, m, rho_w))
        construction.conjugate_q("label", _middle_scaling(field, m, rho_q))
        construction.conjugate_w("factor X", direct_sum(field, Matrix.identity(field, m + 1), factors.w))
        construction.note(f"beta*gamma = {beta * gamma}, tr Z = {tau - beta * gamma}")
        return verify(construction, om, ps, tau, "SL", cfg)
    raise ConstructionFailedError(
        "No normalizing block produced an odd cyclic witness",
        details={"omega": om.to_text(), "psi": ps.to_text(), "tau": str(tau)},
    )


# ---------------------------------------------------------------- small cases


def _upper_jordan(field: FieldCtx, lam: FieldElement, size: int) -> Matrix:
    data = np.zeros((size, size), dtype=np.int64)
    for i in range(size):
        data[i, i] = int(lam)
        if i + 1 < size:
            data[i, i + 1] = 1
    return Matrix.from_ints(field, data)


def sl3_witness(
    omega: ClassHandle,
    psi: ClassHandle,
    tau: FieldElement,
    *,
    seed: int | None = None,
    config: EngineConfig | None = None,
) -> WitnessPair:
    """
    Witness for nonscalar classes of SL(3, K).

    A split class of SL(3, K) has no irreducible elementary divisor, so it is
    J3(lam) with lam^3 = 1; W = [[A, b], [0, lam]] with A = J2(lam) and the
    trace of the product is tr(A^X A~) + lam mu.

    Raises:
        InternalInconsistencyError: If a split class has an irreducible elementary divisor.
    """
    cfg = config or DEFAULT_CONFIG
    om, ps = _require_sl(omega, psi)
    if om.n != 3:
        raise HypothesisViolatedError("sl3_witness needs n = 3", details={"n": om.n})
    if om.is_similarity_class or ps.is_similarity_class:
        return sl_from_similarity(om, ps, tau, seed=seed, config=cfg)

    field = om.field
    eigen = []
    for name, c in (("omega", om), ("psi", ps)):
        closure = c.closure
        roots = closure.eigenvalues()
        if closure.has_irreducible_elementary_divisor() or not closure.is_cyclic or len(roots) != 1:
            raise InternalInconsistencyError(
                "Split SL(3) class is not a single Jordan block",
                details={name: c.to_text(), "elementary_divisors": len(closure.elementary_divisors())},
            )
        eigen.append(roots[0])
    lam, mu = eigen

    w0, q0 = _upper_jordan(field, lam, 3), _upper_jordan(field, mu, 3)
    construction = Construction(w0, q0, steps=["Jordan block forms"])
    construction.conjugate_w("label", _tail_scaling(field, 3, om.label / sl_label(w0, cfg)))
    construction.conjugate_q("label", _tail_scaling(field, 3, ps.label / sl_label(q0, cfg)))
    a = construction.w.block(0, 2, 0, 2)
    a_tilde = construction.q.block(0, 2, 0, 2)
    x = steer_2x2(a, a_tilde, tau - lam * mu, config=cfg)
    construction.conjugate_w("steer", direct_sum(field, x, Matrix.from_rows(field, [[x.det().inverse()]])))
    construction.note(f"steered tr(A^X A~) to {tau - lam * mu}")
    return verify(construction, om, ps, tau, "SL", cfg)


def _sl43_form(c: SLClass) -> Matrix:
    """[[C_f, I], [0, C_f]] for minimal polynomial f^2, f irreducible; upper Jordan form otherwise."""
    field = c.field
    divisors = c.closure.elementary_divisors()
    if len(divisors) == 1 and divisors[0][0].degree == 2 and divisors[0][1] == 2:
        block = companion(field, divisors[0][0])
        eye = Matrix.identity(field, 2)
        return block_matrix(field, [[block, eye], [Matrix.zeros(field, 2, 2), block]])
    if all(f.degree == 1 for f, _ in divisors):
        jordan = []
        for f, e in divisors:
            lam = -field.element(int(f.coeffs[-1]))
            jordan.append(_upper_jordan(field, lam, e))
        return direct_sum(field, *jordan)
    raise InternalInconsistencyError(
        "Split SL(4, 3) class has an unexpected elementary divisor pattern",
        details={"class": c.to_text()},
    )


def _general_linear_2(field: FieldCtx) -> list[Matrix]:
    group = []
    for digits in itertools.product(range(field.order), repeat=4):
        x = Matrix.from_ints(field, np.array(digits, dtype=np.int64).reshape(2, 2))
        if not x.det().is_zero:
            group.append(x)
    return group


def sl43_witness(
    omega: ClassHandle,
    psi: ClassHandle,
    tau: FieldElement,
    *,
    seed: int | None = None,
    config: EngineConfig | None = None,
) -> WitnessPair:
    """
    Witness for nonscalar classes of SL(4, 3).

    Split classes are block upper triangular with 2x2 diagonal blocks, so
    tr(WQ) = tr(P1 Q1) + tr(P2 Q2); conjugating W by X + Y with det X det Y = 1
    moves each block trace independently.

    Raises:
        ConstructionFailedError: If no block pair reaches tau.
    """
    cfg = config or DEFAULT_CONFIG
    om, ps = _require_sl(omega, psi)
    field = om.field
    if om.n != 4 or field.order != 3:
        raise HypothesisViolatedError("sl43_witness needs SL(4, 3)", details={"n": om.n, "q": field.order})
    if om.is_similarity_class or ps.is_similarity_class:
        return sl_from_similarity(om, ps, tau, seed=seed, config=cfg)

    w0, q0 = _sl43_form(om), _sl43_form(ps)
    construction = Construction(w0, q0, steps=["block upper-triangular forms"])
    construction.conjugate_w("label", _tail_scaling(field, 4, om.label / sl_label(w0, cfg)))
    construction.conjugate_q("label", _tail_scaling(field, 4, ps.label / sl_label(q0, cfg)))
    w, q = construction.w, construction.q
    p1, p2 = w.block(0, 2, 0, 2), w.block(2, 4, 2, 4)
    q1, q2 = q.block(0, 2, 0, 2), q.block(2, 4, 2, 4)

    group = _general_linear_2(field)
    second: dict[tuple[int, int], Matrix] = {}
    for y in group:
        second.setdefault((y.det().value, (p2.conjugate(y) @ q2).trace().value), y)
    for x in group:
        t1 = (p1.conjugate(x) @ q1).trace()
        y = second.get((x.det().inverse().value, (tau - t1).value))
        if y is None:
            continue
        construction.conjugate_w("block steer", direct_sum(field, x, y))
        construction.note(f"block traces {t1} + {tau - t1}")
        return verify(construction, om, ps, tau, "SL", cfg)
    raise ConstructionFailedError(
        "No block conjugators reach the target trace",
        details={"omega": om.to_text(), "psi": ps.to_text(), "tau": str(tau)},
    )


# ---------------------------------------------------------------- general split case


def _repeated_divisor(c: SimilarityClass):
    """Smallest elementary divisor f^e whose base f occurs more than once."""
    divisors = c.elementary_divisors()
    bases: dict[int, int] = {}
    for f, _ in divisors:
        bases[int(f)] = bases.get(int(f), 0) + 1
    repeated = [(f, e) for f, e in divisors if bases[int(f)] > 1]
    if not repeated:
        raise HypothesisViolatedError("Class is cyclic", details={"class": c.to_text()})
    return min(repeated, key=lambda pair: (pair[0].degree * pair[1], int(pair[0]), pair[1]))


def simple_eigenvalue_corner(field: FieldCtx, r: int) -> Matrix:
    """companion(x^(r-1) (x - 1)): cyclic, with 1 a simple eigenvalue."""
    return companion(field, poly_from_asc(field, [field.zero] * (r - 1) + [-field.one, field.one]))


def corner_det_scaling(a: Matrix, c: FieldElement) -> Matrix:
    """
    I + (c - 1) A^(r-1) for A = simple_eigenvalue_corner(K, r).

    A^(r-1) is the rank-one idempotent onto the 1-eigenspace, so the result
    commutes with A and has determinant c.
    """
    field = a.field
    idempotent = Matrix.identity(field, a.rows)
    for _ in range(a.rows - 1):
        idempotent = idempotent @ a
    return Matrix.identity(field, a.rows) + idempotent.scale(c - field.one)


def sl_general_witness(
    omega: ClassHandle,
    psi: ClassHandle,
    tau: FieldElement,
    *,
    seed: int | None = None,
    config: EngineConfig | None = None,
) -> WitnessPair:
    """
    Witness for split classes of SL(n, K), n >= 4, one of them noncyclic.

    Psi = R + S with R = companion(f^e) of size 2 <= r <= n/2. The cyclic
    corner A = companion(x^(r-1) (x - 1)) is planted in W; its centralizer
    holds I + (c - 1) A^(r-1) of determinant c, so tr(A^Y R) can be steered
    inside SL(r, K).

    Raises:
        MrTooSmallError: If mr(W) < n/2.
    """
    cfg = config or DEFAULT_CONFIG
    run_seed = cfg.seed if seed is None else seed
    om, ps = _require_sl(omega, psi)
    if om.n < 4:
        raise HypothesisViolatedError("sl_general_witness needs n >= 4", details={"n": om.n})
    if om.is_similarity_class or ps.is_similarity_class:
        return sl_from_similarity(om, ps, tau, seed=seed, config=cfg)
    if om.is_cyclic and ps.is_cyclic:
        raise HypothesisViolatedError(
            "Both classes are cyclic", details={"omega": om.to_text(), "psi": ps.to_text()}
        )
    swapped = ps.is_cyclic
    big, small = (ps, om) if swapped else (om, ps)
    construction = _build_general(big, small, tau, seed=run_seed, config=cfg)
    if swapped:
        construction = construction.swapped().note("swapped factors")
    return verify(construction, om, ps, tau, "SL", cfg)


def _build_general(
    big: SLClass, small: SLClass, tau: FieldElement, *, seed: int, config: EngineConfig
) -> Construction:
    field = big.field
    n = big.n
    f, e = _repeated_divisor(small.closure)
    r_block = companion(field, f**e)
    r = r_block.rows
    remaining = list(small.closure.elementary_divisors())
    remaining.remove((f, e))
    rest = SimilarityClass(invariant_factors_from_divisors(field, remaining)).representative()
    q0 = direct_sum(field, r_block, rest)

    w0 = big.closure.representative()
    mr = minimal_rank(w0)
    if 2 * mr < n:
        raise MrTooSmallError(
            "Minimal rank of a split class is below n/2",
            details={"class": big.to_text(), "minimal_rank": mr, "n": n, "block": r},
        )
    a = simple_eigenvalue_corner(field, r)
    corner = embed_corner(w0, a, seed=seed, config=config)

    construction = Construction(w0, q0, steps=[f"split off companion(f^{e}) of size {r}"])
    construction.conjugate_w("plant companion(x^(r-1)(x-1))", corner)
    eye = Matrix.identity(field, r)
    rho_w = big.label / sl_label(construction.w, config)
    rho_q = small.label / sl_label(q0, config)
    construction.conjugate_w("label", direct_sum(field, eye, _tail_scaling(field, n - r, rho_w)))
    construction.conjugate_q("label", direct_sum(field, eye, _tail_scaling(field, n - r, rho_q)))

    d = construction.w.block(r, n, r, n)
    s = construction.q.block(r, n, r, n)
    t = tau - (d @ s).trace()
    y = steer_trace(a, r_block, t, seed=seed, config=config)
    x = corner_det_scaling(a, y.det().inverse()) @ y
    construction.conjugate_w("steer", direct_sum(field, x, Matrix.identity(field, n - r)))
    return construction.note(f"steered tr(A^X R) to {t}")
