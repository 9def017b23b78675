"""
Block factorizations of products of cyclic classes, and corner embeddings.

block_factor writes a prescribed block upper-triangular matrix
[[delta, z], [0, D]] as a product W Q with W, Q in given cyclic classes:

    W = [[y, beta], [L, 0]]     Q = [[0, U], [gamma, x]]     D = L U

The characteristic polynomial of W is affine in the free row y (and that of Q
in x), so both rows come from one linear solve each; both matrices are cyclic
because L and U are triangular with nonzero diagonal.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..config import DEFAULT_CONFIG, EngineConfig
from ..core.classes import ClassHandle, SimilarityClass, closure_of, minimal_rank
from ..core.field import FieldCtx, FieldElement
from ..core.linalg import (
    Matrix,
    block_matrix,
    charpoly,
    invariant_factors,
    leading_minors,
    lu_decompose,
    solve_linear,
)
from ..core.polynomials import poly_asc, poly_from_asc
from ..exceptions import (
    ConstructionFailedError,
    DimensionMismatchError,
    EmbedSearchFailedError,
    HypothesisViolatedError,
    PreconditionViolatedError,
    SingularMatrixError,
    SolveFailedError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlockFactorization:
    """W Q = [[delta, z], [0, D]]."""

    w: Matrix
    q: Matrix
    z: Matrix
    delta: FieldElement

    @property
    def product(self) -> Matrix:
        return self.w @ self.q


def cyclic_class(
    field: FieldCtx, m: int, trace: FieldElement, det: FieldElement
) -> SimilarityClass:
    """Cyclic class with charpoly x^m - trace x^(m-1) + (-1)^m det, middle coefficients zero."""
    if m < 2:
        raise HypothesisViolatedError("Prescribed trace and determinant need m >= 2", details={"m": m})
    coeffs = [field.zero] * (m + 1)
    coeffs[m] = field.one
    coeffs[m - 1] = -trace
    coeffs[0] = det if m % 2 == 0 else -det
    return SimilarityClass.from_chain(field, [poly_from_asc(field, coeffs)])


def _zero_row(field: FieldCtx, width: int) -> Matrix:
    return Matrix.zeros(field, 1, width)


def _unit_row(field: FieldCtx, width: int, j: int) -> Matrix:
    data = np.zeros((1, width), dtype=np.int64)
    data[0, j] = 1
    return Matrix.from_ints(field, data)


def _solve_free_row(
    build: Callable[[Matrix], Matrix],
    target: SimilarityClass,
    width: int,
    *,
    seed: int,
    config: EngineConfig,
) -> Matrix:
    """Row r making build(r) a member of the cyclic class target."""
    field = target.field
    n = target.n
    wanted = poly_asc(target.charpoly)

    def coefficients(row: Matrix) -> Matrix:
        asc = list(poly_asc(charpoly(build(row))))[:n]
        return Matrix.from_ints(field, np.array(asc, dtype=np.int64).reshape(n, 1))

    base = coefficients(_zero_row(field, width))
    columns = [coefficients(_unit_row(field, width, j)) - base for j in range(width)]
    system = block_matrix(field, [columns])
    rhs = Matrix.from_ints(field, np.array(wanted[:n], dtype=np.int64).reshape(n, 1)) - base

    def accept(row: Matrix) -> bool:
        return invariant_factors(build(row)) == target.factors

    solution = solve_linear(system, rhs)
    if solution is not None:
        row = solution.transpose()
        if accept(row):
            return row
    logger.debug("Free-row linear solve did not produce a class member; searching")

    total = field.order**width
    if total <= config.search_bound:
        for digits in itertools.product(range(field.order), repeat=width):
            row = Matrix.from_ints(field, np.array(digits, dtype=np.int64).reshape(1, width))
            if accept(row):
                return row
    else:
        rng = np.random.default_rng(seed)
        for _ in range(config.search_bound):
            row = Matrix.from_ints(field, rng.integers(0, field.order, size=(1, width)))
            if accept(row):
                return row
    raise SolveFailedError(
        "No free row realizes the class",
        details={"class": target.to_text(), "width": width, "search_bound": config.search_bound},
    )


def block_factor(
    omega: ClassHandle,
    psi: ClassHandle,
    d: Matrix,
    *,
    seed: int | None = None,
    config: EngineConfig | None = None,
) -> BlockFactorization:
    """
    W in Omega, Q in Psi with W Q = [[delta, z], [0, D]], delta = det(D)^-1 det(Omega) det(Psi).

    Raises:
        HypothesisViolatedError: If either class is not cyclic or sizes disagree.
        NoLUError: If D has a vanishing leading principal minor.
        SolveFailedError: If no free row realizes a class.
    """
    cfg = config or DEFAULT_CONFIG
    om, ps = closure_of(omega), closure_of(psi)
    if not (om.is_cyclic and ps.is_cyclic):
        raise HypothesisViolatedError(
            "Block factorization needs cyclic classes",
            details={"omega": om.to_text(), "psi": ps.to_text()},
        )
    n = om.n
    if ps.n != n or n < 2 or d.rows != n - 1 or not d.is_square:
        raise DimensionMismatchError(
            "Classes must share size n >= 2 and D must be (n-1)x(n-1)",
            details={"omega": om.n, "psi": ps.n, "d": [d.rows, d.cols]},
        )
    field = om.field
    lower, upper = lu_decompose(d)
    sign = field.one if (n - 1) % 2 == 0 else -field.one
    beta = sign * om.det / lower.det()
    gamma = sign * ps.det / upper.det()

    beta_col = Matrix.from_rows(field, [[beta]])
    gamma_row = Matrix.from_rows(field, [[gamma]])
    zero_col = Matrix.zeros(field, n - 1, 1)

    def build_w(y: Matrix) -> Matrix:
        return block_matrix(field, [[y, beta_col], [lower, zero_col]])

    def build_q(x: Matrix) -> Matrix:
        return block_matrix(field, [[zero_col, upper], [gamma_row, x]])

    run_seed = cfg.seed if seed is None else seed
    w = build_w(_solve_free_row(build_w, om, n - 1, seed=run_seed, config=cfg))
    q = build_q(_solve_free_row(build_q, ps, n - 1, seed=run_seed + 1, config=cfg))

    product = w @ q
    delta = om.det * ps.det / d.det()
    if (
        product[0, 0] != delta
        or not product.block(1, n, 0, 1).is_zero()
        or product.block(1, n, 1, n) != d
    ):
        raise ConstructionFailedError(
            "Block factorization product has the wrong shape",
            details={"product": product.to_text_rows(), "delta": str(delta)},
        )
    return BlockFactorization(w=w, q=q, z=product.block(0, 1, 1, n), delta=delta)


def clearing_conjugator(lam: FieldElement, z: Matrix, m_block: Matrix) -> Matrix:
    """
    G = [[1, g], [0, I]] with G^-1 [[lam, z], [0, M]] G = lam + M (direct sum).

    Raises:
        SingularMatrixError: If M - lam I is singular.
    """
    field = m_block.field
    k = m_block.rows
    shifted = m_block - Matrix.scalar(field, k, lam)
    g = z @ shifted.inverse()
    return block_matrix(
        field, [[Matrix.identity(field, 1), g], [Matrix.zeros(field, k, 1), Matrix.identity(field, k)]]
    )


@dataclass(frozen=True)
class SplitProduct:
    """W Q = lam + M exactly, with the conjugators used to get there."""

    w: Matrix
    q: Matrix
    lam: FieldElement
    clearing: Matrix


def split_product(
    omega: ClassHandle,
    psi: ClassHandle,
    m_block: Matrix,
    *,
    seed: int | None = None,
    config: EngineConfig | None = None,
) -> SplitProduct:
    """W in Omega, Q in Psi with W Q = lam + M, lam = det(Omega) det(Psi) / det(M)."""
    factored = block_factor(omega, psi, m_block, seed=seed, config=config)
    g = clearing_conjugator(factored.delta, factored.z, m_block)
    return SplitProduct(
        w=factored.w.conjugate(g), q=factored.q.conjugate(g), lam=factored.delta, clearing=g
    )


def admissible_blocks(
    field: FieldCtx,
    size: int,
    target_det: FieldElement,
    *,
    seed: int,
    config: EngineConfig,
):
    """
    Candidate M of the given size with nonzero leading minors and M - lam I nonsingular,
    lam = target_det / det M.

    Scalar matrices mu I come first in field element order, then seeded random blocks.
    """
    for mu in field.units():
        m_block = Matrix.scalar(field, size, mu)
        lam = target_det / m_block.det()
        if lam != mu:
            yield m_block
    rng = np.random.default_rng(seed)
    for _ in range(min(config.search_bound, field.order ** (2 * size) + 64)):
        m_block = Matrix.from_ints(field, rng.integers(0, field.order, size=(size, size)))
        det = m_block.det()
        if det.is_zero or any(minor.is_zero for minor in leading_minors(m_block)):
            continue
        lam = target_det / det
        if (m_block - Matrix.scalar(field, size, lam)).det().is_zero:
            continue
        yield m_block


# ---------------------------------------------------------------- corner embedding


def embed_corner(
    m: Matrix, a: Matrix, *, seed: int | None = None, config: EngineConfig | None = None
) -> Matrix:
    """
    T with conjugate(M, T) having top-left block A.

    Finds v_1..v_k with v_1..v_k, v_1 M..v_k M independent; in a basis starting
    with these vectors M has the block row [0, I, 0], and the unipotent
    conjugator [[I, 0, 0], [A, I, 0], [0, 0, I]] then puts A in the corner.

    Raises:
        PreconditionViolatedError: If M is singular, k > n/2 or k > mr(M).
        EmbedSearchFailedError: If the bounded vector search is exhausted.
    """
    cfg = config or DEFAULT_CONFIG
    field = m.field
    n, k = m.rows, a.rows
    if not a.is_square or not m.is_square or k < 1:
        raise DimensionMismatchError("Embedding needs square M and A", details={"k": k, "n": n})
    details = {"k": k, "n": n}
    if 2 * k > n:
        raise PreconditionViolatedError("Block size exceeds n/2", details=details)
    if m.det().is_zero:
        raise PreconditionViolatedError("M must be nonsingular", details=details)
    mr = minimal_rank(m)
    if k > mr:
        raise PreconditionViolatedError(
            "Block size exceeds the minimal rank of M", details={**details, "minimal_rank": mr}
        )
    if m.block(0, k, 0, k) == a:
        return Matrix.identity(field, n)

    vectors = _independent_pairs(m, k, seed=cfg.seed if seed is None else seed, config=cfg)
    rows = vectors + [v @ m for v in vectors]
    basis = _complete_basis(field, rows, n)
    x = block_matrix(
        field,
        [
            [Matrix.identity(field, k), Matrix.zeros(field, k, k), Matrix.zeros(field, k, n - 2 * k)],
            [a, Matrix.identity(field, k), Matrix.zeros(field, k, n - 2 * k)],
            [
                Matrix.zeros(field, n - 2 * k, k),
                Matrix.zeros(field, n - 2 * k, k),
                Matrix.identity(field, n - 2 * k),
            ],
        ],
    )
    t = basis.inverse() @ x
    embedded = m.conjugate(t)
    if embedded.block(0, k, 0, k) != a:
        raise EmbedSearchFailedError(
            "Embedded corner does not match", details={**details, "corner": embedded.to_text_rows()}
        )
    return t


def _stack(field: FieldCtx, rows: list[Matrix], n: int) -> Matrix:
    if not rows:
        return Matrix.zeros(field, 0, n)
    return block_matrix(field, [[r] for r in rows])


def _independent_pairs(m: Matrix, k: int, *, seed: int, config: EngineConfig) -> list[Matrix]:
    field = m.field
    n = m.rows

    def extends(chosen: list[Matrix], v: Matrix) -> bool:
        rows = chosen + [c @ m for c in chosen] + [v, v @ m]
        return _stack(field, rows, n).rank() == len(rows)

    chosen: list[Matrix] = []
    for j in range(n):
        if len(chosen) == k:
            return chosen
        v = _unit_row(field, n, j)
        if extends(chosen, v):
            chosen.append(v)
    if len(chosen) == k:
        return chosen

    rng = np.random.default_rng(seed)
    draws = 0
    per_step = 64 * field.order
    while draws < config.search_bound:
        chosen = []
        for _ in range(k):
            for _ in range(per_step):
                draws += 1
                v = Matrix.from_ints(field, rng.integers(0, field.order, size=(1, n)))
                if extends(chosen, v):
                    chosen.append(v)
                    break
            else:
                break
        if len(chosen) == k:
            return chosen
    raise EmbedSearchFailedError(
        "No independent vector pairs found", details={"k": k, "n": n, "draws": draws}
    )


def _complete_basis(field: FieldCtx, rows: list[Matrix], n: int) -> Matrix:
    rows = list(rows)
    for j in range(n):
        if len(rows) == n:
            break
        candidate = rows + [_unit_row(field, n, j)]
        if _stack(field, candidate, n).rank() == len(candidate):
            rows = candidate
    basis = _stack(field, rows, n)
    if basis.rank() != n:
        raise SingularMatrixError("Basis completion failed", details={"n": n})
    return basis
