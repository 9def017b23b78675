"""
Interleaved block normal forms of cyclic matrices.

For a cyclic phi of size n = 2m with cyclic vector v, the basis

    v, v phi^2, ..., v phi^(2m-2), v phi, v phi^3, ..., v phi^(2m-1)

puts phi in the shape [[0, I], [C, D]]. For n = 2m + 1 the middle vector
w = v phi^(2m) + v and one unipotent conjugation give
[[0, 0, I], [0, beta, *], [C, *, *]]. In both cases C is the companion
matrix of a polynomial with nonzero constant term, hence cyclic and invertible.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..config import DEFAULT_CONFIG, EngineConfig
from ..core.field import FieldElement
from ..core.linalg import Matrix, block_matrix, cyclic_vectors, is_cyclic, is_similar
from ..exceptions import DegenerateBasisError, HypothesisViolatedError, SingularMatrixError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InterleaveForm:
    """matrix = conjugate(source, conjugator) in interleaved block shape."""

    matrix: Matrix
    conjugator: Matrix
    m: int

    @property
    def n(self) -> int:
        return self.matrix.rows

    @property
    def odd(self) -> bool:
        return self.n % 2 == 1

    @property
    def c_block(self) -> Matrix:
        top = self.m + 1 if self.odd else self.m
        return self.matrix.block(top, self.n, 0, self.m)

    @property
    def d_block(self) -> Matrix:
        """Lower-right m x m block (even sizes)."""
        return self.matrix.block(self.m, self.n, self.m, self.n)

    @property
    def beta(self) -> FieldElement:
        """Middle diagonal entry (odd sizes)."""
        return self.matrix[self.m, self.m]


def _even_basis(phi: Matrix, v: Matrix, m: int) -> list[Matrix]:
    powers = [v]
    for _ in range(2 * m - 1):
        powers.append(powers[-1] @ phi)
    return powers[0::2] + powers[1::2]


def _odd_basis(phi: Matrix, v: Matrix, m: int) -> list[Matrix]:
    powers = [v]
    for _ in range(2 * m):
        powers.append(powers[-1] @ phi)
    evens = powers[0 : 2 * m : 2]
    odds = powers[1 : 2 * m : 2]
    return evens + [powers[2 * m] + v] + odds


def _has_even_shape(n_form: Matrix, m: int) -> bool:
    field = n_form.field
    return (
        n_form.block(0, m, 0, m).is_zero()
        and n_form.block(0, m, m, 2 * m) == Matrix.identity(field, m)
    )


def _has_odd_shape(n_form: Matrix, m: int) -> bool:
    field = n_form.field
    n = 2 * m + 1
    return (
        n_form.block(0, m, 0, m + 1).is_zero()
        and n_form.block(0, m, m + 1, n) == Matrix.identity(field, m)
        and n_form.block(m, m + 1, 0, m).is_zero()
    )


def _clearing_unipotent(n_form: Matrix, m: int) -> Matrix:
    """[[I, 0, 0], [0, 1, h], [0, 0, I]] with h = a C^-1 removing the row block a."""
    field = n_form.field
    a = n_form.block(m, m + 1, 0, m)
    c = n_form.block(m + 1, 2 * m + 1, 0, m)
    h = a @ c.inverse()
    eye = Matrix.identity(field, m)
    return block_matrix(
        field,
        [
            [eye, Matrix.zeros(field, m, 1), Matrix.zeros(field, m, m)],
            [Matrix.zeros(field, 1, m), Matrix.identity(field, 1), h],
            [Matrix.zeros(field, m, m), Matrix.zeros(field, m, 1), eye],
        ],
    )


def interleave_form(
    phi: Matrix, *, seed: int | None = None, config: EngineConfig | None = None
) -> InterleaveForm:
    """
    Conjugate a cyclic nonsingular phi (n >= 2) into interleaved block shape.

    Raises:
        NotCyclicError: If phi is not cyclic.
        HypothesisViolatedError: If phi is singular or too small, or the block C
            of the accepted form is not cyclic.
        DegenerateBasisError: If no cyclic vector yields a valid basis.
    """
    cfg = config or DEFAULT_CONFIG
    n = phi.rows
    if n < 2:
        raise HypothesisViolatedError("Interleaved form needs n >= 2", details={"n": n})
    if phi.det().is_zero:
        raise HypothesisViolatedError(
            "Interleaved form needs a nonsingular matrix", details={"rows": phi.to_text_rows()}
        )
    m = n // 2
    odd = n % 2 == 1
    field = phi.field

    tried = 0
    for v in cyclic_vectors(phi, seed=seed, config=cfg):
        tried += 1
        rows = _odd_basis(phi, v, m) if odd else _even_basis(phi, v, m)
        basis = block_matrix(field, [[r] for r in rows])
        try:
            conjugator = basis.inverse()
        except SingularMatrixError:
            continue
        form = phi.conjugate(conjugator)
        if odd:
            try:
                clearing = _clearing_unipotent(form, m)
            except SingularMatrixError:
                continue
            conjugator = conjugator @ clearing
            form = form.conjugate(clearing)
            shaped = _has_odd_shape(form, m)
        else:
            shaped = _has_even_shape(form, m)
        result = InterleaveForm(matrix=form, conjugator=conjugator, m=m)
        c = result.c_block
        if shaped and not c.det().is_zero and is_similar(form, phi):
            if not is_cyclic(c):
                raise HypothesisViolatedError(
                    "Interleaved block C is not cyclic",
                    details={"n": n, "c": c.to_text_rows()},
                )
            logger.debug(f"Interleaved form found after {tried} cyclic vector(s)")
            return result
    raise DegenerateBasisError(
        "No cyclic vector gave an interleaved basis", details={"n": n, "tried": tried}
    )
