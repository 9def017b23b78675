"""
Exact dense linear algebra over a FieldCtx.

Vectors are rows acting on the right (v -> vA) and conjugation is
A^X = X^-1 A X. Determinants, ranks, inverses, row reduction and LU come
from galois; invariant factors come from a Smith reduction of xI - A over
K[x] with an independent elementary-divisor path for cross-checking.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Literal, Sequence

import galois
import numpy as np

from ..config import DEFAULT_CONFIG, EngineConfig
from ..exceptions import (
    DimensionMismatchError,
    LinearAlgebraError,
    MixedFieldsError,
    NoLUError,
    NotCyclicError,
    SingularMatrixError,
)
from .field import FieldCtx, FieldElement
from .polynomials import factor, format_poly, is_zero, monic, poly_asc, poly_from_asc

logger = logging.getLogger(__name__)

MatOp = Literal["add", "mul", "scalar_mul", "det", "rank", "trace", "inverse", "transpose"]


class Matrix:
    """Dense matrix over a FieldCtx; a value type."""

    __slots__ = ("_key", "array", "field")

    def __init__(self, field: FieldCtx, array: galois.FieldArray):
        if array.ndim != 2:
            raise DimensionMismatchError("Matrix data must be two-dimensional")
        if type(array) is not field.gf:
            array = field.gf(np.asarray(array.view(np.ndarray), dtype=np.int64))
        self.field = field
        self.array = array
        self._key: bytes | None = None

    # ------------------------------------------------------------ constructors

    @classmethod
    def from_rows(cls, field: FieldCtx, rows: Sequence[Sequence[int | FieldElement]]) -> Matrix:
        data = [[int(v) for v in row] for row in rows]
        width = len(data[0]) if data else 0
        if any(len(row) != width for row in data):
            raise DimensionMismatchError("Ragged matrix rows")
        return cls(field, field.array(np.array(data, dtype=np.int64).reshape(len(data), width)))

    @classmethod
    def from_ints(cls, field: FieldCtx, values: np.ndarray) -> Matrix:
        return cls(field, field.gf(np.asarray(values, dtype=np.int64)))

    @classmethod
    def identity(cls, field: FieldCtx, n: int) -> Matrix:
        return cls(field, field.gf.Identity(n)) if n else cls.zeros(field, 0, 0)

    @classmethod
    def zeros(cls, field: FieldCtx, rows: int, cols: int | None = None) -> Matrix:
        return cls(field, field.gf(np.zeros((rows, rows if cols is None else cols), dtype=np.int64)))

    @classmethod
    def diag(cls, field: FieldCtx, values: Sequence[int | FieldElement]) -> Matrix:
        n = len(values)
        data = np.zeros((n, n), dtype=np.int64)
        for i, v in enumerate(values):
            data[i, i] = int(v)
        return cls.from_ints(field, data)

    @classmethod
    def scalar(cls, field: FieldCtx, n: int, value: FieldElement) -> Matrix:
        return cls.diag(field, [value] * n)

    # ------------------------------------------------------------ shape and access

    @property
    def rows(self) -> int:
        return int(self.array.shape[0])

    @property
    def cols(self) -> int:
        return int(self.array.shape[1])

    @property
    def n(self) -> int:
        return self.rows

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: tuple[int, int]) -> FieldElement:
        i, j = index
        return self.field.element(int(self.array[i, j]))

    def block(self, r0: int, r1: int, c0: int, c1: int) -> Matrix:
        return Matrix(self.field, self.array[r0:r1, c0:c1].copy())

    def row(self, i: int) -> Matrix:
        return self.block(i, i + 1, 0, self.cols)

    def ints(self) -> np.ndarray:
        return np.asarray(self.array.view(np.ndarray), dtype=np.int64)

    def key(self) -> bytes:
        """Canonical encoding: row-major integer representations, fixed-width bytes."""
        if self._key is None:
            self._key = np.asarray(self.ints(), dtype=np.uint16).tobytes()
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.array.shape == other.array.shape
            and self.key() == other.key()
        )

    def __hash__(self) -> int:
        return hash((self.field, self.array.shape, self.key()))

    def __repr__(self) -> str:
        return f"Matrix({self.to_text_rows()}, {self.field!r})"

    # ------------------------------------------------------------ arithmetic

    def _peer(self, other: Matrix) -> Matrix:
        if other.field != self.field:
            raise MixedFieldsError(
                "Matrices over different fields",
                details={"left": repr(self.field), "right": repr(other.field)},
            )
        return other

    def __add__(self, other: Matrix) -> Matrix:
        other = self._peer(other)
        if self.array.shape != other.array.shape:
            raise DimensionMismatchError(
                "Cannot add matrices of different shapes",
                details={"left": self.array.shape, "right": other.array.shape},
            )
        return Matrix(self.field, self.array + other.array)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-self._peer(other))

    def __neg__(self) -> Matrix:
        return Matrix(self.field, -self.array)

    def __matmul__(self, other: Matrix) -> Matrix:
        other = self._peer(other)
        if self.cols != other.rows:
            raise DimensionMismatchError(
                "Inner dimensions differ",
                details={"left": self.array.shape, "right": other.array.shape},
            )
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Matrix.zeros(self.field, self.rows, other.cols)
        return Matrix(self.field, self.array @ other.array)

    def scale(self, c: FieldElement) -> Matrix:
        if c.owner != self.field:
            raise MixedFieldsError("Scalar from a different field")
        return Matrix(self.field, self.array * c.scalar)

    def _require_square(self, what: str) -> None:
        if not self.is_square:
            raise DimensionMismatchError(
                f"{what} requires a square matrix", details={"shape": self.array.shape}
            )

    def det(self) -> FieldElement:
        self._require_square("Determinant")
        if self.rows == 0:
            return self.field.one
        return self.field.element(int(np.linalg.det(self.array)))

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return int(np.linalg.matrix_rank(self.array))

    def trace(self) -> FieldElement:
        self._require_square("Trace")
        total = self.field.gf(0)
        for i in range(self.rows):
            total = total + self.array[i, i]
        return self.field.element(int(total))

    def inverse(self) -> Matrix:
        self._require_square("Inverse")
        if self.rows == 0:
            return self
        if self.det().is_zero:
            raise SingularMatrixError("Matrix is singular", details={"rows": self.to_text_rows()})
        try:
            return Matrix(self.field, np.linalg.inv(self.array))
        except np.linalg.LinAlgError as e:
            raise SingularMatrixError("Matrix is singular", cause=e) from e

    def transpose(self) -> Matrix:
        return Matrix(self.field, self.array.T.copy())

    @property
    def T(self) -> Matrix:  # noqa: N802
        return self.transpose()

    def is_zero(self) -> bool:
        return not np.any(self.ints())

    def conjugate(self, x: Matrix) -> Matrix:
        return conjugate(self, x)

    # ------------------------------------------------------------ serialization

    def to_text_rows(self) -> list[list[str]]:
        return [[self.field.format_element(int(v)) for v in row] for row in self.ints()]

    def to_dict(self) -> dict[str, object]:
        payload: dict[str, object] = {}
        if self.is_square:
            payload["n"] = self.rows
        else:
            payload["shape"] = [self.rows, self.cols]
        payload["field"] = self.field.to_dict()
        payload["rows"] = self.to_text_rows()
        return payload


# ---------------------------------------------------------------- assembly


def block_matrix(field: FieldCtx, blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a block matrix; every block row must agree in height and every column in width."""
    grid = [[b.ints() for b in row] for row in blocks]
    try:
        data = np.block(grid)
    except ValueError as e:
        raise DimensionMismatchError("Incompatible block shapes", cause=e) from e
    return Matrix.from_ints(field, np.asarray(data, dtype=np.int64))


def direct_sum(field: FieldCtx, *parts: Matrix) -> Matrix:
    n = sum(p.rows for p in parts)
    m = sum(p.cols for p in parts)
    data = np.zeros((n, m), dtype=np.int64)
    r = c = 0
    for part in parts:
        data[r : r + part.rows, c : c + part.cols] = part.ints()
        r += part.rows
        c += part.cols
    return Matrix.from_ints(field, data)


def companion(field: FieldCtx, poly: galois.Poly) -> Matrix:
    """
    Companion matrix of a monic polynomial x^d + c_{d-1}x^{d-1} + ... + c_0.

    Ones on the superdiagonal and last row (-c_0, ..., -c_{d-1}), so e_1 is a
    cyclic vector for the row-vector action.
    """
    asc = poly_asc(monic(poly))
    d = len(asc) - 1
    data = np.zeros((d, d), dtype=np.int64)
    for i in range(d - 1):
        data[i, i + 1] = 1
    negated = -field.array(np.array(asc[:d], dtype=np.int64))
    data[d - 1, :] = np.asarray(negated.view(np.ndarray), dtype=np.int64)
    return Matrix.from_ints(field, data)


# ---------------------------------------------------------------- basic ops


def mat_arith(
    a: Matrix, b: Matrix | FieldElement | None = None, op: MatOp = "add"
) -> Matrix | FieldElement | int:
    """Dispatch one matrix operation by name."""
    if op == "add":
        return a + _matrix_operand(b)
    if op == "mul":
        return a @ _matrix_operand(b)
    if op == "scalar_mul":
        if not isinstance(b, FieldElement):
            raise LinearAlgebraError("scalar_mul needs a field element")
        return a.scale(b)
    if op == "det":
        return a.det()
    if op == "rank":
        return a.rank()
    if op == "trace":
        return a.trace()
    if op == "inverse":
        return a.inverse()
    if op == "transpose":
        return a.transpose()
    raise LinearAlgebraError(f"Unknown matrix operation '{op}'")


def _matrix_operand(b: object) -> Matrix:
    if not isinstance(b, Matrix):
        raise LinearAlgebraError("Binary matrix operation needs a matrix operand")
    return b


def conjugate(a: Matrix, x: Matrix) -> Matrix:
    """A^X = X^-1 A X."""
    if not (a.is_square and x.is_square and a.rows == x.rows):
        raise DimensionMismatchError(
            "Conjugation needs square matrices of equal size",
            details={"a": a.array.shape, "x": x.array.shape},
        )
    return x.inverse() @ a @ x


def poly_at(poly: galois.Poly, a: Matrix) -> Matrix:
    """f(A) evaluated as a matrix polynomial."""
    if a.rows == 0:
        return a
    return Matrix(a.field, poly(a.array, elementwise=False))


def leading_minors(d: Matrix) -> list[FieldElement]:
    return [d.block(0, i, 0, i).det() for i in range(1, d.rows + 1)]


def lu_decompose(d: Matrix) -> tuple[Matrix, Matrix]:
    """
    D = L U with L unit lower triangular and U upper triangular, both nonsingular.

    Raises:
        NoLUError: If some leading principal minor of D vanishes.
    """
    d._require_square("LU decomposition")
    for size, minor in enumerate(leading_minors(d), start=1):
        if minor.is_zero:
            raise NoLUError(
                "Leading principal minor vanishes",
                details={"size": size, "rows": d.to_text_rows()},
            )
    lower, upper = d.array.lu_decompose()
    return Matrix(d.field, lower), Matrix(d.field, upper)


# ---------------------------------------------------------------- kernels and solving


def kernel_basis(m: Matrix) -> list[Matrix]:
    """Basis of the right kernel {x : M x = 0}, as column matrices."""
    field = m.field
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [Matrix.from_ints(field, np.eye(m.cols, dtype=np.int64)[:, [j]]) for j in range(m.cols)]
    reduced = m.array.row_reduce()
    ints = np.asarray(reduced.view(np.ndarray), dtype=np.int64)
    pivots: list[int] = []
    for row in ints:
        nonzero = np.flatnonzero(row)
        if nonzero.size == 0:
            break
        pivots.append(int(nonzero[0]))
    free = [j for j in range(m.cols) if j not in pivots]
    basis = []
    for f in free:
        vec = field.gf(np.zeros(m.cols, dtype=np.int64))
        vec[f] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = -reduced[i, f]
        basis.append(Matrix(field, vec.reshape(m.cols, 1)))
    return basis


def solve_linear(m: Matrix, b: Matrix) -> Matrix | None:
    """One solution y of M y = b (b a column), or None when inconsistent."""
    field = m.field
    if b.rows != m.rows or b.cols != 1:
        raise DimensionMismatchError("Right-hand side must be a column of matching height")
    augmented = block_matrix(field, [[m, b]])
    reduced = np.asarray(augmented.array.row_reduce().view(np.ndarray), dtype=np.int64)
    solution = np.zeros(m.cols, dtype=np.int64)
    for row in reduced:
        nonzero = np.flatnonzero(row)
        if nonzero.size == 0:
            break
        pivot = int(nonzero[0])
        if pivot == m.cols:
            return None
        solution[pivot] = row[-1]
    return Matrix.from_ints(field, solution.reshape(m.cols, 1))


def krylov(a: Matrix, v: Matrix, length: int | None = None) -> Matrix:
    """Rows v, vA, ..., vA^(length-1)."""
    steps = a.rows if length is None else length
    rows = [v]
    for _ in range(steps - 1):
        rows.append(rows[-1] @ a)
    return block_matrix(a.field, [[r] for r in rows]) if rows else Matrix.zeros(a.field, 0, a.cols)


# ---------------------------------------------------------------- invariant factors


@dataclass(frozen=True)
class InvariantFactors:
    """Monic chain f_1 | f_2 | ... | f_s with product the characteristic polynomial."""

    field: FieldCtx
    keys: tuple[tuple[int, ...], ...]

    @classmethod
    def from_polys(cls, field: FieldCtx, polys: Iterable[galois.Poly]) -> InvariantFactors:
        return cls(field, tuple(poly_asc(monic(p)) for p in polys))

    @property
    def chain(self) -> list[galois.Poly]:
        return [poly_from_asc(self.field, key) for key in self.keys]

    @property
    def degrees(self) -> list[int]:
        return [len(key) - 1 for key in self.keys]

    @property
    def n(self) -> int:
        return sum(self.degrees)

    def __len__(self) -> int:
        return len(self.keys)

    @property
    def minpoly(self) -> galois.Poly:
        return poly_from_asc(self.field, self.keys[-1])

    @property
    def charpoly(self) -> galois.Poly:
        product = poly_from_asc(self.field, (1,))
        for poly in self.chain:
            product = product * poly
        return product

    def is_chain(self) -> bool:
        polys = self.chain
        if any(p.degree < 1 for p in polys):
            return False
        return all(is_zero(polys[i + 1] % polys[i]) for i in range(len(polys) - 1))

    def to_text(self) -> str:
        return ",".join(format_poly(self.field, p) for p in self.chain)

    def to_json(self) -> list[list[int]]:
        return [list(key) for key in self.keys]


def invariant_factors(a: Matrix) -> InvariantFactors:
    """Invariant factors from the Smith form of xI - A over K[x]."""
    a._require_square("Invariant factors")
    return InvariantFactors(a.field, _smith_chain(a.field, a.rows, a.key()))


@lru_cache(maxsize=65536)
def _smith_chain(field: FieldCtx, n: int, key: bytes) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ()
    entries = np.frombuffer(key, dtype=np.uint16).astype(np.int64).reshape(n, n)
    negated = np.asarray((-field.array(entries)).view(np.ndarray), dtype=np.int64)
    grid: list[list[galois.Poly]] = [
        [
            galois.Poly([1, int(negated[i, j])], field=field.gf)
            if i == j
            else galois.Poly([int(negated[i, j])], field=field.gf)
            for j in range(n)
        ]
        for i in range(n)
    ]
    diagonal = _smith_diagonal(grid)
    chain = [poly_asc(monic(d)) for d in diagonal if d.degree >= 1 and not is_zero(d)]
    return tuple(chain)


def _smith_diagonal(grid: list[list[galois.Poly]]) -> list[galois.Poly]:
    # Min-degree pivoting with exact division; the divisibility repair step
    # guarantees d_1 | d_2 | ... on the way out.
    n = len(grid)
    diagonal: list[galois.Poly] = []
    for t in range(n):
        while True:
            pivot = _min_degree_entry(grid, t)
            if pivot is None:
                diagonal.extend(grid[i][i] for i in range(t, n))
                return diagonal
            i, j = pivot
            grid[t], grid[i] = grid[i], grid[t]
            for row in grid:
                row[t], row[j] = row[j], row[t]

            lead = grid[t][t]
            clean = True
            for i in range(t + 1, n):
                if is_zero(grid[i][t]):
                    continue
                quotient, remainder = divmod(grid[i][t], lead)
                for c in range(t, n):
                    grid[i][c] = grid[i][c] - quotient * grid[t][c]
                if not is_zero(remainder):
                    clean = False
            for j in range(t + 1, n):
                if is_zero(grid[t][j]):
                    continue
                quotient, remainder = divmod(grid[t][j], lead)
                for r in range(t, n):
                    grid[r][j] = grid[r][j] - quotient * grid[r][t]
                if not is_zero(remainder):
                    clean = False
            if not clean:
                continue

            offender = next(
                (
                    i
                    for i in range(t + 1, n)
                    for j in range(t + 1, n)
                    if not is_zero(grid[i][j] % lead)
                ),
                None,
            )
            if offender is None:
                break
            for c in range(t, n):
                grid[t][c] = grid[t][c] + grid[offender][c]
        diagonal.append(grid[t][t])
    return diagonal


def _min_degree_entry(grid: list[list[galois.Poly]], t: int) -> tuple[int, int] | None:
    best: tuple[int, int] | None = None
    best_degree = math.inf
    n = len(grid)
    for i in range(t, n):
        for j in range(t, n):
            entry = grid[i][j]
            if is_zero(entry):
                continue
            if entry.degree < best_degree:
                best, best_degree = (i, j), entry.degree
    return best


def charpoly(a: Matrix) -> galois.Poly:
    return invariant_factors(a).charpoly


def minpoly(a: Matrix) -> galois.Poly:
    chain = invariant_factors(a)
    if not len(chain):
        return poly_from_asc(a.field, (1,))
    return chain.minpoly


def is_cyclic(a: Matrix) -> bool:
    return len(invariant_factors(a)) <= 1


def is_similar(a: Matrix, b: Matrix) -> bool:
    if a.field != b.field or a.array.shape != b.array.shape:
        return False
    return invariant_factors(a) == invariant_factors(b)


def elementary_divisors(a: Matrix) -> list[tuple[galois.Poly, int]]:
    """
    Elementary divisors (f, e) computed from nullities of f(A)^j.

    Independent of the Smith reduction: only the factorization of the
    characteristic polynomial is shared.
    """
    n = a.rows
    field = a.field
    divisors: list[tuple[galois.Poly, int]] = []
    for f, multiplicity in factor(field, charpoly(a)):
        d = f.degree
        base = poly_at(f, a)
        power = Matrix.identity(field, n)
        nullities = [0]
        for _ in range(multiplicity):
            power = power @ base
            nullities.append(n - power.rank())
        # blocks of size >= j
        at_least = [(nullities[j] - nullities[j - 1]) // d for j in range(1, len(nullities))]
        for j, count in enumerate(at_least, start=1):
            larger = at_least[j] if j < len(at_least) else 0
            divisors.extend([(f, j)] * (count - larger))
    return divisors


def invariant_factors_from_divisors(field: FieldCtx, divisors: Sequence[tuple[galois.Poly, int]]) -> InvariantFactors:
    by_base: dict[tuple[int, ...], list[int]] = {}
    bases: dict[tuple[int, ...], galois.Poly] = {}
    for f, e in divisors:
        key = poly_asc(f)
        by_base.setdefault(key, []).append(e)
        bases[key] = f
    length = max((len(v) for v in by_base.values()), default=0)
    chain = []
    for i in range(length):
        product = poly_from_asc(field, (1,))
        for key, exponents in by_base.items():
            ordered = sorted(exponents, reverse=True)
            index = length - 1 - i
            if index < len(ordered):
                product = product * bases[key] ** ordered[index]
        chain.append(product)
    return InvariantFactors.from_polys(field, chain)


# ---------------------------------------------------------------- cyclic vectors


def cyclic_vector(
    a: Matrix, *, seed: int | None = None, config: EngineConfig | None = None
) -> Matrix:
    """
    A row vector v with v, vA, ..., vA^(n-1) independent.

    Tries the standard basis first, then every vector when q^n is within the
    search bound, else seeded random vectors.

    Raises:
        NotCyclicError: If the minimal polynomial has degree < n.
    """
    for v in cyclic_vectors(a, seed=seed, config=config):
        return v
    raise NotCyclicError("No cyclic vector found within the search bound")


def cyclic_vectors(
    a: Matrix, *, seed: int | None = None, config: EngineConfig | None = None
) -> Iterable[Matrix]:
    """Deterministic stream of cyclic vectors (may repeat in the random phase)."""
    cfg = config or DEFAULT_CONFIG
    n = a.rows
    field = a.field
    if not is_cyclic(a):
        raise NotCyclicError(
            "Matrix is not cyclic", details={"invariant_factors": invariant_factors(a).to_text()}
        )

    def accept(v: Matrix) -> bool:
        return krylov(a, v).rank() == n

    for i in range(n):
        data = np.zeros((1, n), dtype=np.int64)
        data[0, i] = 1
        v = Matrix.from_ints(field, data)
        if accept(v):
            yield v

    total = field.order**n
    if total <= cfg.search_bound:
        for index in range(1, total):
            digits = np.array(
                [(index // field.order**j) % field.order for j in range(n)], dtype=np.int64
            )
            v = Matrix.from_ints(field, digits.reshape(1, n))
            if accept(v):
                yield v
        return

    rng = np.random.default_rng(cfg.seed if seed is None else seed)
    for _ in range(cfg.search_bound):
        v = Matrix.from_ints(field, rng.integers(0, field.order, size=(1, n)))
        if accept(v):
            yield v


# ---------------------------------------------------------------- centralizers


def commutation_system(a: Matrix, b: Matrix) -> Matrix:
    """Coefficient matrix of X -> AX - XB on row-major vec(X)."""
    n = a.rows
    field = a.field
    columns = []
    for k in range(n):
        for l in range(n):
            unit = np.zeros((n, n), dtype=np.int64)
            unit[k, l] = 1
            e = Matrix.from_ints(field, unit)
            image = (a @ e) - (e @ b)
            columns.append(image.ints().reshape(n * n))
    return Matrix.from_ints(field, np.stack(columns, axis=1))


def centralizer_basis(a: Matrix) -> list[Matrix]:
    """Basis of {X : AX = XA}."""
    a._require_square("Centralizer")
    n = a.rows
    return [
        Matrix.from_ints(a.field, v.ints().reshape(n, n))
        for v in kernel_basis(commutation_system(a, a))
    ]


def intertwiner_basis(a: Matrix, b: Matrix) -> list[Matrix]:
    """Basis of {X : AX = XB}."""
    n = a.rows
    return [
        Matrix.from_ints(a.field, v.ints().reshape(n, n))
        for v in kernel_basis(commutation_system(a, b))
    ]


@dataclass(frozen=True)
class DetImage:
    """A subgroup of K* given by its members' integer representations."""

    field: FieldCtx
    members: frozenset[int]
    certified: bool
    exhaustive: bool

    @property
    def index(self) -> int:
        return (self.field.order - 1) // len(self.members)

    def elements(self) -> list[FieldElement]:
        return [self.field.element(v) for v in sorted(self.members)]

    def __contains__(self, item: object) -> bool:
        return isinstance(item, FieldElement) and item.value in self.members

    def coset(self, theta: FieldElement) -> frozenset[int]:
        return frozenset((theta * self.field.element(h)).value for h in self.members)

    def coset_label(self, theta: FieldElement) -> FieldElement:
        """Smallest member of theta * image in field element order."""
        return self.field.element(min(self.coset(theta)))

    def coset_labels(self) -> list[FieldElement]:
        labels = {self.coset_label(u).value for u in self.field.units()}
        return [self.field.element(v) for v in sorted(labels)]


def power_subgroup(field: FieldCtx, exponent: int) -> frozenset[int]:
    """(K*)^e."""
    return frozenset((u**exponent).value for u in field.units())


def subgroup_generated(field: FieldCtx, values: Iterable[int]) -> frozenset[int]:
    """Subgroup of the cyclic group K* generated by the given units."""
    logs = _discrete_logs(field)
    g = field.order - 1
    for v in values:
        g = math.gcd(g, logs[v])
    return power_subgroup(field, g)


@lru_cache(maxsize=None)
def _discrete_logs(field: FieldCtx) -> dict[int, int]:
    logs: dict[int, int] = {}
    x = field.one
    for e in range(field.order - 1):
        logs[x.value] = e
        x = x * field.primitive
    return logs


def centralizer_det_image(
    a: Matrix, *, seed: int | None = None, config: EngineConfig | None = None
) -> DetImage:
    """
    {det X : X invertible, XA = AX} as a subgroup of K*.

    Enumerates the centralizer algebra when it has at most
    centralizer_enumeration_bound elements; otherwise draws seeded random
    elements. Either way the search stops as soon as the image is all of K*,
    which certifies the sampled result.
    """
    cfg = config or DEFAULT_CONFIG
    field = a.field
    full = frozenset(range(1, field.order))
    if field.order == 2:
        return DetImage(field, full, certified=True, exhaustive=True)

    basis = centralizer_basis(a)
    stacked = field.gf(np.stack([b.ints() for b in basis]))
    dim = len(basis)
    found: set[int] = set()

    def absorb(coeffs: np.ndarray) -> bool:
        combo = field.gf(np.zeros((a.rows, a.rows), dtype=np.int64))
        for i in np.flatnonzero(coeffs):
            combo = combo + field.gf(int(coeffs[i])) * stacked[i]
        value = int(np.linalg.det(combo))
        if value:
            found.add(value)
        return subgroup_generated(field, found) == full

    total = field.order**dim
    if total <= cfg.centralizer_enumeration_bound:
        for index in range(1, total):
            coeffs = np.array([(index // field.order**j) % field.order for j in range(dim)])
            if absorb(coeffs):
                return DetImage(field, full, certified=True, exhaustive=True)
        return DetImage(field, subgroup_generated(field, found), certified=True, exhaustive=True)

    rng = np.random.default_rng(cfg.seed if seed is None else seed)
    for _ in range(cfg.centralizer_samples):
        if absorb(rng.integers(0, field.order, size=dim)):
            return DetImage(field, full, certified=True, exhaustive=False)
    image = subgroup_generated(field, found)
    logger.warning(
        f"Centralizer determinant image sampled ({cfg.centralizer_samples} draws, "
        f"algebra dimension {dim}); result not certified"
    )
    return DetImage(field, image, certified=False, exhaustive=False)


def det_image_formula(a: Matrix) -> frozenset[int]:
    """(K*)^g with g the gcd of all elementary divisor exponents."""
    exponents = [e for _, e in elementary_divisors(a)]
    g = 0
    for e in exponents:
        g = math.gcd(g, e)
    return power_subgroup(a.field, g or 1)


def centralizer_order(a: Matrix, group: Literal["GL", "SL"] = "GL") -> int:
    """Number of invertible (GL) or determinant-one (SL) matrices commuting with A."""
    field = a.field
    basis = centralizer_basis(a)
    stacked = field.gf(np.stack([b.ints() for b in basis]))
    count = 0
    for index in range(field.order ** len(basis)):
        coeffs = [(index // field.order**j) % field.order for j in range(len(basis))]
        combo = field.gf(np.zeros((a.rows, a.rows), dtype=np.int64))
        for i, c in enumerate(coeffs):
            if c:
                combo = combo + field.gf(c) * stacked[i]
        value = int(np.linalg.det(combo))
        if (group == "GL" and value != 0) or (group == "SL" and value == 1):
            count += 1
    return count


# ---------------------------------------------------------------- similarity


def random_matrix(field: FieldCtx, rows: int, cols: int, rng: np.random.Generator) -> Matrix:
    return Matrix.from_ints(field, rng.integers(0, field.order, size=(rows, cols)))


def random_invertible(field: FieldCtx, n: int, rng: np.random.Generator, attempts: int = 10_000) -> Matrix:
    for _ in range(attempts):
        candidate = random_matrix(field, n, n, rng)
        if not candidate.det().is_zero:
            return candidate
    raise SingularMatrixError("No invertible matrix drawn", details={"n": n, "attempts": attempts})


def similarity_transform(
    a: Matrix, b: Matrix, *, seed: int | None = None, config: EngineConfig | None = None
) -> Matrix:
    """
    X with X^-1 A X = B.

    Cyclic matrices use Krylov bases (X = K_A^-1 K_B); otherwise an invertible
    element of the intertwiner space {X : AX = XB} is searched with a seeded
    generator.

    Raises:
        LinearAlgebraError: If A and B are not similar or no invertible intertwiner was found.
    """
    cfg = config or DEFAULT_CONFIG
    if not is_similar(a, b):
        raise LinearAlgebraError(
            "Matrices are not similar",
            details={
                "a": invariant_factors(a).to_text() if a.is_square else a.array.shape,
                "b": invariant_factors(b).to_text() if b.is_square else b.array.shape,
            },
        )
    if a.rows == 0:
        return a
    if is_cyclic(a):
        ka = krylov(a, cyclic_vector(a, seed=seed, config=cfg))
        kb = krylov(b, cyclic_vector(b, seed=seed, config=cfg))
        return ka.inverse() @ kb

    basis = intertwiner_basis(a, b)
    for x in basis:
        if not x.det().is_zero:
            return x
    field = a.field
    stacked = field.gf(np.stack([x.ints() for x in basis]))
    rng = np.random.default_rng(cfg.seed if seed is None else seed)
    for _ in range(cfg.search_bound):
        coeffs = rng.integers(0, field.order, size=len(basis))
        combo = field.gf(np.zeros((a.rows, a.rows), dtype=np.int64))
        for i in np.flatnonzero(coeffs):
            combo = combo + field.gf(int(coeffs[i])) * stacked[i]
        candidate = Matrix(field, combo)
        if not candidate.det().is_zero:
            return candidate
    raise LinearAlgebraError("No invertible intertwiner found", details={"dimension": len(basis)})
