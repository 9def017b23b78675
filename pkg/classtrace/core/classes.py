"""
Similarity classes, SL conjugacy classes and trace sets.

A SimilarityClass is identified by its invariant-factor chain. An SLClass adds
a label: a coset of the centralizer determinant image H inside K*, written as
its smallest member. Conjugating a matrix by X multiplies its label by det X
modulo H, and the label-theta representative is the base representative
conjugated by diag(theta, 1, ..., 1).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache
from typing import Iterator, Literal, Sequence, Union

import galois

from ..config import DEFAULT_CONFIG, EngineConfig
from ..exceptions import ClassError, DetNotOneError, TooLargeError
from .field import FieldCtx, FieldElement, extension_field
from .linalg import (
    DetImage,
    InvariantFactors,
    Matrix,
    companion,
    direct_sum,
    centralizer_det_image,
    invariant_factors,
    similarity_transform,
)
from .polynomials import (
    coefficient,
    factor,
    format_poly,
    is_irreducible,
    is_zero,
    monic_polys,
    poly_asc,
    poly_from_asc,
    roots,
)

logger = logging.getLogger(__name__)

Group = Literal["M", "GL", "SL"]
GROUPS: tuple[Group, ...] = ("M", "GL", "SL")


@dataclass(frozen=True)
class SimilarityClass:
    """GL-similarity class of M(n, K), identified by its invariant factors."""

    factors: InvariantFactors

    @classmethod
    def from_chain(cls, field: FieldCtx, polys: Sequence[galois.Poly]) -> SimilarityClass:
        factors = InvariantFactors.from_polys(field, polys)
        if not len(factors) or not factors.is_chain():
            raise ClassError(
                "Invariant factors must form a divisibility chain of nonconstant polynomials",
                details={"chain": factors.to_text() if len(factors) else ""},
            )
        return cls(factors)

    @classmethod
    def of_matrix(cls, a: Matrix) -> SimilarityClass:
        return cls(invariant_factors(a))

    @property
    def field(self) -> FieldCtx:
        return self.factors.field

    @property
    def n(self) -> int:
        return self.factors.n

    @property
    def chain(self) -> list[galois.Poly]:
        return self.factors.chain

    @property
    def minpoly(self) -> galois.Poly:
        return self.factors.minpoly

    @property
    def charpoly(self) -> galois.Poly:
        return self.factors.charpoly

    @property
    def det(self) -> FieldElement:
        c0 = coefficient(self.field, self.charpoly, 0)
        return c0 if self.n % 2 == 0 else -c0

    @property
    def trace(self) -> FieldElement:
        return -coefficient(self.field, self.charpoly, self.n - 1)

    @property
    def is_scalar(self) -> bool:
        return self.minpoly.degree == 1

    @property
    def is_cyclic(self) -> bool:
        return len(self.factors) == 1

    @property
    def is_primary(self) -> bool:
        return len(factor(self.field, self.minpoly)) == 1

    @property
    def is_irreducible(self) -> bool:
        """2x2 sense: the minimal polynomial is irreducible of degree 2."""
        return self.n == 2 and self.minpoly.degree == 2 and is_irreducible(self.minpoly)

    @property
    def is_nonsingular(self) -> bool:
        return not self.det.is_zero

    def eigenvalues(self) -> list[FieldElement]:
        """Roots of the minimal polynomial in K, in field element order."""
        return roots(self.field, self.minpoly)

    def elementary_divisors(self) -> list[tuple[galois.Poly, int]]:
        divisors = []
        for poly in self.chain:
            divisors.extend(factor(self.field, poly))
        return sorted(divisors, key=lambda pair: (int(pair[0]), pair[1]))

    def has_irreducible_elementary_divisor(self) -> bool:
        return any(e == 1 for _, e in self.elementary_divisors())

    def exponent_gcd(self) -> int:
        g = 0
        for _, e in self.elementary_divisors():
            g = math.gcd(g, e)
        return g

    def det_image(self) -> DetImage:
        """Determinants of the invertible matrices commuting with the representative."""
        return _centralizer_image(self)

    def split_count(self) -> int:
        """[K* : det image]; the number of SL classes when det = 1."""
        return self.det_image().index

    def representative(self) -> Matrix:
        return direct_sum(self.field, *(companion(self.field, f) for f in self.chain))

    def to_text(self) -> str:
        return ",".join(format_poly(self.field, f) for f in self.chain)

    def to_dict(self) -> dict[str, object]:
        return {
            "text": self.to_text(),
            "n": self.n,
            "invariant_factors": self.factors.to_json(),
            "det": str(self.det),
            "trace": str(self.trace),
        }

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class SLClass:
    """Conjugacy class of SL(n, K): a det-one similarity class plus a coset label."""

    closure: SimilarityClass
    label: FieldElement
    image: frozenset[int] = dataclass_field(compare=False, hash=False, repr=False)

    @classmethod
    def of(cls, closure: SimilarityClass, theta: FieldElement | None = None) -> SLClass:
        if closure.det != closure.field.one:
            raise DetNotOneError(
                "SL classes need determinant 1",
                details={"class": closure.to_text(), "det": str(closure.det)},
            )
        image = closure.det_image()
        theta = closure.field.one if theta is None else theta
        if theta.is_zero:
            raise ClassError("SL label must be a unit", details={"class": closure.to_text()})
        return cls(closure, image.coset_label(theta), image.members)

    @property
    def field(self) -> FieldCtx:
        return self.closure.field

    @property
    def n(self) -> int:
        return self.closure.n

    @property
    def det_image(self) -> DetImage:
        return self.closure.det_image()

    @property
    def is_similarity_class(self) -> bool:
        """True when the SL class is the whole closure (no splitting)."""
        return len(self.image) == self.field.order - 1

    @property
    def is_scalar(self) -> bool:
        return self.closure.is_scalar

    @property
    def is_cyclic(self) -> bool:
        return self.closure.is_cyclic

    def relabel(self, factor_: FieldElement) -> SLClass:
        """Class of W^X for W in this class and det X = factor_."""
        return SLClass.of(self.closure, self.label * factor_)

    def representative(self) -> Matrix:
        base = self.closure.representative()
        if self.label == self.field.one:
            return base
        return base.conjugate(label_conjugator(self.field, self.n, self.label))

    def to_text(self) -> str:
        text = self.closure.to_text()
        if self.is_similarity_class:
            return text
        return f"{text}@label={self.label}"

    def to_dict(self) -> dict[str, object]:
        payload = self.closure.to_dict()
        payload["text"] = self.to_text()
        payload["label"] = str(self.label)
        payload["labels"] = (self.field.order - 1) // len(self.image)
        return payload

    def __str__(self) -> str:
        return self.to_text()


ClassHandle = Union[SimilarityClass, SLClass]


@lru_cache(maxsize=None)
def _centralizer_image(c: SimilarityClass) -> DetImage:
    return centralizer_det_image(c.representative())


def label_conjugator(field: FieldCtx, n: int, theta: FieldElement) -> Matrix:
    """diag(theta, 1, ..., 1)."""
    return Matrix.diag(field, [theta] + [field.one] * (n - 1))


def closure_of(c: ClassHandle) -> SimilarityClass:
    return c.closure if isinstance(c, SLClass) else c


def representative(c: ClassHandle) -> Matrix:
    return c.representative()


def class_of(a: Matrix, group: Group = "GL", *, config: EngineConfig | None = None) -> ClassHandle:
    """
    Class of A in M(n, K), GL(n, K) or SL(n, K).

    Raises:
        ClassError: If group is GL and A is singular.
        DetNotOneError: If group is SL and det A != 1.
    """
    closure = SimilarityClass.of_matrix(a)
    if group == "M":
        return closure
    if group == "GL":
        if not closure.is_nonsingular:
            raise ClassError("Singular matrix has no GL class", details={"class": closure.to_text()})
        return closure
    if a.det() != a.field.one:
        raise DetNotOneError(
            "SL class requested for a matrix of determinant other than 1",
            details={"det": str(a.det()), "class": closure.to_text()},
        )
    base = SLClass.of(closure)
    if base.is_similarity_class:
        return base
    x = similarity_transform(base.representative(), a, config=config)
    return base.relabel(x.det())


def sl_split(closure: SimilarityClass) -> list[SLClass]:
    """One SLClass per coset of the centralizer determinant image, ordered by label."""
    image = SLClass.of(closure).det_image
    return [SLClass.of(closure, theta) for theta in image.coset_labels()]


def as_group_class(c: ClassHandle, group: Group) -> ClassHandle:
    """Coerce a similarity class to the base SL class when the group is SL."""
    if group == "SL" and isinstance(c, SimilarityClass):
        return SLClass.of(c)
    if group != "SL" and isinstance(c, SLClass):
        return c.closure
    return c


# ---------------------------------------------------------------- minimal rank


def minimal_rank(a: Matrix) -> int:
    """mr(A) = n - max over irreducible f of the number of invariant factors divisible by f."""
    factors = invariant_factors(a)
    return minimal_rank_of(SimilarityClass(factors)) if len(factors) else 0


def minimal_rank_of(c: SimilarityClass) -> int:
    best = 0
    for f, _ in factor(c.field, c.minpoly):
        count = sum(1 for g in c.chain if is_zero(g % f))
        best = max(best, count)
    return c.n - best


def minimal_rank_by_extension(a: Matrix, *, config: EngineConfig | None = None) -> int:
    """min rank(A - lambda I) over eigenvalues lambda, computed in extension fields."""
    cfg = config or DEFAULT_CONFIG
    field = a.field
    n = a.rows
    best = n
    for f, _ in factor(field, invariant_factors(a).charpoly):
        ext, embedding = extension_field(field, f.degree, bound=cfg.extension_bound)
        lifted = Matrix(ext, embedding.map_array(a.array))
        f_lifted = galois.Poly(embedding.map_array(f.coeffs), field=ext.gf)
        for lam in roots(ext, f_lifted):
            best = min(best, (lifted - Matrix.scalar(ext, n, lam)).rank())
    return best


# ---------------------------------------------------------------- enumeration


def invariant_chains(field: FieldCtx, n: int) -> Iterator[tuple[galois.Poly, ...]]:
    """Every invariant-factor chain of total degree n, smallest factor first."""
    for top_degree in range(1, n + 1):
        for top in monic_polys(field, top_degree):
            for rest in _chains_below(field, n - top_degree, poly_asc(top)):
                yield rest + (top,)


def _chains_below(
    field: FieldCtx, remaining: int, bound_key: tuple[int, ...]
) -> Iterator[tuple[galois.Poly, ...]]:
    if remaining == 0:
        yield ()
        return
    for divisor_key in _monic_divisors(field, bound_key):
        degree = len(divisor_key) - 1
        if degree < 1 or degree > remaining:
            continue
        for rest in _chains_below(field, remaining - degree, divisor_key):
            yield rest + (poly_from_asc(field, divisor_key),)


@lru_cache(maxsize=65536)
def _monic_divisors(field: FieldCtx, key: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    poly = poly_from_asc(field, key)
    divisors = [poly_from_asc(field, (1,))]
    for f, e in factor(field, poly):
        divisors = [d * f**j for d in divisors for j in range(e + 1)]
    keys = {poly_asc(d) for d in divisors}
    return tuple(sorted(keys, key=lambda k: (len(k), tuple(reversed(k)))))


def enumerate_classes(
    n: int, field: FieldCtx, group: Group = "M", *, config: EngineConfig | None = None
) -> list[ClassHandle]:
    """
    All classes of M(n, K) (similarity), GL(n, K) (nonsingular similarity) or SL(n, K).

    Raises:
        TooLargeError: If q^(n^2) exceeds the enumeration bound.
    """
    cfg = config or DEFAULT_CONFIG
    work = field.order ** (n * n)
    if work > cfg.enumeration_bound:
        raise TooLargeError(
            "Class enumeration exceeds the configured bound",
            details={"n": n, "q": field.order, "work": work, "bound": cfg.enumeration_bound},
        )
    closures = [SimilarityClass.from_chain(field, chain) for chain in invariant_chains(field, n)]
    closures.sort(key=_class_sort_key)
    if group == "M":
        return list(closures)
    if group == "GL":
        return [c for c in closures if c.is_nonsingular]
    result: list[ClassHandle] = []
    for c in closures:
        if c.det == field.one:
            result.extend(sl_split(c))
    logger.debug(f"Enumerated {len(result)} classes of {group}({n}, {field.order})")
    return result


def _class_sort_key(c: SimilarityClass) -> tuple[int, tuple[int, ...]]:
    return (len(c.factors), tuple(int(f) for f in reversed(c.chain)))


# ---------------------------------------------------------------- trace sets


@dataclass(frozen=True)
class TraceSet:
    """Set of traces tr(omega psi) realized by a class pair."""

    field: FieldCtx
    members: frozenset[int]
    early_exit: bool = False

    @property
    def complete(self) -> bool:
        return len(self.members) == self.field.order

    def elements(self) -> list[FieldElement]:
        return [self.field.element(v) for v in sorted(self.members)]

    def missing(self) -> list[FieldElement]:
        return [x for x in self.field if x.value not in self.members]

    def __contains__(self, item: object) -> bool:
        return isinstance(item, FieldElement) and item.value in self.members

    def to_dict(self) -> dict[str, object]:
        return {
            "field": self.field.to_dict(),
            "members": [str(x) for x in self.elements()],
            "complete": self.complete,
            "missing": [str(x) for x in self.missing()],
        }
