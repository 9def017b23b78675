"""
Exact arithmetic in GF(p^k).

A FieldCtx wraps a galois FieldArray class built from an explicit modulus.
Elements are stored by their integer representation: the element
c0 + c1*g + ... + c_{k-1}*g^(k-1), where g is the class of x modulo the
modulus, is the integer c0 + c1*p + ... + c_{k-1}*p^(k-1). This is the
ordering used for "the deterministic field element order" throughout.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Literal, Sequence

import galois
import numpy as np

from ..config import DEFAULT_CONFIG
from ..exceptions import (
    DivisionByZeroError,
    FieldError,
    FieldTooLargeError,
    MixedFieldsError,
    NotPrimeError,
    ReducibleModulusError,
)

logger = logging.getLogger(__name__)

ArithOp = Literal["add", "sub", "mul", "div", "pow", "inv", "neg"]


class FieldCtx:
    """Immutable GF(p^k) context."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...], gf: type[galois.FieldArray]):
        self.p = p
        self.k = k
        self.modulus = modulus  # ascending coefficients, monic, length k + 1
        self.gf = gf
        self.order = p**k
        self._key = (p, k, modulus)

    @property
    def key(self) -> tuple[int, int, tuple[int, ...]]:
        return self._key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldCtx) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    # ------------------------------------------------------------ elements

    def element(self, value: int) -> FieldElement:
        if not 0 <= value < self.order:
            raise FieldError(
                "Integer representation out of range", details={"value": value, "field": repr(self)}
            )
        return FieldElement(self, int(value))

    def from_int(self, n: int) -> FieldElement:
        """Image of the integer n under Z -> GF(p) -> K."""
        return FieldElement(self, n % self.p)

    def from_coeffs(self, coeffs: Sequence[int]) -> FieldElement:
        """Element c0 + c1*g + ... from ascending coefficients over GF(p)."""
        if len(coeffs) > self.k:
            raise FieldError(
                "Too many coefficients for the field degree",
                details={"coeffs": list(coeffs), "k": self.k},
            )
        value = 0
        for c in reversed(coeffs):
            value = value * self.p + (int(c) % self.p)
        return FieldElement(self, value)

    def coeffs(self, value: int) -> tuple[int, ...]:
        digits = []
        for _ in range(self.k):
            value, digit = divmod(value, self.p)
            digits.append(digit)
        return tuple(digits)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def generator(self) -> FieldElement:
        """The class g of x modulo the modulus (equals the prime-field element 0 when k = 1)."""
        return FieldElement(self, self.p if self.k > 1 else 0)

    @property
    def primitive(self) -> FieldElement:
        """A generator of the multiplicative group K*."""
        return FieldElement(self, int(self.gf.primitive_element))

    def units(self) -> list[FieldElement]:
        return [FieldElement(self, v) for v in range(1, self.order)]

    def __iter__(self) -> Iterator[FieldElement]:
        return (FieldElement(self, v) for v in range(self.order))

    def array(self, values: object) -> galois.FieldArray:
        return self.gf(np.asarray(values, dtype=np.int64))

    def format_element(self, value: int) -> str:
        """Text form: plain integers for prime fields, "c0+c1*g+c2*g^2" otherwise."""
        if self.k == 1:
            return str(value)
        terms = []
        for i, c in enumerate(self.coeffs(value)):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            power = "g" if i == 1 else f"g^{i}"
            terms.append(power if c == 1 else f"{c}*{power}")
        return "+".join(terms) if terms else "0"

    def to_dict(self) -> dict[str, object]:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}


@dataclass(frozen=True)
class FieldElement:
    """Value-type element of a FieldCtx."""

    owner: FieldCtx
    value: int

    def _peer(self, other: object) -> FieldElement:
        if not isinstance(other, FieldElement):
            raise TypeError(f"unsupported operand type: {type(other).__name__}")
        if other.owner != self.owner:
            raise MixedFieldsError(
                "Arithmetic across different fields",
                details={"left": repr(self.owner), "right": repr(other.owner)},
            )
        return other

    def _wrap(self, result: galois.FieldArray) -> FieldElement:
        return FieldElement(self.owner, int(result))

    @property
    def scalar(self) -> galois.FieldArray:
        return self.owner.gf(self.value)

    def __add__(self, other: object) -> FieldElement:
        return self._wrap(self.scalar + self._peer(other).scalar)

    def __sub__(self, other: object) -> FieldElement:
        return self._wrap(self.scalar - self._peer(other).scalar)

    def __mul__(self, other: object) -> FieldElement:
        return self._wrap(self.scalar * self._peer(other).scalar)

    def __truediv__(self, other: object) -> FieldElement:
        divisor = self._peer(other)
        if divisor.value == 0:
            raise DivisionByZeroError("Division by zero", details={"field": repr(self.owner)})
        return self._wrap(self.scalar / divisor.scalar)

    def __neg__(self) -> FieldElement:
        return self._wrap(-self.scalar)

    def __pow__(self, exponent: int) -> FieldElement:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return self._wrap(self.scalar**exponent)

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise DivisionByZeroError("Zero has no inverse", details={"field": repr(self.owner)})
        return self._wrap(np.reciprocal(self.scalar))

    def frobenius(self) -> FieldElement:
        return self ** self.owner.p

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.owner.coeffs(self.value)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return self.owner.format_element(self.value)

    def __repr__(self) -> str:
        return f"FieldElement({self}, {self.owner!r})"


def arith(a: FieldElement, b: FieldElement | int | None, op: ArithOp) -> FieldElement:
    """Apply one field operation; `b` is the exponent for pow and ignored for inv/neg."""
    if op == "add":
        return a + _operand(a, b)
    if op == "sub":
        return a - _operand(a, b)
    if op == "mul":
        return a * _operand(a, b)
    if op == "div":
        return a / _operand(a, b)
    if op == "pow":
        if not isinstance(b, int):
            raise FieldError("pow expects an integer exponent", details={"exponent": repr(b)})
        return a**b
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    raise FieldError(f"Unknown field operation '{op}'")


def _operand(a: FieldElement, b: FieldElement | int | None) -> FieldElement:
    if not isinstance(b, FieldElement):
        raise FieldError("Binary field operation needs a field element operand")
    return a._peer(b)


# ------------------------------------------------------------ construction


def field_create(
    p: int,
    k: int = 1,
    modulus: Sequence[int] | galois.Poly | None = None,
    *,
    bound: int | None = None,
) -> FieldCtx:
    """
    Build GF(p^k).

    Args:
        p: Characteristic.
        k: Extension degree.
        modulus: Monic irreducible polynomial of degree k over GF(p), as ascending
            coefficients or a galois.Poly. Defaults to the smallest one in the
            lexicographic order of coefficients read from the leading term down.
        bound: Largest accepted order (EngineConfig.field_bound when omitted).

    Raises:
        NotPrimeError, ReducibleModulusError, FieldTooLargeError
    """
    limit = DEFAULT_CONFIG.field_bound if bound is None else bound
    if p < 2 or not galois.is_prime(p):
        raise NotPrimeError(f"{p} is not prime", details={"p": p})
    if k < 1:
        raise FieldError("Extension degree must be positive", details={"k": k})
    if p**k > limit:
        raise FieldTooLargeError(
            f"GF({p}^{k}) exceeds the field bound", details={"order": p**k, "bound": limit}
        )

    if modulus is None:
        coeffs = _default_modulus(p, k)
    else:
        coeffs = _validate_modulus(p, k, modulus)
    return _build_field(p, k, coeffs)


def field_from_order(q: int, modulus: Sequence[int] | None = None, *, bound: int | None = None) -> FieldCtx:
    """Build GF(q) from the order alone."""
    if q < 2 or not galois.is_prime_power(q):
        raise NotPrimeError(f"{q} is not a prime power", details={"q": q})
    primes, exponents = galois.factors(q)
    return field_create(int(primes[0]), int(exponents[0]), modulus, bound=bound)


@lru_cache(maxsize=None)
def _default_modulus(p: int, k: int) -> tuple[int, ...]:
    if k == 1:
        return (0, 1)
    poly = galois.irreducible_poly(p, k, method="min")
    return _ascending(poly)


def _validate_modulus(p: int, k: int, modulus: Sequence[int] | galois.Poly) -> tuple[int, ...]:
    if isinstance(modulus, galois.Poly):
        coeffs = _ascending(modulus)
    else:
        coeffs = tuple(int(c) % p for c in modulus)
    details = {"p": p, "k": k, "modulus": list(coeffs)}
    if len(coeffs) != k + 1 or coeffs[-1] != 1:
        raise ReducibleModulusError("Modulus must be monic of degree k", details=details)
    if k > 1:
        poly = galois.Poly(list(reversed(coeffs)), field=galois.GF(p))
        if not poly.is_irreducible():
            raise ReducibleModulusError("Modulus is reducible over GF(p)", details=details)
    return coeffs


@lru_cache(maxsize=None)
def _build_field(p: int, k: int, modulus: tuple[int, ...]) -> FieldCtx:
    if k == 1:
        gf = galois.GF(p)
    else:
        poly = galois.Poly(list(reversed(modulus)), field=galois.GF(p))
        gf = galois.GF(p**k, irreducible_poly=poly)
    logger.debug(f"Built GF({p}^{k}) with modulus {list(modulus)}")
    return FieldCtx(p, k, modulus, gf)


def _ascending(poly: galois.Poly) -> tuple[int, ...]:
    return tuple(int(c) for c in reversed(poly.coeffs.tolist()))


def enumerate_elements(field: FieldCtx) -> list[FieldElement]:
    """All elements in integer-representation order."""
    return list(field)


# ------------------------------------------------------------ extensions


class Embedding:
    """Field homomorphism K -> L given by sending g to a fixed root of K's modulus in L."""

    def __init__(self, source: FieldCtx, target: FieldCtx, table: np.ndarray):
        self.source = source
        self.target = target
        self.table = table  # table[v] = integer representation of the image of v

    def __call__(self, a: FieldElement) -> FieldElement:
        if a.owner != self.source:
            raise MixedFieldsError(
                "Element does not belong to the embedding's source field",
                details={"source": repr(self.source), "element_field": repr(a.owner)},
            )
        return FieldElement(self.target, int(self.table[a.value]))

    def map_array(self, values: np.ndarray) -> galois.FieldArray:
        ints = np.asarray(values.view(np.ndarray), dtype=np.int64)
        return self.target.gf(self.table[ints])


def extension_field(
    field: FieldCtx, d: int, *, bound: int | None = None
) -> tuple[FieldCtx, Embedding]:
    """
    GF(p^(kd)) together with an embedding of `field`.

    Raises:
        FieldTooLargeError: If p^(kd) exceeds the extension bound.
    """
    limit = DEFAULT_CONFIG.extension_bound if bound is None else bound
    if d < 1:
        raise FieldError("Extension degree must be positive", details={"d": d})
    target = field_create(field.p, field.k * d, bound=limit)
    return target, _embedding(field, target)


@lru_cache(maxsize=None)
def _embedding(source: FieldCtx, target: FieldCtx) -> Embedding:
    if source.k == 1:
        table = np.arange(source.order, dtype=np.int64)
        return Embedding(source, target, table)

    lifted = galois.Poly(list(reversed(source.modulus)), field=target.gf)
    values = lifted(target.gf.elements)
    roots = np.flatnonzero(values.view(np.ndarray) == 0)
    if roots.size == 0:
        raise FieldError(
            "Modulus has no root in the extension",
            details={"source": repr(source), "target": repr(target)},
        )
    zeta = target.gf(int(roots[0]))
    powers = [target.gf(1)]
    for _ in range(1, source.k):
        powers.append(powers[-1] * zeta)

    table = np.zeros(source.order, dtype=np.int64)
    for v in range(source.order):
        image = target.gf(0)
        for c, power in zip(source.coeffs(v), powers):
            if c:
                image = image + target.gf(c) * power
        table[v] = int(image)
    return Embedding(source, target, table)

