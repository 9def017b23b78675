"""Polynomial helpers over a FieldCtx, built on galois.Poly."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Sequence

import galois

from .field import FieldCtx, FieldElement


def poly_from_asc(field: FieldCtx, coeffs: Sequence[int | FieldElement]) -> galois.Poly:
    """Polynomial from ascending coefficients (integer representations or elements)."""
    values = [int(c) for c in coeffs] or [0]
    return galois.Poly(list(reversed(values)), field=field.gf)


def poly_asc(poly: galois.Poly) -> tuple[int, ...]:
    """Ascending integer coefficients; the zero polynomial is (0,)."""
    return tuple(int(c) for c in reversed(poly.coeffs.tolist()))


def poly_key(poly: galois.Poly) -> tuple[int, ...]:
    return poly_asc(poly)


def poly_int(poly: galois.Poly) -> int:
    """Integer representation, used as the canonical polynomial order."""
    return int(poly)


def is_zero(poly: galois.Poly) -> bool:
    return int(poly) == 0


def constant(field: FieldCtx, value: int | FieldElement) -> galois.Poly:
    return galois.Poly([int(value)], field=field.gf)


def x_poly(field: FieldCtx) -> galois.Poly:
    return galois.Poly([1, 0], field=field.gf)


def linear(field: FieldCtx, root: FieldElement) -> galois.Poly:
    """x - root."""
    return galois.Poly([1, int(-root)], field=field.gf)


def monic(poly: galois.Poly) -> galois.Poly:
    if is_zero(poly):
        return poly
    coeffs = poly.coeffs
    return galois.Poly(coeffs / coeffs[0])


def coefficient(field: FieldCtx, poly: galois.Poly, degree: int) -> FieldElement:
    asc = poly_asc(poly)
    return field.element(asc[degree]) if degree < len(asc) else field.zero


def evaluate(field: FieldCtx, poly: galois.Poly, at: FieldElement) -> FieldElement:
    return field.element(int(poly(field.gf(at.value))))


def roots(field: FieldCtx, poly: galois.Poly) -> list[FieldElement]:
    """Roots in K in field element order."""
    values = poly(field.gf.elements)
    return [field.element(v) for v in range(field.order) if int(values[v]) == 0]


@lru_cache(maxsize=4096)
def _factor_cached(
    field: FieldCtx, key: tuple[int, ...]
) -> tuple[tuple[tuple[int, ...], int], ...]:
    poly = poly_from_asc(field, key)
    if poly.degree == 0:
        return ()
    factors, multiplicities = poly.factors()
    pairs = sorted(
        ((poly_asc(f), int(e)) for f, e in zip(factors, multiplicities)),
        key=lambda pair: (len(pair[0]), tuple(reversed(pair[0]))),
    )
    return tuple(pairs)


def factor(field: FieldCtx, poly: galois.Poly) -> list[tuple[galois.Poly, int]]:
    """Monic irreducible factorization, factors sorted by degree then coefficients."""
    return [(poly_from_asc(field, f), e) for f, e in _factor_cached(field, poly_key(monic(poly)))]


def is_irreducible(poly: galois.Poly) -> bool:
    return poly.degree >= 1 and bool(poly.is_irreducible())


def monic_polys(field: FieldCtx, degree: int) -> Iterator[galois.Poly]:
    """All monic polynomials of the given degree in coefficient order."""
    for tail in itertools.product(range(field.order), repeat=degree):
        yield poly_from_asc(field, list(reversed(tail)) + [1])


def format_poly(field: FieldCtx, poly: galois.Poly, var: str = "x") -> str:
    """Expanded text form, highest degree first, e.g. "x^2+2*x+1"."""
    asc = poly_asc(poly)
    terms = []
    for degree in range(len(asc) - 1, -1, -1):
        c = asc[degree]
        if c == 0:
            continue
        text = field.format_element(c)
        if "+" in text:
            text = f"({text})"
        if degree == 0:
            terms.append(text)
            continue
        mono = var if degree == 1 else f"{var}^{degree}"
        terms.append(mono if c == 1 else f"{text}*{mono}")
    return "+".join(terms) if terms else "0"
