"""
Tests for polynomial helpers.
"""

from classtrace.core.polynomials import (
    coefficient,
    evaluate,
    factor,
    format_poly,
    is_irreducible,
    linear,
    monic,
    monic_polys,
    poly_asc,
    poly_from_asc,
    roots,
)


class TestPolynomialBasics:
    """Test construction and coefficient access."""

    def test_ascending_round_trip(self, gf3):
        """Should keep ascending coefficients."""
        poly = poly_from_asc(gf3, [1, 0, 2])
        assert poly_asc(poly) == (1, 0, 2)
        assert poly.degree == 2

    def test_zero_polynomial(self, gf3):
        """Empty coefficients should give the zero polynomial."""
        assert poly_asc(poly_from_asc(gf3, [])) == (0,)

    def test_coefficient_beyond_degree(self, gf3):
        """Coefficients past the degree should be zero."""
        poly = poly_from_asc(gf3, [1, 1])
        assert coefficient(gf3, poly, 1) == gf3.one
        assert coefficient(gf3, poly, 5) == gf3.zero

    def test_monic(self, gf5):
        """Should scale by the inverse leading coefficient."""
        assert poly_asc(monic(poly_from_asc(gf5, [1, 2]))) == (3, 1)

    def test_linear_and_evaluate(self, gf5):
        """x - r should vanish at r."""
        r = gf5.element(3)
        assert evaluate(gf5, linear(gf5, r), r) == gf5.zero
        assert evaluate(gf5, linear(gf5, r), gf5.zero) == gf5.element(2)


class TestRootsAndFactors:
    """Test roots and factorization."""

    def test_roots_in_order(self, gf5):
        """x^2 - 1 over GF(5) should have roots 1 and 4."""
        poly = poly_from_asc(gf5, [4, 0, 1])
        assert [r.value for r in roots(gf5, poly)] == [1, 4]

    def test_no_roots(self, gf3):
        """x^2 + 1 should have no roots over GF(3)."""
        assert roots(gf3, poly_from_asc(gf3, [1, 0, 1])) == []
        assert is_irreducible(poly_from_asc(gf3, [1, 0, 1]))

    def test_factor_sorted(self, gf3):
        """Should return monic factors by degree with multiplicities."""
        poly = poly_from_asc(gf3, [1, 0, 1]) * poly_from_asc(gf3, [2, 1]) ** 2
        factors = factor(gf3, poly)
        assert [(poly_asc(f), e) for f, e in factors] == [((2, 1), 2), ((1, 0, 1), 1)]

    def test_constant_has_no_factors(self, gf3):
        """A nonzero constant should factor into nothing."""
        assert factor(gf3, poly_from_asc(gf3, [2])) == []

    def test_irreducible_in_extension(self, gf9):
        """x^2 + 1 should split over GF(9)."""
        assert not is_irreducible(poly_from_asc(gf9, [1, 0, 1]))
        assert len(roots(gf9, poly_from_asc(gf9, [1, 0, 1]))) == 2


class TestMonicPolys:
    """Test monic enumeration."""

    def test_count(self, gf3):
        """There should be q^d monic polynomials of degree d."""
        polys = list(monic_polys(gf3, 2))
        assert len(polys) == 9
        assert all(p.degree == 2 and poly_asc(p)[-1] == 1 for p in polys)

    def test_first_is_power_of_x(self, gf2):
        """The enumeration should start with x^d."""
        assert poly_asc(next(monic_polys(gf2, 3))) == (0, 0, 0, 1)


class TestFormatPoly:
    """Test text rendering."""

    def test_prime_field(self, gf3):
        """Should print highest degree first with explicit coefficients."""
        assert format_poly(gf3, poly_from_asc(gf3, [1, 1, 1])) == "x^2+x+1"
        assert format_poly(gf3, poly_from_asc(gf3, [2, 1])) == "x+2"
        assert format_poly(gf3, poly_from_asc(gf3, [0, 2, 1])) == "x^2+2*x"

    def test_zero(self, gf3):
        """The zero polynomial should print as 0."""
        assert format_poly(gf3, poly_from_asc(gf3, [0])) == "0"

    def test_extension_coefficients_parenthesized(self, gf4):
        """Composite coefficients should be wrapped in parentheses."""
        assert format_poly(gf4, poly_from_asc(gf4, [3, 2, 1])) == "x^2+g*x+(1+g)"
