"""
Tests for block factorizations, split products and corner embeddings.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from classtrace.config import EngineConfig
from classtrace.core.classes import SimilarityClass, minimal_rank
from classtrace.core.field import field_create
from classtrace.core.linalg import (
    Matrix,
    block_matrix,
    companion,
    direct_sum,
    is_similar,
    random_invertible,
    random_matrix,
)
from classtrace.core.polynomials import poly_from_asc
from classtrace.exceptions import (
    DimensionMismatchError,
    HypothesisViolatedError,
    NoLUError,
    PreconditionViolatedError,
)
from classtrace.witness.factorization import (
    admissible_blocks,
    clearing_conjugator,
    cyclic_class,
    block_factor,
    embed_corner,
    split_product,
)
from classtrace.witness.models import in_class


class TestCyclicClass:
    """Test the companion class with prescribed trace and determinant."""

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_trace_and_det(self, gf5, m):
        """The class should carry the requested trace and determinant."""
        c = cyclic_class(gf5, m, gf5.element(3), gf5.element(2))
        assert c.n == m
        assert c.is_cyclic
        assert c.trace == gf5.element(3)
        assert c.det == gf5.element(2)

    def test_too_small(self, gf5):
        """m = 1 cannot prescribe both invariants."""
        with pytest.raises(HypothesisViolatedError):
            cyclic_class(gf5, 1, gf5.one, gf5.one)


class TestBlockFactorization:
    """Test W Q = [[delta, z], [0, D]]."""

    def test_gf2_companion_pair(self, gf2, make_class):
        """companion(x^3+x+1) twice over GF(2) should factor with D = [[1,1],[0,1]]."""
        omega = make_class(gf2, "x^3+x+1")
        d = Matrix.from_rows(gf2, [[1, 1], [0, 1]])
        result = block_factor(omega, omega, d, seed=0)
        product = result.product
        assert result.delta == gf2.one
        assert product[0, 0] == result.delta
        assert product.block(1, 3, 0, 1).is_zero()
        assert product.block(1, 3, 1, 3) == d
        assert product.block(0, 1, 1, 3) == result.z
        assert in_class(result.w, omega, "M")
        assert in_class(result.q, omega, "M")

    def test_gf5_delta(self, gf5, make_class):
        """delta should be det(Omega) det(Psi) / det(D)."""
        omega = make_class(gf5, "x^3+3")
        psi = make_class(gf5, "x^3+x+1")
        d = Matrix.from_rows(gf5, [[2, 1], [1, 1]])
        result = block_factor(omega, psi, d, seed=1)
        assert result.delta == omega.det * psi.det / d.det()
        assert result.product.block(1, 3, 1, 3) == d
        assert in_class(result.w, omega, "M")
        assert in_class(result.q, psi, "M")

    def test_noncyclic(self, gf3, make_class):
        """A noncyclic class should be rejected."""
        d = Matrix.from_rows(gf3, [[1, 0], [0, 1]])
        with pytest.raises(HypothesisViolatedError):
            block_factor(make_class(gf3, "x-1,(x-1)^2"), make_class(gf3, "(x-1)^3"), d)

    def test_no_lu(self, gf3, make_class):
        """D with a zero leading minor has no LU factorization."""
        d = Matrix.from_rows(gf3, [[0, 1], [1, 0]])
        with pytest.raises(NoLUError):
            block_factor(make_class(gf3, "(x-1)^3"), make_class(gf3, "(x-1)^3"), d)

    def test_wrong_block_size(self, gf3, make_class):
        """D must be (n-1) x (n-1)."""
        with pytest.raises(DimensionMismatchError):
            block_factor(
                make_class(gf3, "(x-1)^3"), make_class(gf3, "(x-1)^3"), Matrix.identity(gf3, 3)
            )


class TestClearingConjugator:
    """Test the unipotent that removes z."""

    def test_clears_block_row(self, gf5):
        """G^-1 [[lam, z], [0, M]] G should be lam + M."""
        lam = gf5.element(2)
        m_block = Matrix.from_rows(gf5, [[1, 1], [0, 3]])
        z = Matrix.from_rows(gf5, [[4, 1]])
        a = block_matrix(gf5, [[Matrix.from_rows(gf5, [[2]]), z], [Matrix.zeros(gf5, 2, 1), m_block]])
        g = clearing_conjugator(lam, z, m_block)
        assert a.conjugate(g) == direct_sum(gf5, Matrix.from_rows(gf5, [[2]]), m_block)


class TestSplitProduct:
    """Test W Q = lam + M."""

    def test_direct_sum_product(self, gf5, make_class):
        """The product should be the direct sum exactly."""
        omega = make_class(gf5, "(x-1)^3")
        psi = make_class(gf5, "x^3+3")
        m_block = Matrix.from_rows(gf5, [[2, 1], [1, 1]])
        result = split_product(omega, psi, m_block, seed=2)
        expected = direct_sum(gf5, Matrix.from_rows(gf5, [[result.lam]]), m_block)
        assert result.w @ result.q == expected
        assert in_class(result.w, omega, "M")
        assert in_class(result.q, psi, "M")


class TestAdmissibleBlocks:
    """Test candidate M blocks."""

    def test_scalars_first(self, gf5):
        """The first candidates should be scalar with lam != mu."""
        target = gf5.element(2)
        first = next(admissible_blocks(gf5, 2, target, seed=0, config=EngineConfig()))
        mu = first[0, 0]
        assert first == Matrix.scalar(gf5, 2, mu)
        assert target / first.det() != mu


class TestEmbedCorner:
    """Test placing a prescribed corner block."""

    def test_corner_already_matches(self, gf3):
        """If the corner already equals A the identity is returned."""
        m = companion(gf3, poly_from_asc(gf3, [1, 2, 0, 0, 1]))
        a = m.block(0, 2, 0, 2)
        assert embed_corner(m, a) == Matrix.identity(gf3, 4)

    def test_embeds_corner(self, gf3):
        """A cyclic M of minimal rank 3 should take diag(0, 1) in its corner."""
        m = companion(gf3, poly_from_asc(gf3, [1, 2, 0, 2, 1]))
        assert minimal_rank(m) == 3
        a = Matrix.diag(gf3, [0, 1])
        t = embed_corner(m, a, seed=0)
        embedded = m.conjugate(t)
        assert embedded.block(0, 2, 0, 2) == a
        assert is_similar(embedded, m)

    def test_block_too_large(self, gf3):
        """2k > n should be rejected."""
        jordan = Matrix.from_rows(gf3, [[1, 1], [0, 1]])
        m = direct_sum(gf3, jordan, jordan)
        with pytest.raises(PreconditionViolatedError):
            embed_corner(m, Matrix.identity(gf3, 3))

    def test_singular(self, gf3):
        """Singular M is rejected."""
        m = companion(gf3, poly_from_asc(gf3, [0, 1, 0, 0, 1]))
        with pytest.raises(PreconditionViolatedError):
            embed_corner(m, Matrix.diag(gf3, [0, 1]))

    def test_minimal_rank_too_small(self, gf3):
        """k above the minimal rank is rejected."""
        m = direct_sum(gf3, Matrix.identity(gf3, 3), Matrix.from_rows(gf3, [[2]]))
        assert minimal_rank(m) == 1
        with pytest.raises(PreconditionViolatedError):
            embed_corner(m, Matrix.diag(gf3, [0, 1]))

    def test_non_square(self, gf3):
        """A must be square."""
        with pytest.raises(DimensionMismatchError):
            embed_corner(Matrix.identity(gf3, 4), Matrix.zeros(gf3, 1, 2))


def random_cyclic_class(field, n, rng):
    coeffs = [int(c) for c in rng.integers(0, field.order, size=n)]
    return SimilarityClass.from_chain(field, [poly_from_asc(field, coeffs + [1])])


def random_lu_block(field, size, rng):
    """(size x size) matrix with nonvanishing leading principal minors."""
    entries = rng.integers(0, field.order, size=(2, size, size))
    lower = np.tril(entries[0], -1) + np.eye(size, dtype=np.int64)
    upper = np.triu(entries[1], 1) + np.diag(rng.integers(1, field.order, size=size))
    return Matrix.from_ints(field, lower) @ Matrix.from_ints(field, upper)


FIELDS = {q: field_create(q) for q in (2, 3, 5)}


class TestBlockFactorProperties:
    """Randomized block factorizations over small prime fields."""

    @pytest.mark.timeout(900)
    @settings(max_examples=500, deadline=None)
    @given(
        q=st.sampled_from([2, 3, 5]),
        n=st.integers(min_value=2, max_value=5),
        seed=st.integers(min_value=0, max_value=2**32 - 1),
    )
    def test_product_shape(self, q, n, seed):
        """W and Q should lie in their classes with W Q = [[delta, z], [0, D]]."""
        field = FIELDS[q]
        rng = np.random.default_rng(seed)
        omega = random_cyclic_class(field, n, rng)
        psi = random_cyclic_class(field, n, rng)
        d = random_lu_block(field, n - 1, rng)
        factored = block_factor(omega, psi, d, seed=seed % 1000)
        assert in_class(factored.w, omega, "M")
        assert in_class(factored.q, psi, "M")
        product = factored.product
        assert product.block(1, n, 1, n) == d
        assert product.block(1, n, 0, 1).is_zero()
        assert product[0, 0] == factored.delta == omega.det * psi.det / d.det()


class TestEmbedCornerProperties:
    """Seeded corner embeddings across sizes and fields."""

    @pytest.mark.slow
    @pytest.mark.timeout(1200)
    def test_seeded_triples(self):
        """Every admissible (M, A) pair should embed A as the top-left corner of a conjugate."""
        rng = np.random.default_rng(2024)
        checked = 0
        while checked < 300:
            field = FIELDS[int(rng.choice([2, 3, 5]))]
            n = int(rng.integers(2, 7))
            m = random_invertible(field, n, rng)
            mr = minimal_rank(m)
            if mr == 0:
                continue
            k = int(rng.integers(1, min(n // 2, mr) + 1))
            a = random_matrix(field, k, k, rng)
            t = embed_corner(m, a, seed=checked)
            embedded = m.conjugate(t)
            assert embedded.block(0, k, 0, k) == a
            assert is_similar(embedded, m)
            checked += 1
