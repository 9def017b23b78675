"""
Tests for interleaved block normal forms.
"""

import sys

import pytest

from classtrace.core.linalg import Matrix, companion, is_cyclic, is_similar
from classtrace.core.polynomials import poly_from_asc
from classtrace.exceptions import HypothesisViolatedError, NotCyclicError
from classtrace.witness.normal_forms import interleave_form


class TestInterleaveForm:
    """Test the even and odd interleaved shapes."""

    def test_even_shape(self, gf2):
        """companion(x^4+x+1) should become [[0, I], [C, D]]."""
        phi = companion(gf2, poly_from_asc(gf2, [1, 1, 0, 0, 1]))
        form = interleave_form(phi, seed=0)
        assert form.m == 2
        assert not form.odd
        assert form.matrix.block(0, 2, 0, 2).is_zero()
        assert form.matrix.block(0, 2, 2, 4) == Matrix.identity(gf2, 2)
        assert not form.c_block.det().is_zero
        assert is_cyclic(form.c_block)
        assert phi.conjugate(form.conjugator) == form.matrix

    def test_odd_shape(self, gf5):
        """companion(x^3-1) should become [[0, 0, I], [0, beta, *], [C, *, *]]."""
        phi = companion(gf5, poly_from_asc(gf5, [4, 0, 0, 1]))
        form = interleave_form(phi, seed=0)
        assert form.m == 1
        assert form.odd
        assert form.matrix[0, 0] == gf5.zero
        assert form.matrix[0, 1] == gf5.zero
        assert form.matrix[0, 2] == gf5.one
        assert form.matrix[1, 0] == gf5.zero
        assert form.beta == form.matrix[1, 1]
        assert not form.c_block.det().is_zero
        assert is_similar(form.matrix, phi)
        assert phi.conjugate(form.conjugator) == form.matrix

    def test_deterministic(self, gf3):
        """The same seed should give the same form."""
        phi = companion(gf3, poly_from_asc(gf3, [1, 2, 0, 2, 1]))
        assert interleave_form(phi, seed=5).matrix == interleave_form(phi, seed=5).matrix

    def test_singular(self, gf3):
        """Singular matrices are rejected."""
        phi = companion(gf3, poly_from_asc(gf3, [0, 1, 1]))
        with pytest.raises(HypothesisViolatedError):
            interleave_form(phi)

    def test_too_small(self, gf3):
        """1x1 matrices are rejected."""
        with pytest.raises(HypothesisViolatedError):
            interleave_form(Matrix.from_rows(gf3, [[1]]))

    def test_not_cyclic(self, gf3):
        """A scalar matrix has no cyclic vector."""
        with pytest.raises(NotCyclicError):
            interleave_form(Matrix.identity(gf3, 2))

    @pytest.mark.parametrize("asc", [[4, 0, 0, 1], [2, 1, 0, 3, 0, 1]])
    def test_odd_c_block_cyclic(self, gf5, asc):
        """The C block of an odd form should be cyclic."""
        form = interleave_form(companion(gf5, poly_from_asc(gf5, asc)), seed=1)
        assert is_cyclic(form.c_block)

    def test_rejects_noncyclic_c_block(self, gf2, mocker):
        """A form whose C block fails the cyclicity check is refused."""
        mocker.patch.object(
            sys.modules["classtrace.witness.normal_forms"], "is_cyclic", return_value=False
        )
        phi = companion(gf2, poly_from_asc(gf2, [1, 1, 0, 0, 1]))
        with pytest.raises(HypothesisViolatedError, match="not cyclic"):
            interleave_form(phi, seed=0)
