"""
Tests for 2x2 witnesses and the trace dichotomy.
"""

import pytest

from classtrace.core.classes import enumerate_classes
from classtrace.core.linalg import Matrix, companion, conjugate
from classtrace.core.polynomials import poly_from_asc
from classtrace.exceptions import (
    HypothesisViolatedError,
    IrreducibleOmegaError,
    ScalarClassError,
    TraceExcludedError,
)
from classtrace.witness.models import in_class
from classtrace.witness.two_by_two import (
    build_2x2,
    steer_2x2,
    trace_dichotomy_2x2,
    witness_2x2,
)


class TestTraceDichotomy:
    """Test the full/excluded prediction for 2x2 pairs."""

    def test_unipotent_with_irreducible(self, make_class, gf3):
        """A unipotent Omega and irreducible Psi should miss alpha * tr(Psi)."""
        result = trace_dichotomy_2x2(make_class(gf3, "(x-1)^2"), make_class(gf3, "x^2+1"))
        assert not result.full
        assert result.excluded == gf3.zero
        assert result.to_dict() == {"full": False, "excluded": "0"}

    def test_excluded_value_over_gf5(self, make_class, gf5):
        """Over GF(5) the excluded trace should be 1 * tr(x^2+x+1) = 4."""
        result = trace_dichotomy_2x2(make_class(gf5, "(x-1)^2"), make_class(gf5, "x^2+x+1"))
        assert result.excluded == gf5.element(4)

    def test_not_primary_is_full(self, make_class, gf3):
        """Omega with two eigenvalues should reach every trace."""
        result = trace_dichotomy_2x2(make_class(gf3, "x^2+2*x"), make_class(gf3, "x^2+1"))
        assert result.full
        assert result.excluded is None

    def test_reducible_psi_is_full(self, make_class, gf3):
        """A reducible Psi should give a full trace set."""
        assert trace_dichotomy_2x2(make_class(gf3, "(x-1)^2"), make_class(gf3, "x^2+2")).full

    def test_irreducible_omega(self, make_class, gf3):
        """Omega without an eigenvalue has no template."""
        with pytest.raises(IrreducibleOmegaError):
            trace_dichotomy_2x2(make_class(gf3, "x^2+1"), make_class(gf3, "(x-1)^2"))

    def test_scalar(self, make_class, gf3):
        """Scalar classes are rejected."""
        with pytest.raises(ScalarClassError):
            trace_dichotomy_2x2(make_class(gf3, "x-1,x-1"), make_class(gf3, "x^2+1"))

    def test_wrong_size(self, make_class, gf3):
        """Only 2x2 classes are accepted."""
        with pytest.raises(HypothesisViolatedError):
            trace_dichotomy_2x2(make_class(gf3, "(x-1)^3"), make_class(gf3, "x^3+2*x+1"))


class TestWitness2x2:
    """Test verified 2x2 constructions."""

    def test_excluded_trace_raises(self, make_class, gf3):
        """tau = 0 should be excluded for (x-1)^2 and x^2+1 over GF(3)."""
        with pytest.raises(TraceExcludedError) as exc_info:
            witness_2x2(make_class(gf3, "(x-1)^2"), make_class(gf3, "x^2+1"), gf3.zero)
        assert exc_info.value.excluded == gf3.zero

    @pytest.mark.parametrize("tau", [1, 2])
    def test_other_traces(self, make_class, gf3, tau):
        """The remaining traces should be realized."""
        omega, psi = make_class(gf3, "(x-1)^2"), make_class(gf3, "x^2+1")
        pair = witness_2x2(omega, psi, gf3.element(tau))
        assert pair.product.trace() == gf3.element(tau)
        assert in_class(pair.w, omega, "M")
        assert in_class(pair.q, psi, "M")

    @pytest.mark.parametrize("tau", [0, 1])
    def test_gf2_non_primary(self, make_class, gf2, tau):
        """diag(0,1) against the irreducible quadratic should reach both traces."""
        pair = witness_2x2(make_class(gf2, "x^2+x"), make_class(gf2, "x^2+x+1"), gf2.element(tau))
        assert pair.product.trace() == gf2.element(tau)

    def test_exhaustive_gf3(self, gf3):
        """Every reducible Omega should realize every trace except the predicted one."""
        classes = [c for c in enumerate_classes(2, gf3, "M") if not c.is_scalar]
        for omega in classes:
            if not omega.eigenvalues():
                continue
            for psi in classes:
                expected = trace_dichotomy_2x2(omega, psi)
                for tau in gf3:
                    if not expected.full and tau == expected.excluded:
                        with pytest.raises(TraceExcludedError):
                            witness_2x2(omega, psi, tau)
                        continue
                    pair = witness_2x2(omega, psi, tau)
                    assert pair.product.trace() == tau

    def test_build_records_steps(self, make_class, gf5):
        """The construction should note which template was used."""
        built = build_2x2(make_class(gf5, "x^2+2*x"), make_class(gf5, "x^2+2"), gf5.element(3))
        assert built.steps[0].startswith("2x2 lower-triangular template")


class TestSteer2x2:
    """Test conjugator steering."""

    @pytest.mark.parametrize("target", [1, 2])
    def test_reaches_target(self, gf3, target):
        """tr(A^X R) should equal the target."""
        a = Matrix.from_rows(gf3, [[1, 1], [0, 1]])
        r = companion(gf3, poly_from_asc(gf3, [1, 0, 1]))
        x = steer_2x2(a, r, gf3.element(target))
        assert (conjugate(a, x) @ r).trace() == gf3.element(target)

    def test_irreducible_first_argument(self, gf3):
        """An irreducible A should be handled by swapping the templates."""
        a = companion(gf3, poly_from_asc(gf3, [1, 0, 1]))
        r = Matrix.diag(gf3, [1, 2])
        x = steer_2x2(a, r, gf3.zero)
        assert (conjugate(a, x) @ r).trace() == gf3.zero
