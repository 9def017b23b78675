"""
Tests for brute-force orbits, trace sets and class products.
"""

import pytest

from classtrace.config import EngineConfig
from classtrace.core.classes import class_of, enumerate_classes, sl_split
from classtrace.core.linalg import Matrix, companion
from classtrace.core.polynomials import poly_from_asc
from classtrace.exceptions import BudgetExceededError
from classtrace.oracle.orbits import (
    acting_group,
    class_product_decomposition,
    group_order,
    orbit,
    orbit_size,
    trace_set,
    trace_set_double,
)


class TestOrbit:
    """Test conjugation orbits."""

    def test_sl2_3_unipotent(self, gf3):
        """J2(1) has an SL(2, 3) orbit of size 4."""
        assert orbit_size(Matrix.from_rows(gf3, [[1, 1], [0, 1]]), "SL") == 4

    def test_gl2_3_unipotent(self, gf3):
        """Under GL(2, 3) both unipotent SL classes merge: 48 / 6 = 8."""
        assert orbit_size(Matrix.from_rows(gf3, [[1, 1], [0, 1]]), "GL") == 8

    def test_gl3_2_irreducible(self, gf2):
        """companion(x^3+x+1) has centralizer of order 7 in GL(3, 2), so 168 / 7 = 24."""
        rep = companion(gf2, poly_from_asc(gf2, [1, 1, 0, 1]))
        assert orbit_size(rep, "GL") == 24

    def test_members_are_similar(self, gf3):
        """Every orbit member lies in the class of the representative."""
        rep = Matrix.from_rows(gf3, [[0, 1], [2, 0]])
        target = class_of(rep, "M")
        members = list(orbit(rep, "GL"))
        assert len(members) == len({m.key() for m in members})
        assert all(class_of(m, "M") == target for m in members)

    def test_orbit_stabilizer(self, gf3):
        """Orbit sizes sum to |M(2, 3)| over all similarity classes."""
        total = sum(orbit_size(c.representative(), "GL") for c in enumerate_classes(2, gf3, "M"))
        assert total == 3**4

    def test_budget(self, gf3, tiny_budget):
        """The budget is enforced while the orbit is generated."""
        rep = Matrix.from_rows(gf3, [[1, 1], [0, 1]])
        with pytest.raises(BudgetExceededError) as exc_info:
            orbit_size(rep, "GL", config=tiny_budget)
        assert exc_info.value.details["budget"] == 3

    def test_scalar_orbit(self, gf5):
        """Scalar matrices are fixed."""
        assert list(orbit(Matrix.identity(gf5, 3))) == [Matrix.identity(gf5, 3)]


class TestGroupOrder:
    """Test |GL(n, q)| and |SL(n, q)|."""

    @pytest.mark.parametrize(
        "n, group, expected", [(2, "GL", 48), (2, "SL", 24), (3, "GL", 11232), (3, "SL", 5616)]
    )
    def test_orders(self, gf3, n, group, expected):
        assert group_order(gf3, n, group) == expected


class TestActingGroup:
    """Test which group conjugates a class."""

    def test_similarity_class(self, gf3, make_class):
        assert acting_group(make_class(gf3, "(x-1)^2")) == "GL"

    def test_sl_class(self, gf3, make_class):
        assert acting_group(make_class(gf3, "(x-1)^2", "SL")) == "SL"


class TestTraceSet:
    """Test oracle trace sets."""

    def test_dichotomy_gap(self, gf3, make_class):
        """(x-1)^2 against x^2+1 misses exactly 0."""
        traces = trace_set(make_class(gf3, "(x-1)^2"), make_class(gf3, "x^2+1"))
        assert not traces.complete
        assert traces.missing() == [gf3.zero]

    @pytest.mark.parametrize("psi", ["x^2+1", "x^2+x+2", "x^2+2*x+2"])
    def test_irreducible_gl2_3(self, gf3, make_class, psi):
        """Irreducible GL(2, 3) classes reach every trace against x^2+1."""
        assert trace_set(make_class(gf3, "x^2+1"), make_class(gf3, psi)).complete

    def test_early_exit_flag(self, gf3, make_class):
        """A complete set found early is flagged."""
        traces = trace_set(make_class(gf3, "x^2+2*x"), make_class(gf3, "x^2+1"))
        assert traces.complete
        assert traces.early_exit

    def test_without_early_exit(self, gf3, make_class):
        traces = trace_set(make_class(gf3, "x^2+2*x"), make_class(gf3, "x^2+1"), early_exit=False)
        assert traces.complete
        assert not traces.early_exit

    def test_matches_double_enumeration(self, gf3):
        """Fixing Psi to its representative loses nothing."""
        classes = [c for c in enumerate_classes(2, gf3, "M") if not c.is_scalar]
        for omega in classes[:4]:
            for psi in classes:
                assert trace_set(omega, psi, early_exit=False).members == trace_set_double(omega, psi).members

    def test_sl_classes(self, gf3, make_class):
        """SL orbits are used for split classes."""
        first, second = sl_split(make_class(gf3, "(x-1)^2"))
        assert trace_set(first, second, early_exit=False) == trace_set_double(first, second)


class TestClassProducts:
    """Test class-product decompositions."""

    def test_identity_factor(self, gf3, make_class):
        """Multiplying by the identity class returns the class itself."""
        omega = make_class(gf3, "(x-1)^2")
        assert class_product_decomposition(omega, make_class(gf3, "x-1,x-1")) == [omega]

    def test_unipotent_square(self, gf3, make_class):
        """J2(1) times its class meets the identity and (x-1)^2 among others."""
        omega = make_class(gf3, "(x-1)^2")
        texts = [c.to_text() for c in class_product_decomposition(omega, omega)]
        assert "x+2,x+2" in texts
        assert "x^2+x+1" in texts
        assert texts == sorted(texts)

    def test_budget(self, gf3, make_class):
        omega = make_class(gf3, "(x-1)^2")
        with pytest.raises(BudgetExceededError):
            class_product_decomposition(omega, omega, config=EngineConfig(orbit_budget=2))


class TestIrreducibleGL23Products:
    """Products of the irreducible GL(2, 3) classes x^2+1 and x^2+x-1."""

    @pytest.fixture
    def classes(self, gf3, make_class):
        texts = {
            "omega": "x^2+1",
            "psi": "x^2+x+2",
            "minus_psi": "x^2+2*x+2",
            "identity": "x+2,x+2",
            "minus_identity": "x+1,x+1",
            "unipotent": "(x-1)^2",
            "reflection": "x^2+2",
        }
        return {name: make_class(gf3, text) for name, text in texts.items()}

    def test_omega_squared(self, classes):
        """x^2+1 squared is itself plus I and -I."""
        product = set(class_product_decomposition(classes["omega"], classes["omega"]))
        assert product == {classes["omega"], classes["identity"], classes["minus_identity"]}

    def test_psi_squared(self, classes):
        """x^2+x-1 squared is x^2+1, -I and the unipotent class."""
        product = set(class_product_decomposition(classes["psi"], classes["psi"]))
        assert product == {classes["minus_identity"], classes["omega"], classes["unipotent"]}

    def test_omega_psi(self, classes):
        """The mixed product is Psi, -Psi and diag(1, -1)."""
        product = set(class_product_decomposition(classes["omega"], classes["psi"]))
        assert product == {classes["reflection"], classes["minus_psi"], classes["psi"]}

    @pytest.mark.parametrize("left, right", [("omega", "omega"), ("omega", "psi"), ("psi", "psi")])
    def test_trace_sets_cover_field(self, classes, left, right):
        """Each product reaches every trace of GF(3)."""
        traces = trace_set(classes[left], classes[right], early_exit=False)
        assert traces.members == frozenset({0, 1, 2})
