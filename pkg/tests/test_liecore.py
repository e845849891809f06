"""Tests for Cartan data, root systems, Chevalley bases and weights."""
import pytest

from src.errors import InvalidCartanMatrixError, NonDominantWeightError
from src.liecore.algebra import bracket_fin, build_algebra, invariant_form, verify_matrix_realization
from src.liecore.cartan import CartanData
from src.liecore.weights import FinWeight, dual_dominant_weight, simple_reflection, weyl_dimension


class TestCartanData:
    def test_parse(self):
        data = CartanData.parse("a2")
        assert data.label == "A2"
        assert data.matrix == ((2, -1), (-1, 2))

    def test_bad_label(self):
        with pytest.raises(InvalidCartanMatrixError):
            CartanData.parse("A")

    def test_non_simply_laced_rejected(self):
        with pytest.raises(ValueError):
            CartanData.parse("B2")

    def test_rank_must_be_positive(self):
        with pytest.raises(ValueError):
            CartanData(type="A", rank=0)


class TestRootSystem:
    def test_sl3_roots(self, sl3):
        assert sl3.roots.positive == [(0, 1), (1, 0), (1, 1)]
        assert sl3.roots.highest == (1, 1)
        assert sl3.roots.affine_marks() == (1, 1, 1)

    def test_affine_matrix_sl2(self, sl2):
        assert sl2.roots.affine_matrix() == ((2, -2), (-2, 2))

    def test_d4_marks(self):
        algebra = build_algebra(CartanData.parse("D4"))
        assert len(algebra.roots) == 12
        assert max(algebra.roots.marks) == 2


class TestChevalleyAlgebra:
    def test_dimensions(self, sl2, sl3):
        assert sl2.dim == 3
        assert sl3.dim == 8

    def test_sl2_relations(self, sl2):
        theta = sl2.roots.highest
        x, y, h = (sl2.basis_element(k) for k in (sl2.plus(theta), sl2.minus(theta), sl2.cartan(1)))
        assert bracket_fin(x, y).vector == h.vector
        assert bracket_fin(h, x).vector == x.vector.scale(2)
        assert bracket_fin(h, y).vector == y.vector.scale(-2)
        assert invariant_form(x, y) == 1
        assert invariant_form(h, h) == 2

    @pytest.mark.parametrize("label", ["A1", "A2"])
    def test_matrix_realization(self, label):
        assert verify_matrix_realization(build_algebra(CartanData.parse(label))) == []

    def test_realization_is_type_a_only(self):
        with pytest.raises(ValueError):
            verify_matrix_realization(build_algebra(CartanData.parse("D4")))


class TestWeights:
    def test_weyl_dimension(self, sl2, sl3):
        assert weyl_dimension(sl2, FinWeight.of(2)) == 3
        assert weyl_dimension(sl3, FinWeight.of(1, 1)) == 8
        assert weyl_dimension(sl3, FinWeight.of(2, 0)) == 6

    def test_non_dominant(self, sl2):
        with pytest.raises(NonDominantWeightError):
            weyl_dimension(sl2, FinWeight.of(-1))

    def test_dual(self, sl3):
        assert dual_dominant_weight(sl3, FinWeight.of(1, 0)) == FinWeight.of(0, 1)

    def test_reflection(self, sl3):
        assert simple_reflection(sl3, FinWeight.of(1, 0), 1) == FinWeight.of(-1, 1)
