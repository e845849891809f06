"""Tests for polynomial tuples, Weyl-module windows and fusion products."""
from fractions import Fraction

import pytest

from src.errors import (
    InvalidPointsError,
    InvalidPolynomialError,
    PolyTupleRejection,
    ResourceBoundExceededError,
    RestrictedShapeError,
)
from src.exactla.linalg import span_rank
from src.exactla.polynomials import parse_polynomial_list
from src.exactla.scalars import to_scalar
from src.exactla.sparse import SparseVector
from src.liecore.algebra import build_algebra
from src.liecore.cartan import CartanData
from src.repengine.analysis import act, weight_dimensions
from src.repengine.highest_weight import fundamental_coords, irreducible_aff_truncated
from src.repengine.tensor import tensor_product
from src.toralg.elements import TorElement
from src.weylfusion.decomposition import (
    aff_decomposition,
    current_full_agreement,
    factorization_check,
    irred_condition,
    irreducibility_check,
)
from src.weylfusion.fusion import fusion_W, fusion_product, pullback_shift
from src.weylfusion.pbw import PBWEngine
from src.weylfusion.polytuple import PolyTuple, poly_tuple_from_pdata
from src.weylfusion.surjection import restricted_point, surjection_check
from src.weylfusion.weyl_module import _Saturation, _Window, weyl_module_truncated


def pi_of(algebra, text):
    return PolyTuple(algebra, parse_polynomial_list(text))


def nonzero(dims):
    return {eta: d for eta, d in dims.items() if d}


class TestPolyTuple:
    def test_degrees_and_top(self, sl2):
        pi = pi_of(sl2, "[1, (1-u)*(1-2u)]")
        assert pi.degrees == (0, 2)
        assert pi.as_dict() == {"polynomials": [["1"], ["1", "-3", "2"]], "degrees": [0, 2]}

    def test_power_sums(self, sl2):
        pi = pi_of(sl2, "[1, (1-u)*(1-2u)]")
        assert pi.power_sum(1, 0) == 2
        assert pi.power_sum(1, 1) == 3
        assert pi.power_sum(1, 2) == 5
        assert pi.power_sum(1, -1) == to_scalar("3/2")
        assert pi.central_value(1) == 3

    def test_roots_and_factors(self, sl2):
        pi = pi_of(sl2, "[1, (1-u)*(1-u/2)]")
        assert pi.roots() == {to_scalar("1/2"): (0, 1), to_scalar(1): (0, 1)}
        assert [point for point, _ in pi.factors()] == [to_scalar("1/2"), to_scalar(1)]

    def test_constant_term_must_be_one(self, sl2):
        with pytest.raises(InvalidPolynomialError):
            pi_of(sl2, "[1, 2 - u]")

    def test_length_must_match_rank(self, sl2):
        with pytest.raises(InvalidPolynomialError):
            pi_of(sl2, "[1, 1 - u, 1]")

    def test_pdata_accepted(self, sl2):
        pi = poly_tuple_from_pdata(sl2, [0, 2], {1: [-3, 2]}, {1: [Fraction(-3, 2), Fraction(1, 2)]})
        assert pi == pi_of(sl2, "[1, (1-u)*(1-2u)]")

    def test_pdata_degree_rejected(self, sl2):
        with pytest.raises(PolyTupleRejection) as info:
            poly_tuple_from_pdata(sl2, [0, 1], {1: [-3, 2]}, {})
        assert info.value.node == 1
        assert info.value.condition == "degree"

    def test_pdata_reciprocal_rejected(self, sl2):
        with pytest.raises(PolyTupleRejection) as info:
            poly_tuple_from_pdata(sl2, [0, 1], {1: [-2]}, {1: [-2]})
        assert info.value.condition == "reciprocal"


class TestWeylModule:
    def test_fundamental_window(self, sl2):
        module = weyl_module_truncated(pi_of(sl2, "[1, 1-u]"), 2, 2, 2)
        assert nonzero(module.graded_dims()) == {(0, 0): 1, (0, 1): 1, (1, 1): 1}

    def test_two_point_window(self, sl2):
        module = weyl_module_truncated(pi_of(sl2, "[1, (1-u)*(1-u/2)]"), 2, 2, 2)
        assert nonzero(module.graded_dims()) == {(0, 0): 1, (0, 1): 2, (0, 2): 1, (1, 1): 2}

    def test_top_multiplicity(self, sl2):
        module = weyl_module_truncated(pi_of(sl2, "[1, 1-u]"), 1, 1, 1)
        assert aff_decomposition(module).top_multiplicity == 1

    def test_window_bounds(self, sl2):
        with pytest.raises(ValueError):
            weyl_module_truncated(pi_of(sl2, "[1, 1-u]"), -1, 1, 1)
        with pytest.raises(ValueError):
            weyl_module_truncated(pi_of(sl2, "[1, 1-u]"), 1, 1, 1, variant="half")

    def test_saturation_step_bound(self, sl2):
        with pytest.raises(ResourceBoundExceededError):
            weyl_module_truncated(pi_of(sl2, "[1, 1-u]"), 2, 2, 2, max_steps=5)

    def test_relations_recorded_at_their_t2_cost(self, sl2):
        pi = pi_of(sl2, "[1, 1-u]")
        saturation = _Saturation(PBWEngine(sl2, pi), pi, _Window(1, 2, 1, "current", 3), 50000, 200000)
        seeds = saturation.seeds()
        bound = tuple(max(eta[l] for eta, _ in seeds) for l in range(sl2.rank + 1))
        _, records = saturation._close(
            [(eta, vector, 0) for eta, vector in seeds],
            saturation._raising_letters(bound),
            lambda eta: min(eta) >= 0,
        )
        for _, vector, level in records:
            assert all(PBWEngine.t2_norm(m) <= level for m in saturation._combination(vector))
        assert max(level for _, _, level in records) > 0

    def test_higher_t2_lowering_in_span_of_low_degrees(self, sl2):
        module = weyl_module_truncated(pi_of(sl2, "[1, (1-u)*(1-u/2)]"), 0, 3, 1)
        top = SparseVector.basis(module.top_index())
        y = sl2.minus(sl2.roots.highest)
        images = [act(module, TorElement.term(sl2, y, 0, s), top) for s in range(4)]
        assert span_rank(images[:3], module.dim) == 2
        assert span_rank(images, module.dim) == 2


class TestFusion:
    def test_two_doublets(self, doublet):
        filtered = fusion_product([doublet, doublet], ["0", "1"])
        assert filtered.graded_dims() == [3, 1]
        assert filtered.sum_rule_holds()
        assert filtered.table().total == 4

    def test_three_doublets_keep_the_character(self, doublet):
        filtered = fusion_product([doublet] * 3, ["0", "1", "2"])
        assert filtered.total_dim == 8
        assert weight_dimensions(filtered.graded()) == weight_dimensions(tensor_product([doublet] * 3))

    def test_pullback_keeps_dimension(self, doublet):
        filtered = fusion_product([doublet, doublet], ["0", "1"])
        assert pullback_shift(filtered, 3).dim == 4

    def test_points_must_be_distinct(self, doublet):
        with pytest.raises(InvalidPointsError):
            fusion_product([doublet, doublet], ["1", "1"])
        with pytest.raises(InvalidPointsError):
            fusion_product([doublet, doublet], ["1"])

    def test_pullback_by_zero_is_the_identity(self, doublet, sl2):
        filtered = fusion_product([doublet, doublet], ["0", "1"])
        inner, shifted = filtered.graded(), pullback_shift(filtered, 0)
        y = sl2.minus(sl2.roots.highest)
        for r in range(3):
            assert shifted.term_operator(y, 0, r).agrees_with(inner.term_operator(y, 0, r)) is None

    def test_pullback_shifts_t_by_the_point(self, doublet, sl2):
        filtered = fusion_product([doublet, doublet], ["0", "1"])
        inner, shifted = filtered.graded(), pullback_shift(filtered, 2)
        for index in (sl2.plus(sl2.roots.highest), sl2.minus(sl2.roots.highest)):
            expected = inner.term_operator(index, 0, 1) + inner.term_operator(index, 0, 0).scale(-2)
            assert shifted.term_operator(index, 0, 1).agrees_with(expected) is None
            assert shifted.term_operator(index, 0, 0).agrees_with(inner.term_operator(index, 0, 0)) is None

    def test_fused_generator_relations(self, sl2):
        filtered, relations = fusion_W(sl2, (0, 2), 1, 2)
        assert relations.ok
        assert relations.checked > 0
        assert filtered.sum_rule_holds()

    def test_single_factor_is_not_graded(self, sl2):
        base = irreducible_aff_truncated(sl2, fundamental_coords(sl2, 1), 1, 2)
        filtered, relations = fusion_W(sl2, (0, 1), 1, 2)
        assert filtered.graded_dims() == [base.dim]
        assert relations.ok


class TestSurjection:
    def test_double_point_is_reducible(self, sl2):
        report = surjection_check(pi_of(sl2, "[1, (1-u)^2]"), 2, 3, 6)
        assert report.point == "1"
        assert report.relations.ok
        assert report.fusion_relations.ok
        assert report.sum_rule
        assert report.reducible
        assert report.fusion_highest_weight_vectors >= 2
        assert report.irreducible_highest_weight_vectors == 1

    def test_single_point_is_irreducible(self, sl2):
        report = surjection_check(pi_of(sl2, "[1, 1-u]"), 2, 3, 6)
        assert report.relations.ok
        assert not report.reducible
        assert report.fusion_highest_weight_vectors == 1

    def test_two_points_rejected(self, sl2):
        with pytest.raises(RestrictedShapeError):
            surjection_check(pi_of(sl2, "[1, (1-u)*(1-u/2)]"), 1, 2)


class TestDecomposition:
    def test_factorization_over_roots(self, sl2):
        report = factorization_check(pi_of(sl2, "[1, (1-u)*(1-u/2)]"), 2, 2, 1)
        assert sorted(report.points) == ["1", "1/2"]
        assert report.ok

    def test_factorization_of_trivial_tuple(self, sl2):
        report = factorization_check(pi_of(sl2, "[1, 1]"), 1, 1, 1)
        assert report.points == []
        assert report.ok

    def test_current_and_full_windows_agree(self, sl2):
        assert current_full_agreement(pi_of(sl2, "[1, 1-u]"), 1, 1, 1).equal

    def test_fundamental_weyl_module_is_the_evaluation_module(self, sl2):
        report = irreducibility_check(sl2, 1, "1", 1, 1, 1)
        assert report.condition_satisfied
        assert report.comparison.equal
        assert report.highest_weight_vectors == 1
        assert report.isomorphic_in_window


class TestRestrictedPoint:
    def test_single_point(self, sl2):
        assert restricted_point(pi_of(sl2, "[1, (1-2u)^2]")) == 2

    @pytest.mark.parametrize("text", ["[1, (1-u)*(1-u/2)]", "[1, 1]", "[1, 1+u^2]"])
    def test_other_shapes(self, sl2, text):
        with pytest.raises(RestrictedShapeError):
            restricted_point(pi_of(sl2, text))


def test_minus_tuple_reverses(sl2):
    assert pi_of(sl2, "[1, (1-u)*(1-2u)]").minus_tuple() == pi_of(sl2, "[1, (1-u)*(1-u/2)]")


def test_irred_condition_marks():
    d4 = build_algebra(CartanData.parse("D4"))
    assert [irred_condition(n, d4) for n in range(5)].count(False) == 1
