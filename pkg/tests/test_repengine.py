"""Tests for finite, affine, tensor and loop modules and their analysis."""
import pytest

from src.errors import DimensionMismatchError, InvalidPointsError, NonDominantWeightError, ZeroLevelError
from src.exactla.sparse import SparseVector
from src.liecore.weights import FinWeight
from src.repengine.analysis import (
    act,
    character,
    check_chevalley_relations,
    check_grading,
    check_module_axiom,
    highest_weight_vectors,
    integrability_witness,
    scalar_on,
    submodule_closure,
)
from src.repengine.example import NAMES, W0, example_indecomposable_sl2
from src.repengine.highest_weight import (
    dual_aff_truncated,
    fundamental_coords,
    irreducible_aff_truncated,
    irreducible_fin,
)
from src.repengine.loop import LoopModuleSpec, loop_irreducibility, loop_module, period_generators
from src.repengine.tensor import evaluation_tensor, tensor_irreducibility_condition, tensor_product
from src.toralg.elements import TorElement


class TestFiniteModules:
    @pytest.mark.parametrize("coords,dim", [((0,), 1), ((1,), 2), ((3,), 4)])
    def test_sl2_dimensions(self, sl2, coords, dim):
        assert irreducible_fin(sl2, FinWeight(coords=coords)).dim == dim

    def test_adjoint_of_sl3(self, sl3):
        module = irreducible_fin(sl3, FinWeight.of(1, 1))
        assert module.dim == 8
        assert character(module).total == 8

    def test_non_dominant(self, sl2):
        with pytest.raises(NonDominantWeightError):
            irreducible_fin(sl2, FinWeight.of(-1))

    def test_relations_hold(self, sl3):
        assert check_chevalley_relations(irreducible_fin(sl3, FinWeight.of(1, 0))).ok

    def test_integrability_powers(self, sl2):
        report = integrability_witness(irreducible_fin(sl2, FinWeight.of(2)))
        assert report.ok
        assert report.max_power == 3

    def test_tensor_square_of_doublet(self, doublet):
        module = tensor_product([doublet, doublet])
        assert module.dim == 4
        assert len(highest_weight_vectors(module)) == 2
        assert check_module_axiom(module).ok


class TestAffineModules:
    def test_basic_module_dimensions(self, basic_aff):
        assert basic_aff.dim == 8
        by_depth = {}
        for i in range(basic_aff.dim):
            depth = -basic_aff.weights[i].d1
            by_depth[depth] = by_depth.get(depth, 0) + 1
        assert by_depth == {0: 1, 1: 3, 2: 4}

    def test_level_and_top(self, sl2, basic_aff):
        top = basic_aff.top_index()
        assert scalar_on(basic_aff, TorElement.c1(sl2), top) == 1
        vectors = highest_weight_vectors(basic_aff)
        assert len(vectors) == 1
        assert vectors[0].weight == basic_aff.top_weight()

    def test_c1_is_h0_plus_h_theta(self, sl2, basic_aff):
        gens = basic_aff.generators
        lhs = basic_aff.operator(TorElement.c1(sl2))
        rhs = basic_aff.operator(gens.h[0]) + basic_aff.operator(gens.h_theta())
        assert lhs.agrees_with(rhs) is None

    def test_relations_and_grading(self, basic_aff):
        assert check_chevalley_relations(basic_aff).ok
        assert check_grading(basic_aff) == []

    def test_dual_negates_weights(self, sl2, basic_aff):
        dual = dual_aff_truncated(sl2, fundamental_coords(sl2, 0), 2)
        assert dual.dim == basic_aff.dim
        assert dual.weights[0] == -basic_aff.weights[0]

    def test_level_zero_rejected(self, sl2):
        with pytest.raises(ZeroLevelError):
            irreducible_aff_truncated(sl2, (0, 0), 1)

    def test_evaluation_tensor_points(self, basic_aff):
        with pytest.raises(InvalidPointsError):
            evaluation_tensor([basic_aff], [0])
        with pytest.raises(InvalidPointsError):
            evaluation_tensor([basic_aff], [1, 2])


class TestIndecomposableExample:
    def test_basis_and_relations(self):
        module = example_indecomposable_sl2(3)
        assert module.dim == len(NAMES) * 7
        assert check_chevalley_relations(module).ok

    def test_w0_submodule_is_proper(self):
        module = example_indecomposable_sl2(2)
        closure = submodule_closure(module, [module.vector(W0, 0)], module.generator_set())
        assert 0 < len(closure) < module.dim

    def test_window_must_be_positive(self):
        with pytest.raises(ValueError):
            example_indecomposable_sl2(0)


class TestLoopModules:
    def test_paired_points_have_period_two(self, sl2):
        spec = LoopModuleSpec(weights=[(1,), (1,)], points=["1", "-1"], window=3)
        verdict = loop_irreducibility(sl2, spec)
        assert not verdict.irreducible
        assert verdict.period == 2
        module = loop_module(sl2, spec)
        assert module.dim == 28
        closures = [submodule_closure(module, [g]) for g in period_generators(module, 2)]
        assert [len(c) for c in closures] == [13, 15]

    def test_d1_reads_the_laurent_exponent(self, sl2):
        module = loop_module(sl2, LoopModuleSpec(weights=[(1,)], points=["2"], window=3))
        v = SparseVector.basis(module.position(module.base.top_index(), 3))
        assert module.d1_operator().apply(v) == v.scale(3)

    def test_loop_action_weights_factors_by_points(self, sl2):
        module = loop_module(sl2, LoopModuleSpec(weights=[(1,), (1,)], points=["1", "-1"], window=3))
        y = sl2.minus(sl2.roots.highest)
        v = SparseVector.basis(module.base.top_index())
        base_image = module.base.factor_term(0, y, 0).apply(v) - module.base.factor_term(1, y, 0).apply(v)
        expected = SparseVector({module.position(b, 1): c for b, c in base_image.items()})
        assert not expected.is_zero()
        assert act(module, TorElement.term(sl2, y, 1, 0), SparseVector.basis(module.top_index())) == expected

    def test_closure_rejects_vectors_outside_the_window(self, sl2):
        module = loop_module(sl2, LoopModuleSpec(weights=[(1,)], points=["2"], window=1))
        with pytest.raises(DimensionMismatchError):
            submodule_closure(module, [SparseVector.basis(module.dim)])
        assert len(submodule_closure(module, [SparseVector.basis(module.top_index())])) == module.dim

    def test_generic_points_are_irreducible(self, sl2):
        spec = LoopModuleSpec(weights=[(1,), (1,)], points=["1", "2"], window=3)
        assert loop_irreducibility(sl2, spec).irreducible
        module = loop_module(sl2, spec)
        closure = submodule_closure(module, period_generators(module, 1))
        assert len(closure) == module.dim

    def test_trivial_weights_have_period_one(self, sl2):
        verdict = loop_irreducibility(sl2, LoopModuleSpec(weights=[(0,)], points=["2"]))
        assert verdict.period == 1

    def test_points_are_normalized(self):
        assert LoopModuleSpec(weights=[(1,)], points=["2/4"]).points == ["1/2"]

    @pytest.mark.parametrize("points", [["0", "1"], ["1", "1"], ["1"]])
    def test_bad_points(self, sl2, points):
        spec = LoopModuleSpec(weights=[(1,), (1,)], points=points)
        with pytest.raises(InvalidPointsError):
            spec.check(sl2)


class TestTensorCondition:
    @pytest.mark.parametrize("mu,met", [(2, True), (1, False), (0, False)])
    def test_fundamental_level_one(self, sl2, mu, met):
        outcome = tensor_irreducibility_condition(sl2, (1, 0), [FinWeight.of(mu)], [5])
        assert outcome.met is met

    def test_sum_condition_reported(self, sl2):
        outcome = tensor_irreducibility_condition(sl2, (1, 0), [FinWeight.of(0)], [5])
        assert not outcome.sum_condition
        assert outcome.detail == "sum condition fails"

    def test_second_clause_witness(self, sl2):
        outcome = tensor_irreducibility_condition(sl2, (1, 0), [FinWeight.of(2)], [5])
        assert outcome.clause == "second"
        assert outcome.witness_root == (1,)
