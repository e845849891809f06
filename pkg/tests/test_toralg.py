"""Tests for toroidal elements, the bracket, roots, Lambda series and Garland identities."""
import random

import pytest

from src.errors import AlgebraMismatchError, ZeroRootError
from src.exactla.scalars import format_scalar, to_scalar
from src.exactla.sparse import SparseVector
from src.harness.checks import random_element
from src.repengine.highest_weight import fundamental_coords, irreducible_aff_truncated
from src.repengine.tensor import evaluation_tensor
from src.toralg.bracket import affine_form, bracket_tor
from src.toralg.elements import AffineGenerators, TorElement
from src.toralg.garland import garland_pair, garland_residual
from src.toralg.lambda_series import exp_expansion_oracle, lambda_series, power_sums_from_coefficients
from src.toralg.roots import RootClass, TorRoot, classify_root, term_class


def loop(algebra, index, r1=0, r2=0):
    return TorElement.term(algebra, index, r1, r2)


class TestBracket:
    def test_central_term_in_t1(self, sl2):
        theta = sl2.roots.highest
        x, y = sl2.plus(theta), sl2.minus(theta)
        result = bracket_tor(loop(sl2, x, 1), loop(sl2, y, -1))
        assert result == loop(sl2, sl2.cartan(1)) + TorElement.c1(sl2)

    def test_central_term_in_t2(self, sl2):
        theta = sl2.roots.highest
        x, y = sl2.plus(theta), sl2.minus(theta)
        result = bracket_tor(loop(sl2, x, 0, 2), loop(sl2, y, 0, -2))
        assert result == loop(sl2, sl2.cartan(1)) + TorElement.c2_element(sl2).scale(2)

    def test_c1_t2_power_keeps_t2_degree(self, sl2):
        theta = sl2.roots.highest
        result = bracket_tor(loop(sl2, sl2.plus(theta), 1, 1), loop(sl2, sl2.minus(theta), -1, 2))
        assert result.central == {3: 1}

    def test_derivations(self, sl2):
        x = loop(sl2, sl2.plus(sl2.roots.highest), 2, -1)
        assert bracket_tor(TorElement.d1_element(sl2), x) == x.scale(2)
        assert bracket_tor(TorElement.d2_element(sl2), x) == x.scale(-1)
        assert bracket_tor(TorElement.d2_element(sl2), TorElement.c1(sl2, 3)) == TorElement.c1(sl2, 3, 3)

    def test_antisymmetry_and_jacobi_on_samples(self, sl3):
        rng = random.Random(7)
        for _ in range(25):
            a, b, c = (random_element(sl3, rng) for _ in range(3))
            assert (bracket_tor(a, b) + bracket_tor(b, a)).is_zero()
            jacobi = bracket_tor(a, bracket_tor(b, c)) + bracket_tor(b, bracket_tor(c, a)) + bracket_tor(c, bracket_tor(a, b))
            assert jacobi.is_zero()

    def test_algebras_must_match(self, sl2, sl3):
        with pytest.raises(AlgebraMismatchError):
            bracket_tor(TorElement.c1(sl2), TorElement.c1(sl3))


class TestAffineForm:
    def test_c1_pairs_with_d1(self, sl2):
        assert affine_form(TorElement.c1(sl2), TorElement.d1_element(sl2)) == 1
        assert affine_form(TorElement.d1_element(sl2), TorElement.d1_element(sl2)) == 0

    def test_loop_pairing(self, sl2):
        theta = sl2.roots.highest
        x, y = sl2.plus(theta), sl2.minus(theta)
        assert affine_form(loop(sl2, x, 2), loop(sl2, y, -2)) == 1
        assert affine_form(loop(sl2, x, 2), loop(sl2, y, -1)) == 0

    def test_t2_content_rejected(self, sl2):
        with pytest.raises(ValueError):
            affine_form(loop(sl2, sl2.cartan(1), 0, 1), TorElement.c1(sl2))


class TestGenerators:
    def test_h0_plus_h_theta_is_c1(self, sl2):
        gens = AffineGenerators(sl2)
        assert gens.h[0] + gens.h_theta() == TorElement.c1(sl2)

    def test_affine_serre_pairing(self, sl2):
        gens = AffineGenerators(sl2)
        assert bracket_tor(gens.e[0], gens.f[0]) == gens.h[0]
        assert bracket_tor(gens.e[1], gens.f[1]) == gens.h[1]
        assert bracket_tor(gens.e[0], gens.f[1]).is_zero()


class TestRoots:
    def test_classification(self, sl2):
        alpha = (1,)
        assert classify_root(sl2.roots, TorRoot(alpha, 0, 5)) is RootClass.RAISING
        assert classify_root(sl2.roots, TorRoot((-1,), 1, -3)) is RootClass.RAISING
        assert classify_root(sl2.roots, TorRoot((0,), 1, 0)) is RootClass.RAISING
        assert classify_root(sl2.roots, TorRoot((0,), 0, 2)) is RootClass.CARTAN
        assert classify_root(sl2.roots, TorRoot((-1,), 0, 0)) is RootClass.LOWERING
        assert classify_root(sl2.roots, TorRoot((1,), -1, 0)) is RootClass.LOWERING

    def test_zero_root(self, sl2):
        with pytest.raises(ZeroRootError):
            classify_root(sl2.roots, TorRoot((0,), 0, 0))

    def test_cartan_terms(self, sl2):
        assert term_class(sl2, sl2.cartan(1), 0, 3) is RootClass.CARTAN
        assert term_class(sl2, sl2.cartan(1), -1, 0) is RootClass.LOWERING

    def test_affine_coordinates(self, sl2):
        assert TorRoot((-1,), 1).affine_coordinates(sl2.roots) == (1, 0)
        assert TorRoot((1,), 1).affine_coordinates(sl2.roots) == (1, 2)


class TestLambdaSeries:
    def test_low_orders(self, sl2):
        h = loop(sl2, sl2.cartan(1))
        series = lambda_series(h, 1, 2)
        assert series[0].render() == "1"
        assert series[1].render() == "-1*(h t2)"
        assert series[1].symbol_element(1) == h.shift_t2(1)
        assert lambda_series(h, -1, 1)[1].symbol_element(1) == h.shift_t2(-1)

    def test_matches_truncated_exponential(self, sl2):
        h = loop(sl2, sl2.cartan(1))
        oracle = exp_expansion_oracle(5)
        assert [lam.poly for lam in lambda_series(h, 1, 5)] == oracle

    def test_eigenvalues_of_one_linear_factor(self, sl2):
        """Power sums a^s give the coefficients of 1 - a u."""
        h = loop(sl2, sl2.cartan(1))
        a = to_scalar(3)
        values = [lam.evaluate(lambda s: a ** s) for lam in lambda_series(h, 1, 3)]
        assert [format_scalar(v) for v in values] == ["1", "-3", "0", "0"]

    def test_power_sums_invert_coefficients(self):
        sums = power_sums_from_coefficients([1, -3, 2], 3)
        assert [format_scalar(v) for v in sums] == ["3", "5", "9"]

    def test_bad_sign(self, sl2):
        with pytest.raises(ValueError):
            lambda_series(loop(sl2, sl2.cartan(1)), 0, 2)


class TestGarland:
    def test_degree_variant_raises_power(self, sl2):
        beta = TorRoot(sl2.roots.highest, 0)
        plain = garland_pair(sl2, beta, 2, 1)
        variant = garland_pair(sl2, beta, 2, 1, degree_variant=True)
        assert plain.lowering_power == 3
        assert plain.raising_power == 2
        assert variant.raising_power == 3
        assert len(plain.rhs) == 3
        assert "t2^1" in plain.render()

    def test_s_one_shapes(self, sl2):
        beta = TorRoot(sl2.roots.highest, 0)
        identity = garland_pair(sl2, beta, 1, 1)
        lowering = loop(sl2, sl2.minus(sl2.roots.highest))
        assert (identity.raising_power, identity.lowering_power) == (1, 2)
        assert identity.lowering_letter == lowering
        assert [letter for letter, _, _ in identity.rhs] == [lowering, lowering.shift_t2(1)]
        assert [coeff for _, coeff, _ in identity.rhs] == [-1, -1]
        assert [lam.order for _, _, lam in identity.rhs] == [1, 0]
        variant = garland_pair(sl2, beta, 1, 1, degree_variant=True)
        assert variant.raising_power == 2
        assert [(letter, coeff, lam.order) for letter, coeff, lam in variant.rhs] == [(None, 1, 2)]

    def test_negative_sign_uses_inverse_t2(self, sl2):
        identity = garland_pair(sl2, TorRoot(sl2.roots.highest, 0), 1, -1)
        assert identity.raising_letter == loop(sl2, sl2.plus(sl2.roots.highest), 0, -1)
        assert "t2^-1" in identity.render()

    def test_s_must_be_positive(self, sl2):
        with pytest.raises(ValueError):
            garland_pair(sl2, TorRoot(sl2.roots.highest, 0), 0, 1)

    @pytest.mark.parametrize("r1", [0, 1])
    @pytest.mark.parametrize("sign", [1, -1])
    @pytest.mark.parametrize("variant", [False, True])
    def test_holds_on_evaluation_module(self, sl2, r1, sign, variant):
        s = 1
        depth, height = (s + 1) * r1, (s + 1) * (1 + 2 * r1)
        factor = irreducible_aff_truncated(sl2, fundamental_coords(sl2, 1), depth, height)
        module = evaluation_tensor([factor], ["3"], depth, height)
        top = SparseVector.basis(module.top_index())
        identity = garland_pair(sl2, TorRoot(sl2.roots.highest, r1), s, sign, degree_variant=variant)
        residual, _ = garland_residual(identity, module, top)
        assert residual.is_zero()

    def test_both_sides_nonzero_off_the_finite_root(self, sl2):
        factor = irreducible_aff_truncated(sl2, fundamental_coords(sl2, 1), 2, 6)
        module = evaluation_tensor([factor], ["3"], 2, 6)
        identity = garland_pair(sl2, TorRoot(sl2.roots.highest, 1), 1, 1)
        lhs, rhs, _ = identity.evaluate(module, SparseVector.basis(module.top_index()))
        assert not lhs.is_zero()
        assert lhs == rhs
