"""Tests for exact scalars, sparse vectors, linear algebra and polynomials."""
from fractions import Fraction

import pytest

from src.errors import DimensionMismatchError, InvalidPolynomialError, NonRationalRootsError
from src.exactla.linalg import (
    WeightedSpan,
    independent_subset,
    intersect_and_quotient_dims,
    kernel_basis,
    solve_in_span,
    span_basis,
    span_rank,
)
from src.exactla.polynomials import (
    SparsePolynomial,
    linear_factor,
    parse_polynomial,
    parse_polynomial_list,
    series_product,
)
from src.exactla.scalars import format_scalar, scalar_power, to_fraction, to_scalar
from src.exactla.sparse import SparseMatrix, SparseVector


class TestScalars:
    def test_conversions_agree(self):
        assert to_scalar("3/6") == to_scalar(Fraction(1, 2))
        assert to_scalar(" -2 ") == to_scalar(-2)
        assert format_scalar(to_scalar("4/6")) == "2/3"
        assert format_scalar(to_scalar(5)) == "5"
        assert to_fraction(to_scalar("-7/3")) == Fraction(-7, 3)

    def test_floats_and_bools_rejected(self):
        with pytest.raises(TypeError):
            to_scalar(0.5)
        with pytest.raises(TypeError):
            to_scalar(True)

    def test_powers(self):
        assert scalar_power(to_scalar(0), 0) == 1
        assert scalar_power(to_scalar(2), -2) == to_scalar("1/4")
        with pytest.raises(ZeroDivisionError):
            scalar_power(to_scalar(0), -1)


class TestSparse:
    def test_zero_entries_dropped(self):
        v = SparseVector({0: 0, 3: 2})
        assert v.support() == [3]
        assert len(v) == 1
        assert SparseVector({1: 0}).is_zero()

    def test_arithmetic(self):
        a = SparseVector({0: 1, 1: 2})
        b = SparseVector({1: -2, 2: 1})
        assert a + b == SparseVector({0: 1, 2: 1})
        assert (a - a).is_zero()
        assert a.scale(0).is_zero()
        assert a.dot(b) == -4

    def test_matrix_apply_and_transpose(self):
        m = SparseMatrix.from_dense([[1, 2], [0, 1]])
        assert m.apply(SparseVector({1: 1})) == SparseVector({0: 2, 1: 1})
        assert m.transpose().get(1, 0) == 2

    def test_non_square_shape_reported(self):
        assert SparseMatrix.from_rows([SparseVector({2: 1})], 3).shape == (1, 3)


class TestLinalg:
    def test_rank_and_basis(self):
        vectors = [SparseVector({0: 1, 1: 1}), SparseVector({0: 2, 1: 2}), SparseVector({2: 1})]
        assert span_rank(vectors, 3) == 2
        assert len(span_basis(vectors, 3)) == 2
        assert independent_subset(vectors, 3) == [0, 2]

    def test_kernel(self):
        m = SparseMatrix.from_dense([[1, 1, 0], [0, 0, 1]])
        kernel = kernel_basis(m)
        assert kernel == [SparseVector({0: 1, 1: -1})]

    def test_index_beyond_dimension(self):
        with pytest.raises(DimensionMismatchError):
            span_rank([SparseVector({5: 1})], 3)

    def test_intersection(self):
        a = [SparseVector({0: 1}), SparseVector({1: 1})]
        b = [SparseVector({1: 1}), SparseVector({2: 1})]
        assert intersect_and_quotient_dims(a, b, 3) == (1, 1)

    def test_solve_in_span(self):
        columns = [SparseVector({0: 1}), SparseVector({0: 1, 1: 1})]
        inside, outside = solve_in_span(columns, [SparseVector({0: 3, 1: 2}), SparseVector({2: 1})], 3)
        assert inside == SparseVector({0: 1, 1: 2})
        assert outside is None

    def test_weighted_span_reports_new_vectors(self):
        span = WeightedSpan()
        first = span.extend("a", [SparseVector({0: 1}), SparseVector({0: 2})])
        assert len(first) == 1
        assert span.extend("a", [SparseVector({0: 5})]) == []
        assert len(span.extend("a", [SparseVector({1: 1})])) == 1
        assert span.dimension("a") == 2
        assert span.contains("a", SparseVector({0: 1, 1: 1}))
        assert not span.contains("b", SparseVector({0: 1}))
        assert span.total_dimension() == 2

    def test_weighted_span_returns_only_new_residues(self):
        span = WeightedSpan()
        span.extend(0, [SparseVector({0: 1})])
        assert span.extend(0, [SparseVector({0: 1, 1: 1}), SparseVector({0: 3, 1: 3})]) == [SparseVector({1: 1})]
        assert span.extend(0, [SparseVector({0: 2, 1: 1, 2: 4})]) == [SparseVector({2: 1})]

    def test_weighted_span_basis_is_reduced(self):
        span = WeightedSpan()
        span.extend(0, [SparseVector({0: 1, 1: 2}), SparseVector({1: 1, 2: 1})])
        assert span.basis(0) == [SparseVector({0: 1, 2: -2}), SparseVector({1: 1, 2: 1})]
        assert span.contains(0, SparseVector({0: 1, 1: 3, 2: 1}))


class TestPolynomials:
    def test_parse_factored(self):
        p = parse_polynomial("(1-u)^2*(1-2u)")
        assert [format_scalar(c) for c in p.coefficients()] == ["1", "-4", "5", "-2"]

    def test_parse_list(self):
        polys = parse_polynomial_list("[1, (1-u)*(1-u/2)]")
        assert polys[0] == SparsePolynomial.one()
        assert polys[1].degree == 2
        assert polys[1].coefficient(1) == to_scalar("-3/2")

    def test_parse_rejects_other_symbols(self):
        with pytest.raises(InvalidPolynomialError):
            parse_polynomial("1 - x")

    @pytest.mark.parametrize("text", ["__import__('os')", "u.real", "1 - 0.5u", "(1-u);1", "lambda: u"])
    def test_parse_accepts_only_polynomial_tokens(self, text):
        with pytest.raises(InvalidPolynomialError):
            parse_polynomial(text)

    def test_rational_roots(self):
        roots = parse_polynomial("(1-u)^2*(1-2u)").rational_roots()
        assert roots == {to_scalar(1): 2, to_scalar("1/2"): 1}
        with pytest.raises(NonRationalRootsError):
            parse_polynomial("1 + u^2").rational_roots()

    def test_series_product(self):
        coefficients = series_product([linear_factor(1), linear_factor(2)], 4)
        assert [format_scalar(c) for c in coefficients] == ["1", "-3", "2", "0", "0"]

    def test_laurent_only_for_t_tags(self):
        assert SparsePolynomial("t1", {-1: 1}).low_degree == -1
        with pytest.raises(InvalidPolynomialError):
            SparsePolynomial("u", {-1: 1})

    def test_reciprocal(self):
        p = parse_polynomial("1 - 3u + 2u^2")
        assert p.substitute_reciprocal() == parse_polynomial("2 - 3u + u^2")
