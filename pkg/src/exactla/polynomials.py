"""Sparse (Laurent) polynomials in one tagged variable, plus text parsing."""
import re
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy import Expr, Poly, Symbol, factor_list
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    rationalize,
    standard_transformations,
)
from sympy.polys.domains import QQ

from src.errors import InvalidPolynomialError, NonRationalRootsError
from src.exactla.scalars import ExactScalar, ONE, ZERO, scalar_power, to_scalar

LAURENT_TAGS = ("t1", "t2")
TAGS = ("t1", "t2", "u", "t")

_TRANSFORMATIONS = standard_transformations + (
    implicit_multiplication_application,
    convert_xor,
    rationalize,
)

_TOKEN = re.compile(r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>\*\*|[-+*/^()\[\],]))")


class SparsePolynomial:
    """Exponent to coefficient map in a single variable; immutable."""

    __slots__ = ("tag", "_coeffs")

    def __init__(self, tag: str, coeffs: Optional[Mapping[int, object]] = None):
        if tag not in TAGS:
            raise InvalidPolynomialError(f"unknown variable tag {tag!r}")
        cleaned: Dict[int, ExactScalar] = {}
        for exponent, value in (coeffs or {}).items():
            scalar = to_scalar(value)
            if scalar == 0:
                continue
            if exponent < 0 and tag not in LAURENT_TAGS:
                raise InvalidPolynomialError(f"negative exponent {exponent} for variable {tag}")
            cleaned[int(exponent)] = scalar
        self.tag = tag
        self._coeffs = cleaned

    @classmethod
    def one(cls, tag: str = "u") -> "SparsePolynomial":
        return cls(tag, {0: 1})

    @classmethod
    def monomial(cls, tag: str, exponent: int, coefficient: object = 1) -> "SparsePolynomial":
        return cls(tag, {exponent: coefficient})

    @classmethod
    def from_coefficients(cls, tag: str, coefficients: Sequence[object]) -> "SparsePolynomial":
        return cls(tag, dict(enumerate(coefficients)))

    @classmethod
    def from_sympy(cls, poly: Poly, tag: str) -> "SparsePolynomial":
        coeffs = {monom[0]: QQ.convert(c) for monom, c in poly.terms()}
        return cls(tag, coeffs)

    def _as_poly(self) -> Tuple[Poly, int]:
        low = min(self._coeffs, default=0)
        shift = min(low, 0)
        rep = {(e - shift,): c for e, c in self._coeffs.items()}
        return Poly.from_dict(rep or {(0,): ZERO}, Symbol(self.tag), domain=QQ), shift

    def to_sympy(self) -> Poly:
        """Ordinary polynomial as a sympy Poly; Laurent exponents are rejected."""
        if self._coeffs and min(self._coeffs) < 0:
            raise InvalidPolynomialError("Laurent polynomial has no Poly form")
        return self._as_poly()[0]

    @property
    def degree(self) -> int:
        return max(self._coeffs, default=0)

    @property
    def low_degree(self) -> int:
        return min(self._coeffs, default=0)

    def coefficient(self, exponent: int) -> ExactScalar:
        return self._coeffs.get(exponent, ZERO)

    @property
    def constant_term(self) -> ExactScalar:
        return self.coefficient(0)

    def coefficients(self, order: Optional[int] = None) -> List[ExactScalar]:
        """Coefficients of exponents 0..order (default: the degree)."""
        top = self.degree if order is None else order
        return [self.coefficient(e) for e in range(top + 1)]

    def terms(self) -> List[Tuple[int, ExactScalar]]:
        return sorted(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def evaluate(self, point: object) -> ExactScalar:
        x = to_scalar(point)
        return sum((c * scalar_power(x, e) for e, c in self._coeffs.items()), ZERO)

    def scale(self, coefficient: object) -> "SparsePolynomial":
        c = to_scalar(coefficient)
        return SparsePolynomial(self.tag, {e: c * v for e, v in self._coeffs.items()})

    def _check_tag(self, other: "SparsePolynomial") -> None:
        if self.tag != other.tag:
            raise InvalidPolynomialError(f"variables {self.tag} and {other.tag} differ")

    def __add__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        self._check_tag(other)
        acc = dict(self._coeffs)
        for e, c in other._coeffs.items():
            acc[e] = acc.get(e, ZERO) + c
        return SparsePolynomial(self.tag, acc)

    def __neg__(self) -> "SparsePolynomial":
        return self.scale(-1)

    def __sub__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        return self + (-other)

    def __mul__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        self._check_tag(other)
        if self.is_zero() or other.is_zero():
            return SparsePolynomial(self.tag)
        left, left_shift = self._as_poly()
        right, right_shift = other._as_poly()
        product = SparsePolynomial.from_sympy(left * right, self.tag)
        shift = left_shift + right_shift
        return SparsePolynomial(self.tag, {e + shift: c for e, c in product._coeffs.items()})

    def __pow__(self, exponent: int) -> "SparsePolynomial":
        if exponent < 0:
            raise InvalidPolynomialError("negative powers of polynomials are not supported")
        result = SparsePolynomial.one(self.tag)
        for _ in range(exponent):
            result = result * self
        return result

    def substitute_reciprocal(self) -> "SparsePolynomial":
        """u^deg * p(1/u)."""
        top = self.degree
        return SparsePolynomial(self.tag, {top - e: c for e, c in self._coeffs.items()})

    def rational_roots(self) -> Dict[ExactScalar, int]:
        """
        Roots with multiplicity; raises NonRationalRootsError if p does not split over QQ.
        """
        if self.is_zero():
            raise InvalidPolynomialError("the zero polynomial has no root multiset")
        _, factors = factor_list(self.to_sympy().as_expr(), Symbol(self.tag), domain=QQ)
        roots: Dict[ExactScalar, int] = {}
        for factor, multiplicity in factors:
            poly = Poly(factor, Symbol(self.tag), domain=QQ)
            if poly.degree() == 0:
                continue
            if poly.degree() > 1:
                raise NonRationalRootsError(f"factor {factor} has no rational roots")
            c1, c0 = poly.all_coeffs()
            root = QQ.convert(-c0) / QQ.convert(c1)
            roots[root] = roots.get(root, 0) + int(multiplicity)
        return roots

    def render(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in self.terms():
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*{self.tag}")
            else:
                parts.append(f"{c}*{self.tag}^{e}")
        return " + ".join(parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.tag == other.tag and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.tag, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        return f"SparsePolynomial({self.tag}: {self.render()})"


def _to_polynomial(expr: Expr, tag: str) -> SparsePolynomial:
    symbol = Symbol(tag)
    extra = expr.free_symbols - {symbol}
    if extra:
        raise InvalidPolynomialError(f"unexpected symbols {sorted(map(str, extra))}")
    try:
        poly = Poly(expr.expand(), symbol, domain=QQ)
    except Exception as e:
        raise InvalidPolynomialError(f"not a polynomial in {tag}: {expr}") from e
    return SparsePolynomial.from_sympy(poly, tag)


def _check_tokens(text: str, tag: str) -> None:
    """Only integers, the variable, arithmetic, brackets and commas may appear."""
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None or match.end() == position:
            raise InvalidPolynomialError(f"unexpected character {text[position:].strip()[:1]!r} in {text!r}")
        name = match.group("name")
        if name is not None and name != tag:
            raise InvalidPolynomialError(f"unexpected symbols ['{name}'] in {text!r}")
        position = match.end()


def _parse(text: str, tag: str):
    _check_tokens(text, tag)
    try:
        return parse_expr(text, local_dict={tag: Symbol(tag)}, transformations=_TRANSFORMATIONS)
    except Exception as e:
        raise InvalidPolynomialError(f"cannot parse {text!r}: {e}") from e


def parse_polynomial(text: str, tag: str = "u") -> SparsePolynomial:
    """
    Parse factored or expanded text such as "(1-u)^2*(1-2u)" with exact coefficients.

    Args:
        text: Polynomial text; "^" is power, juxtaposition is multiplication
        tag: Variable name used in the text

    Returns:
        Parsed polynomial
    """
    expr = _parse(text, tag)
    if isinstance(expr, (list, tuple)):
        raise InvalidPolynomialError("expected a single polynomial, got a list")
    return _to_polynomial(expr, tag)


def parse_polynomial_list(text: str, tag: str = "u") -> List[SparsePolynomial]:
    """Parse a bracketed list such as "[1,(1-u)^2]"."""
    expr = _parse(text, tag)
    if not isinstance(expr, (list, tuple)):
        expr = [expr]
    return [_to_polynomial(item if isinstance(item, Expr) else _parse(str(item), tag), tag) for item in expr]


def series_product(factors: Sequence[SparsePolynomial], order: int) -> List[ExactScalar]:
    """Coefficients 0..order of a product of polynomials in u."""
    result = SparsePolynomial.one("u")
    for factor in factors:
        result = result * factor
    return result.coefficients(order)


def linear_factor(point: object, tag: str = "u") -> SparsePolynomial:
    """1 - a*u."""
    return SparsePolynomial(tag, {0: ONE, 1: -to_scalar(point)})
