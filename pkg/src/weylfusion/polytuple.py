"""Polynomial tuples pi = (pi_0, ..., pi_n) and the eigenvalue data p± they encode."""
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import structlog

from src.errors import InvalidPolynomialError, PolyTupleRejection
from src.exactla.polynomials import SparsePolynomial, linear_factor
from src.exactla.scalars import ExactScalar, ONE, ZERO, format_scalar, to_scalar
from src.liecore.algebra import ChevalleyAlgebra
from src.repengine.module import TorWeight
from src.toralg.lambda_series import power_sums_from_coefficients

logger = structlog.get_logger()


def minus_transform(poly: SparsePolynomial) -> SparsePolynomial:
    """
    pi^-(u) = u^deg pi(1/u), normalized to constant term 1.

    Raises:
        InvalidPolynomialError: If pi(0) = 0
    """
    if poly.constant_term == 0:
        raise InvalidPolynomialError(f"{poly.render()} has zero constant term")
    reversed_poly = poly.substitute_reciprocal()
    return reversed_poly.scale(ONE / reversed_poly.constant_term)


class PolyTuple:
    """
    An (n+1)-tuple of polynomials in u with constant term 1.

    deg pi_i is lambda(h_i); the coefficients of pi_i and of pi_i^- are the
    eigenvalues of Lambda+(h_i, r) and Lambda-(h_i, r) on the cyclic vector.
    """

    def __init__(self, algebra: ChevalleyAlgebra, polynomials: Sequence[SparsePolynomial]):
        if len(polynomials) != algebra.rank + 1:
            raise InvalidPolynomialError(f"expected {algebra.rank + 1} polynomials, got {len(polynomials)}")
        for i, poly in enumerate(polynomials):
            if poly.tag != "u":
                raise InvalidPolynomialError(f"pi_{i} must be a polynomial in u")
            if poly.constant_term != 1:
                raise InvalidPolynomialError(f"pi_{i} = {poly.render()} does not have constant term 1")
        self.algebra = algebra
        self.polynomials: Tuple[SparsePolynomial, ...] = tuple(polynomials)
        self._minus = tuple(minus_transform(p) for p in self.polynomials)
        self._sums: Dict[Tuple[int, int], List[ExactScalar]] = {}

    @classmethod
    def trivial(cls, algebra: ChevalleyAlgebra) -> "PolyTuple":
        return cls(algebra, [SparsePolynomial.one("u") for _ in range(algebra.rank + 1)])

    @classmethod
    def fundamental(cls, algebra: ChevalleyAlgebra, node: int, point: object, power: int = 1) -> "PolyTuple":
        """pi_{i,a}: pi_i = (1 - a u)^power and every other pi_j = 1."""
        if not 0 <= node <= algebra.rank:
            raise ValueError(f"node {node} out of range 0..{algebra.rank}")
        polys = [SparsePolynomial.one("u") for _ in range(algebra.rank + 1)]
        polys[node] = linear_factor(point) ** power
        return cls(algebra, polys)

    @property
    def degrees(self) -> Tuple[int, ...]:
        """lambda_pi(h_i) = deg pi_i."""
        return tuple(p.degree for p in self.polynomials)

    def top_weight(self) -> TorWeight:
        return TorWeight.affine(self.algebra, self.degrees)

    def minus(self, node: int) -> SparsePolynomial:
        return self._minus[node]

    def minus_tuple(self) -> "PolyTuple":
        return PolyTuple(self.algebra, list(self._minus))

    def p_coefficients(self, node: int, sign: int, order: Optional[int] = None) -> List[ExactScalar]:
        """p±_r(h_i) for r = 0..order (default: the degree)."""
        poly = self.polynomials[node] if sign > 0 else self._minus[node]
        return poly.coefficients(order)

    def power_sum(self, node: int, k: int) -> ExactScalar:
        """Eigenvalue of h_i t2^k on the cyclic vector; k = 0 gives deg pi_i."""
        if k == 0:
            return to_scalar(self.degrees[node])
        sign = 1 if k > 0 else -1
        steps = abs(k)
        cached = self._sums.get((node, sign))
        if cached is None or len(cached) < steps:
            coefficients = self.p_coefficients(node, sign)
            cached = power_sums_from_coefficients(coefficients, max(steps, 2 * len(coefficients)))
            self._sums[(node, sign)] = cached
        return cached[steps - 1]

    def central_value(self, k: int) -> ExactScalar:
        """Eigenvalue of c1 t2^k = h_0 t2^k + sum m_i h_i t2^k."""
        marks = self.algebra.roots.affine_marks()
        return sum((m * self.power_sum(i, k) for i, m in enumerate(marks)), ZERO)

    def roots(self) -> Dict[ExactScalar, Tuple[int, ...]]:
        """
        Distinct points a with pi_i = prod (1 - a u)^{m_i(a)}, mapped to the multiplicities m_i(a).

        Raises:
            NonRationalRootsError: If some pi_i does not split over Q
        """
        table: Dict[ExactScalar, List[int]] = {}
        for i, poly in enumerate(self.polynomials):
            if poly.degree == 0:
                continue
            for root, multiplicity in poly.rational_roots().items():
                point = ONE / root
                table.setdefault(point, [0] * len(self.polynomials))[i] += multiplicity
        return {a: tuple(m) for a, m in sorted(table.items())}

    def factors(self) -> List[Tuple[ExactScalar, "PolyTuple"]]:
        """The one-point tuples pi^(a) with pi_i^(a) = (1 - a u)^{m_i(a)}."""
        out = []
        for point, multiplicities in self.roots().items():
            polys = [linear_factor(point) ** m for m in multiplicities]
            out.append((point, PolyTuple(self.algebra, polys)))
        return out

    def render(self) -> str:
        return "[" + ", ".join(p.render() for p in self.polynomials) + "]"

    def as_dict(self) -> Dict[str, object]:
        return {
            "polynomials": [[format_scalar(c) for c in p.coefficients()] for p in self.polynomials],
            "degrees": list(self.degrees),
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyTuple):
            return NotImplemented
        return self.algebra == other.algebra and self.polynomials == other.polynomials

    def __hash__(self) -> int:
        return hash((self.algebra, self.polynomials))

    def __repr__(self) -> str:
        return f"PolyTuple({self.render()})"


def poly_tuple_from_pdata(
    algebra: ChevalleyAlgebra,
    degrees: Sequence[int],
    p_plus: Mapping[int, Sequence[object]],
    p_minus: Mapping[int, Sequence[object]],
) -> PolyTuple:
    """
    Accept eigenvalue data (lambda, p±) exactly when it comes from a polynomial tuple.

    Args:
        algebra: Finite algebra
        degrees: lambda(h_i) for i = 0..n
        p_plus: node -> [p+_1(h_i), p+_2(h_i), ...]; missing nodes are all zero
        p_minus: node -> [p-_1(h_i), p-_2(h_i), ...]

    Returns:
        The tuple with pi_i = 1 + sum_r p+_r(h_i) u^r

    Raises:
        PolyTupleRejection: At the first node where lambda(h_i) = deg pi_i fails ("degree")
            or the p- data is not the reversed normalization of pi_i ("reciprocal")
    """
    if len(degrees) != algebra.rank + 1:
        raise InvalidPolynomialError(f"expected {algebra.rank + 1} degrees, got {len(degrees)}")
    polys: List[SparsePolynomial] = []
    for i in range(algebra.rank + 1):
        if degrees[i] < 0:
            raise PolyTupleRejection(i, "degree", f"lambda(h_{i}) = {degrees[i]} is negative")
        plus = SparsePolynomial.from_coefficients("u", [1] + list(p_plus.get(i, [])))
        if plus.degree != degrees[i]:
            raise PolyTupleRejection(
                i, "degree", f"lambda(h_{i}) = {degrees[i]} but the p+ data has degree {plus.degree}"
            )
        minus = SparsePolynomial.from_coefficients("u", [1] + list(p_minus.get(i, [])))
        expected = minus_transform(plus)
        if minus != expected:
            raise PolyTupleRejection(
                i, "reciprocal", f"p- data {minus.render()} differs from {expected.render()}"
            )
        polys.append(plus)
    result = PolyTuple(algebra, polys)
    logger.info("poly_tuple_accepted", degrees=list(result.degrees))
    return result
