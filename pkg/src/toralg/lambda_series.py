"""Coefficients of Lambda±(h, u) = exp(-sum_{s>=1} h t2^{±s} u^s / s)."""
from typing import Callable, List, Sequence, Tuple, TypeVar

from sympy import Poly, Rational, Symbol, exp, symbols
from sympy.polys.domains import QQ

from src.exactla.scalars import ExactScalar, ZERO, format_scalar, scalar_power, to_scalar
from src.toralg.elements import TorElement

T = TypeVar("T")


def power_symbols(order: int) -> Tuple[Symbol, ...]:
    """Commuting symbols p_s standing for h t2^{±s}, s = 1..max(order, 1)."""
    return symbols(f"p1:{max(order, 1) + 1}")


class LambdaCoefficient:
    """
    Lambda±(h, r) as a commutative polynomial in the symbols h t2^{±s}.

    Every monomial has total t2-degree ±r.
    """

    def __init__(self, h: TorElement, sign: int, order: int, poly: Poly):
        self.h = h
        self.sign = sign
        self.order = order
        self.poly = poly

    def terms(self) -> List[Tuple[Tuple[int, ...], ExactScalar]]:
        """(exponent of each p_s, coefficient) pairs in a fixed order."""
        return sorted((monom, QQ.convert(c)) for monom, c in self.poly.terms())

    def symbol_element(self, s: int) -> TorElement:
        """The element h t2^{sign*s} behind the symbol p_s."""
        return self.h.shift_t2(self.sign * s)

    def evaluate(self, value_of: Callable[[int], ExactScalar]) -> ExactScalar:
        """Substitute the scalar value_of(s) for every p_s."""
        total = ZERO
        for monom, c in self.terms():
            term = c
            for s, e in enumerate(monom, start=1):
                if e:
                    term = term * scalar_power(to_scalar(value_of(s)), e)
            total += term
        return total

    def evaluate_operator(self, operator_of: Callable[[int], T], identity: T) -> T:
        """
        Substitute commuting operators for the symbols.

        The operators must support @, + and scale().
        """
        cache = {}
        result = identity.scale(0)
        for monom, c in self.terms():
            op = identity
            for s, e in enumerate(monom, start=1):
                for _ in range(e):
                    if s not in cache:
                        cache[s] = operator_of(s)
                    op = op @ cache[s]
            result = result + op.scale(c)
        return result

    def render(self) -> str:
        if self.poly.is_zero:
            return "0"
        parts = []
        for monom, c in self.terms():
            factors = []
            for s, e in enumerate(monom, start=1):
                if not e:
                    continue
                symbol = "(h t2)" if s == 1 and self.sign > 0 else f"(h t2^{self.sign * s})"
                factors.append(symbol if e == 1 else f"{symbol}^{e}")
            body = "*".join(factors) if factors else "1"
            parts.append(f"{format_scalar(c)}*{body}" if factors else format_scalar(c))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LambdaCoefficient(sign={self.sign}, r={self.order}: {self.render()})"


def lambda_series(h: TorElement, sign: int, order: int) -> List[LambdaCoefficient]:
    """
    Lambda±(h, r) for r = 0..order by the Newton recursion
    r Lambda(h, r) = -sum_{s=1}^{r} (h t2^{±s}) Lambda(h, r - s).

    Args:
        h: Element of the affine Cartan subalgebra (r2 = 0)
        sign: +1 or -1
        order: Largest r

    Returns:
        order + 1 coefficients
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    gens = power_symbols(order)
    coeffs = [Poly(1, *gens, domain=QQ)]
    for r in range(1, order + 1):
        acc = Poly(0, *gens, domain=QQ)
        for s in range(1, r + 1):
            acc = acc + Poly(gens[s - 1], *gens, domain=QQ) * coeffs[r - s]
        coeffs.append(acc * Rational(-1, r))
    return [LambdaCoefficient(h, sign, r, p) for r, p in enumerate(coeffs)]


def exp_expansion_oracle(order: int) -> List[Poly]:
    """Coefficients of u^0..u^order of exp(-sum p_s u^s / s), expanded by sympy's series."""
    gens = power_symbols(order)
    u = Symbol("u")
    argument = -sum(gens[s - 1] * u ** s / s for s in range(1, order + 1))
    expansion = exp(argument).series(u, 0, order + 1).removeO().expand()
    out = []
    for r in range(order + 1):
        out.append(Poly(expansion.coeff(u, r), *gens, domain=QQ))
    return out


def power_sums_from_coefficients(coefficients: Sequence[ExactScalar], count: int) -> List[ExactScalar]:
    """
    Values P(s), s = 1..count, with sum_r c_r u^r = exp(-sum_s P(s) u^s / s).

    Uses l_s = s c_s - sum_{j=1}^{s-1} c_j l_{s-j} and P(s) = -l_s.
    """
    c = [to_scalar(x) for x in coefficients]

    def coeff(k: int) -> ExactScalar:
        return c[k] if k < len(c) else ZERO

    logs: List[ExactScalar] = [ZERO]
    for s in range(1, count + 1):
        value = s * coeff(s)
        for j in range(1, s):
            value -= coeff(j) * logs[s - j]
        logs.append(value)
    return [-v for v in logs[1:]]
