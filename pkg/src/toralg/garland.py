"""Garland identities in divided-power form, evaluated on highest vectors."""
from dataclasses import dataclass
from math import factorial
from typing import Optional, Protocol, Tuple

from src.errors import ImaginaryRootError
from src.exactla.scalars import ONE
from src.exactla.sparse import SparseVector
from src.liecore.algebra import ChevalleyAlgebra
from src.toralg.bracket import bracket_tor
from src.toralg.elements import TorElement
from src.toralg.lambda_series import LambdaCoefficient, lambda_series
from src.toralg.roots import TorRoot, is_positive_affine


class SupportsOperators(Protocol):
    def operator(self, element: TorElement): ...

    def identity_operator(self): ...


@dataclass(frozen=True)
class RootVectors:
    """x+_beta, x-_beta and h_beta = [x+_beta, x-_beta] for a real positive affine root."""

    raising: TorElement
    lowering: TorElement
    coroot: TorElement


def root_vectors(algebra: ChevalleyAlgebra, beta: TorRoot) -> RootVectors:
    """
    Root vectors of beta = alpha + r1 delta_1 in R+_aff.

    Raises:
        ImaginaryRootError: If alpha = 0
        ValueError: If beta is not a positive affine root
    """
    if not beta.is_real():
        raise ImaginaryRootError(f"{beta} has zero finite part")
    if not is_positive_affine(algebra.roots, beta.finite, beta.r1):
        raise ValueError(f"{beta} is not a positive affine root")
    finite = tuple(beta.finite)
    if algebra.roots.is_positive(finite):
        up, down = algebra.plus(finite), algebra.minus(finite)
    else:
        negated = tuple(-c for c in finite)
        up, down = algebra.minus(negated), algebra.plus(negated)
    raising = TorElement.term(algebra, up, beta.r1, 0)
    lowering = TorElement.term(algebra, down, -beta.r1, 0)
    return RootVectors(raising, lowering, bracket_tor(raising, lowering))


@dataclass(frozen=True)
class GarlandIdentity:
    """
    (x+_beta t2^{±1})^(p) (x-_beta)^(s+1) = sum_m coefficient * (x-_beta t2^{±m}) Lambda±(h_beta, s-m)
    modulo the left ideal generated by the raising part, with divided powers y^(k) = y^k / k!.

    For p = s the right side is (-1)^s sum_{m=0}^{s} (x-_beta t2^{±m}) Lambda±(h_beta, s-m);
    for the degree variant p = s + 1 it is (-1)^(s+1) Lambda±(h_beta, s+1).
    """

    beta: TorRoot
    s: int
    sign: int
    degree_variant: bool
    raising_letter: TorElement
    raising_power: int
    lowering_letter: TorElement
    lowering_power: int
    rhs: Tuple[Tuple[Optional[TorElement], object, LambdaCoefficient], ...]

    @property
    def lhs_scale(self):
        return ONE / (factorial(self.raising_power) * factorial(self.lowering_power))

    def render(self) -> str:
        lhs = (
            f"({self.raising_letter.render()})^({self.raising_power}) "
            f"({self.lowering_letter.render()})^({self.lowering_power})"
        )
        parts = []
        for letter, coeff, lam in self.rhs:
            prefix = f"{coeff}*" + (f"({letter.render()}) " if letter is not None else "")
            parts.append(f"{prefix}[{lam.render()}]")
        return f"{lhs} = " + " + ".join(parts)

    def evaluate(self, module: SupportsOperators, vector: SparseVector) -> Tuple[SparseVector, SparseVector, bool]:
        """
        Apply both sides to a vector of the module.

        Returns:
            (lhs vector, rhs vector, lossy) where lossy means a window boundary was crossed
        """
        lossy = False
        raise_op = module.operator(self.raising_letter)
        lower_op = module.operator(self.lowering_letter)
        current = vector
        for _ in range(self.lowering_power):
            current, hit = lower_op.apply_tracked(current)
            lossy = lossy or hit
        for _ in range(self.raising_power):
            current, hit = raise_op.apply_tracked(current)
            lossy = lossy or hit
        lhs = current.scale(self.lhs_scale)

        identity = module.identity_operator()
        rhs = SparseVector()
        for letter, coeff, lam in self.rhs:
            lam_op = lam.evaluate_operator(lambda s, lam=lam: module.operator(lam.symbol_element(s)), identity)
            image, hit = lam_op.apply_tracked(vector)
            lossy = lossy or hit
            if letter is not None:
                image, hit = module.operator(letter).apply_tracked(image)
                lossy = lossy or hit
            rhs = rhs + image.scale(coeff)
        return lhs, rhs, lossy


def garland_pair(algebra: ChevalleyAlgebra, beta: TorRoot, s: int, sign: int, degree_variant: bool = False) -> GarlandIdentity:
    """
    Build the Garland identity for a real positive affine root.

    Args:
        algebra: Underlying finite algebra
        beta: alpha + r1 delta_1 with alpha != 0
        s: Positive integer
        sign: +1 or -1 (t2 versus t2^-1)
        degree_variant: Use the (s+1)-th raising power, whose right side is a single Lambda

    Raises:
        ImaginaryRootError: If beta is imaginary
    """
    if s < 1:
        raise ValueError(f"s must be positive, got {s}")
    vectors = root_vectors(algebra, beta)
    series = lambda_series(vectors.coroot, sign, s + 1)
    raising_letter = vectors.raising.shift_t2(sign)
    if degree_variant:
        rhs = ((None, (-1) ** (s + 1), series[s + 1]),)
        power = s + 1
    else:
        rhs = tuple(
            (vectors.lowering.shift_t2(sign * m), (-1) ** s, series[s - m]) for m in range(s + 1)
        )
        power = s
    return GarlandIdentity(
        beta=beta,
        s=s,
        sign=sign,
        degree_variant=degree_variant,
        raising_letter=raising_letter,
        raising_power=power,
        lowering_letter=vectors.lowering,
        lowering_power=s + 1,
        rhs=rhs,
    )


def garland_residual(identity: GarlandIdentity, module: SupportsOperators, vector: SparseVector) -> Tuple[SparseVector, bool]:
    """lhs - rhs on the vector, with the loss flag."""
    lhs, rhs, lossy = identity.evaluate(module, vector)
    return lhs - rhs, lossy
