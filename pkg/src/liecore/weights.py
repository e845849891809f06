"""Finite weights, Weyl reflections, duals and the Weyl dimension formula."""
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.errors import DimensionMismatchError, NonDominantWeightError
from src.exactla.scalars import ExactScalar, ONE, to_scalar
from src.liecore.algebra import ChevalleyAlgebra


class FinWeight(BaseModel):
    """Weight given by its values lambda(h_i), i = 1..n."""

    model_config = ConfigDict(frozen=True)

    coords: Tuple[int, ...] = Field(..., description="lambda(h_i) for i = 1..n")

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def __add__(self, other: "FinWeight") -> "FinWeight":
        return FinWeight(coords=tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "FinWeight":
        return FinWeight(coords=tuple(-c for c in self.coords))

    @classmethod
    def of(cls, *coords: int) -> "FinWeight":
        return cls(coords=tuple(coords))

    @classmethod
    def zero(cls, rank: int) -> "FinWeight":
        return cls(coords=(0,) * rank)


def _check_rank(algebra: ChevalleyAlgebra, weight: FinWeight) -> None:
    if weight.rank != algebra.rank:
        raise DimensionMismatchError(f"weight of rank {weight.rank} for algebra of rank {algebra.rank}")


def simple_reflection(algebra: ChevalleyAlgebra, weight: FinWeight, i: int) -> FinWeight:
    """s_i(mu) = mu - mu(h_i) alpha_i, with 1 <= i <= n."""
    _check_rank(algebra, weight)
    m = weight.coords[i - 1]
    coords = tuple(c - m * algebra.matrix[i - 1][j] for j, c in enumerate(weight.coords))
    return FinWeight(coords=coords)


def dual_dominant_weight(algebra: ChevalleyAlgebra, weight: FinWeight) -> FinWeight:
    """
    Highest weight of the dual module, -w0(lambda).

    Reflects -lambda by simple reflections until it becomes dominant.

    Raises:
        NonDominantWeightError: If lambda is not dominant
    """
    _check_rank(algebra, weight)
    if not weight.is_dominant:
        raise NonDominantWeightError(f"{weight.coords} is not dominant")
    mu = -weight
    while not mu.is_dominant:
        i = next(k for k, c in enumerate(mu.coords) if c < 0)
        mu = simple_reflection(algebra, mu, i + 1)
    return mu


def weyl_dimension(algebra: ChevalleyAlgebra, weight: FinWeight) -> int:
    """Dimension of V_fin(lambda) by the Weyl dimension formula."""
    _check_rank(algebra, weight)
    if not weight.is_dominant:
        raise NonDominantWeightError(f"{weight.coords} is not dominant")
    result: ExactScalar = ONE
    for root in algebra.roots.positive:
        numerator = sum(c * (l + 1) for c, l in zip(root, weight.coords))
        result = result * to_scalar(numerator) / to_scalar(sum(root))
    return int(result.numerator)
