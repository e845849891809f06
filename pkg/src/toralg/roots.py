"""Toroidal roots and the partition into raising, Cartan and lowering parts."""
from enum import Enum
from typing import NamedTuple, Tuple

from src.errors import ZeroRootError
from src.liecore.algebra import ChevalleyAlgebra
from src.liecore.roots import RootSystem


class RootClass(str, Enum):
    RAISING = "R_tor(>)"
    CARTAN = "R_tor(0)"
    LOWERING = "R_tor(<)"


class TorRoot(NamedTuple):
    """alpha + r1 delta_1 + r2 delta_2 with alpha in R_fin ∪ {0}."""

    finite: Tuple[int, ...]
    r1: int = 0
    r2: int = 0

    def is_zero(self) -> bool:
        return not any(self.finite) and self.r1 == 0 and self.r2 == 0

    def is_real(self) -> bool:
        return any(self.finite)

    def __neg__(self) -> "TorRoot":
        return TorRoot(tuple(-c for c in self.finite), -self.r1, -self.r2)

    def affine_coordinates(self, roots: RootSystem) -> Tuple[int, ...]:
        """Coefficients (k_0, ..., k_n) of alpha + r1 delta in the affine simple roots."""
        theta = roots.highest
        return (self.r1,) + tuple(c + self.r1 * t for c, t in zip(self.finite, theta))


def is_positive_affine(roots: RootSystem, finite: Tuple[int, ...], r1: int) -> bool:
    """alpha + r1 delta in R+_aff (real or imaginary)."""
    if r1 > 0:
        return not any(finite) or roots.is_root(finite)
    if r1 == 0:
        return roots.is_positive(finite)
    return False


def classify_root(roots: RootSystem, root: TorRoot) -> RootClass:
    """
    Place a toroidal root in R_tor(>), R_tor(0) or R_tor(<).

    Raises:
        ZeroRootError: For the zero vector
    """
    if root.is_zero():
        raise ZeroRootError("the zero vector is not a root")
    if is_positive_affine(roots, root.finite, root.r1):
        return RootClass.RAISING
    if not any(root.finite) and root.r1 == 0:
        return RootClass.CARTAN
    return RootClass.LOWERING


def root_of_term(algebra: ChevalleyAlgebra, index: int, r1: int, r2: int) -> TorRoot:
    return TorRoot(algebra.root_of(index), r1, r2)


def term_class(algebra: ChevalleyAlgebra, index: int, r1: int, r2: int) -> RootClass:
    """Class of x t1^r1 t2^r2; Cartan elements at r1 = 0 are always R_tor(0)."""
    root = root_of_term(algebra, index, r1, r2)
    if not any(root.finite) and r1 == 0:
        return RootClass.CARTAN
    return classify_root(algebra.roots, root)
