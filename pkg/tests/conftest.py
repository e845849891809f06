"""Shared fixtures: small algebras and modules."""
import pytest

from src.liecore.algebra import build_algebra
from src.liecore.cartan import CartanData
from src.liecore.weights import FinWeight
from src.repengine.highest_weight import fundamental_coords, irreducible_aff_truncated, irreducible_fin


@pytest.fixture(scope="session")
def sl2():
    return build_algebra(CartanData.parse("A1"))


@pytest.fixture(scope="session")
def sl3():
    return build_algebra(CartanData.parse("A2"))


@pytest.fixture(scope="session")
def doublet(sl2):
    """V_fin(1) of sl2."""
    return irreducible_fin(sl2, FinWeight.of(1))


@pytest.fixture(scope="session")
def basic_aff(sl2):
    """V_aff(omega_0) of affine sl2 at depth 2."""
    return irreducible_aff_truncated(sl2, fundamental_coords(sl2, 0), 2)
