"""Exceptions raised by the representation engine."""
from typing import Optional


class TorrepError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatchError(TorrepError, ValueError):
    """Vectors or matrices of incompatible ambient dimension."""


class InvalidCartanMatrixError(TorrepError, ValueError):
    """Cartan data that does not describe a supported Cartan matrix."""


class AlgebraMismatchError(TorrepError, ValueError):
    """Elements from two different algebras were combined."""


class NonDominantWeightError(TorrepError, ValueError):
    """A dominant integral weight was required."""


class ZeroLevelError(TorrepError, ValueError):
    """An affine highest weight of level zero was given."""


class InvalidPointsError(TorrepError, ValueError):
    """Evaluation points are zero or repeated where that is forbidden."""


class ImaginaryRootError(TorrepError, ValueError):
    """A real root was required but an imaginary one was given."""


class ZeroRootError(TorrepError, ValueError):
    """The zero vector is not a root."""


class InvalidPolynomialError(TorrepError, ValueError):
    """Malformed polynomial text or an illegal exponent for the variable."""


class PolyTupleRejection(TorrepError, ValueError):
    """p-data that does not come from a tuple of polynomials."""

    def __init__(self, node: int, condition: str, detail: Optional[str] = None):
        self.node = node
        self.condition = condition
        self.detail = detail
        message = f"node {node}: condition '{condition}' violated"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)


class NonRationalRootsError(TorrepError, ValueError):
    """A polynomial does not split over the rationals."""


class RestrictedShapeError(TorrepError, ValueError):
    """A tuple is not of the shape (1 - a u)^n_j with a common point a."""


class NonCyclicFactorError(TorrepError, ValueError):
    """A fusion factor is not generated by its marked vector."""


class WindowLossError(TorrepError, RuntimeError):
    """An element cannot be represented inside the truncation window."""


class ResourceBoundExceededError(TorrepError, RuntimeError):
    """A construction would exceed the configured basis-size bound."""


class UnknownCheckError(TorrepError, KeyError):
    """No check is registered under the requested name."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown check"


class InvalidParamsError(TorrepError, ValueError):
    """Check parameters failed validation."""
