"""Weights, truncation descriptors and the truncated weight-module base class."""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import structlog
from pydantic import BaseModel, Field

from src.errors import AlgebraMismatchError, WindowLossError
from src.exactla.scalars import ExactScalar, ZERO, format_scalar, to_scalar
from src.exactla.sparse import SparseVector
from src.liecore.algebra import ChevalleyAlgebra
from src.repengine.operators import Operator
from src.toralg.elements import AffineGenerators, TorElement

logger = structlog.get_logger()


@dataclass(frozen=True)
class TorWeight:
    """Eigenvalues of h_1..h_n, c1, d1, c2 and d2 on a weight vector."""

    fin: Tuple[ExactScalar, ...]
    c1: ExactScalar = ZERO
    d1: ExactScalar = ZERO
    c2: ExactScalar = ZERO
    d2: ExactScalar = ZERO

    @classmethod
    def make(cls, fin: Sequence[object], c1: object = 0, d1: object = 0, d2: object = 0) -> "TorWeight":
        return cls(tuple(to_scalar(x) for x in fin), to_scalar(c1), to_scalar(d1), ZERO, to_scalar(d2))

    @classmethod
    def affine(cls, algebra: ChevalleyAlgebra, coords: Sequence[int], d1: object = 0) -> "TorWeight":
        """Weight with lambda(h_i) = coords[i] for i = 0..n; c1 = sum of marks * coords."""
        marks = algebra.roots.affine_marks()
        level = sum(m * c for m, c in zip(marks, coords))
        return cls.make(coords[1:], level, d1)

    def h0(self, algebra: ChevalleyAlgebra) -> ExactScalar:
        """lambda(h_0) = lambda(c1) - lambda(h_theta)."""
        return self.c1 - sum((m * v for m, v in zip(algebra.roots.marks, self.fin)), ZERO)

    def affine_coords(self, algebra: ChevalleyAlgebra) -> Tuple[ExactScalar, ...]:
        return (self.h0(algebra),) + self.fin

    def __add__(self, other: "TorWeight") -> "TorWeight":
        return TorWeight(
            tuple(a + b for a, b in zip(self.fin, other.fin)),
            self.c1 + other.c1, self.d1 + other.d1, self.c2 + other.c2, self.d2 + other.d2,
        )

    def __neg__(self) -> "TorWeight":
        return TorWeight(tuple(-a for a in self.fin), -self.c1, -self.d1, -self.c2, -self.d2)

    def __sub__(self, other: "TorWeight") -> "TorWeight":
        return self + (-other)

    def sort_key(self) -> Tuple:
        return (-self.d1, tuple(-x for x in self.fin), -self.c1)

    def as_list(self) -> List[str]:
        return [format_scalar(x) for x in self.fin] + [format_scalar(self.c1), format_scalar(self.d1)]

    def render(self) -> str:
        return "(" + ", ".join(self.as_list()) + ")"


class Truncation(BaseModel):
    """Window description reported with every truncated module."""

    depth: Optional[int] = Field(None, description="bound on d1-depth below the top")
    height: Optional[int] = Field(None, description="bound on weight depth (sum of simple-root coefficients)")
    t2_window: Optional[Tuple[int, int]] = Field(None, description="t2-degree window [K_lo, K_hi]")
    loop_window: Optional[int] = Field(None, description="Laurent window |s| <= S")
    fusion_degree: Optional[int] = Field(None, description="filtration degree bound R")


class WeightModule(ABC):
    """
    Finite truncation of a weight module of g_tor.

    Subclasses provide the basis and the action of single terms x t1^r1 t2^r2,
    of c1 t2^k and of d1; operator() assembles arbitrary TorElements from these.
    """

    kind: str = "module"

    def __init__(
        self,
        algebra: ChevalleyAlgebra,
        labels: List[str],
        weights: List[TorWeight],
        truncation: Truncation,
        affine: bool = True,
    ):
        self.algebra = algebra
        self.affine = affine
        self.nodes = list(range(0 if affine else 1, algebra.rank + 1))
        self.labels = labels
        self.weights = weights
        self.truncation = truncation
        self.generators = AffineGenerators(algebra)
        self._cache: Dict[TorElement, Operator] = {}
        self._weight_index: Optional[Dict[TorWeight, List[int]]] = None

    @property
    def dim(self) -> int:
        return len(self.labels)

    def descriptor(self) -> str:
        return self.kind

    # weights

    def weight_spaces(self) -> Dict[TorWeight, List[int]]:
        if self._weight_index is None:
            index: Dict[TorWeight, List[int]] = {}
            for i, w in enumerate(self.weights):
                index.setdefault(w, []).append(i)
            self._weight_index = index
        return self._weight_index

    def inexact_weights(self) -> FrozenSet[TorWeight]:
        """Weights whose dimension is not certified by the construction."""
        return frozenset()

    def grade(self, index: int) -> Tuple[int, int]:
        """(depth, height) of a basis vector used by tensor windows."""
        return (0, 0)

    # action

    @abstractmethod
    def term_operator(self, index: int, r1: int, r2: int) -> Operator:
        """Action of x t1^r1 t2^r2 for a Chevalley basis index."""

    @abstractmethod
    def central_operator(self, k: int) -> Operator:
        """Action of c1 t2^k."""

    @abstractmethod
    def d1_operator(self) -> Operator:
        """Action of d1."""

    def d2_operator(self) -> Operator:
        raise WindowLossError(f"d2 does not act on {self.descriptor()}")

    def c2_operator(self) -> Operator:
        return Operator.zero(self.dim)

    def identity_operator(self) -> Operator:
        return Operator.identity(self.dim)

    def operator(self, element: TorElement) -> Operator:
        """
        Operator of an arbitrary element, assembled term by term and cached.

        Raises:
            WindowLossError: If some part of the element cannot act on this truncation
        """
        if element.algebra != self.algebra:
            raise AlgebraMismatchError(f"{element.algebra!r} acting on module over {self.algebra!r}")
        cached = self._cache.get(element)
        if cached is not None:
            return cached
        total = Operator.zero(self.dim)
        for (index, r1, r2), c in element.iter_terms():
            total = total + self.term_operator(index, r1, r2).scale(c)
        for k, c in sorted(element.central.items()):
            total = total + self.central_operator(k).scale(c)
        if element.c2:
            total = total + self.c2_operator().scale(element.c2)
        if element.d1:
            total = total + self.d1_operator().scale(element.d1)
        if element.d2:
            total = total + self.d2_operator().scale(element.d2)
        self._cache[element] = total
        return total

    def act(self, element: TorElement, vector: SparseVector) -> SparseVector:
        """
        Apply an element to a vector.

        Raises:
            WindowLossError: If the image is not determined inside the window
        """
        image, lossy = self.operator(element).apply_tracked(vector)
        if lossy:
            raise WindowLossError(f"{element.render()} leaves the window of {self.descriptor()}")
        return image

    # element families used by the analyses

    def raising_elements(self) -> List[TorElement]:
        """Elements whose joint kernel defines highest-weight vectors."""
        return [self.generators.e[i] for i in self.nodes]

    def closure_elements(self) -> List[TorElement]:
        """Elements whose action defines submodules."""
        return [self.generators.e[i] for i in self.nodes] + [self.generators.f[i] for i in self.nodes]

    def generator_set(self) -> List[TorElement]:
        """Generators used by the module-axiom check."""
        elements = self.closure_elements() + [self.generators.h[i] for i in self.nodes]
        if self.affine:
            elements.append(TorElement.d1_element(self.algebra))
        return elements

    def basis_vector(self, index: int) -> SparseVector:
        return SparseVector.basis(index)

    def top_index(self) -> int:
        return 0
