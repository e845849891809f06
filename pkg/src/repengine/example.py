"""A reducible indecomposable integrable module of the affine sl_2 algebra."""
from typing import Dict, List, Optional, Tuple

import structlog

from src.exactla.sparse import SparseMatrix, SparseVector
from src.liecore.algebra import ChevalleyAlgebra, build_algebra
from src.liecore.cartan import CartanData
from src.repengine.chevalley import ChevalleyModule
from src.repengine.module import TorWeight, Truncation
from src.repengine.operators import Operator
from src.toralg.elements import TorElement

logger = structlog.get_logger()

NAMES = ("v0", "v1", "v2", "w0")
W0 = 3

# Each rule maps a basis slot to (coefficient, target slot) pairs and the t-shift.
_X = {1: [(2, 0)], 2: [(1, 1)]}
_Y = {0: [(1, 1)], 1: [(2, 2)]}
_X_DOWN = {1: [(2, 0)], 2: [(1, 1), (1, W0)]}
_Y_UP = {0: [(1, 1), (1, W0)], 1: [(2, 2)]}


class IndecomposableModule(ChevalleyModule):
    """
    Free C[t, t^-1]-module on v0, v1, v2, w0 truncated to |r| <= S.

    h v_i = (2 - 2i) v_i, x v_i = (3 - i) v_(i-1), y v_i = (i + 1) v_(i+1);
    (x t^-1) v1 = 2 v0 t^-1, (x t^-1) v2 = (v1 + w0) t^-1, (y t) v0 = (v1 + w0) t,
    (y t) v1 = 2 v2 t; the algebra kills w0, c1 acts by 0 and d1 by r on t^r.
    """

    kind = "sl2-indecomposable"

    def __init__(self, algebra: ChevalleyAlgebra, window: int):
        self.window = window
        labels: List[str] = []
        weights: List[TorWeight] = []
        for r in range(-window, window + 1):
            for slot, name in enumerate(NAMES):
                labels.append(f"{name} t^{r}")
                h_value = 0 if slot == W0 else 2 - 2 * slot
                weights.append(TorWeight.make([h_value], 0, r))
        raising = {0: self._rule(_Y_UP, 1, len(labels)), 1: self._rule(_X, 0, len(labels))}
        lowering = {0: self._rule(_X_DOWN, -1, len(labels)), 1: self._rule(_Y, 0, len(labels))}
        grades = [(0, 0)] * len(labels)
        super().__init__(algebra, labels, weights, Truncation(loop_window=window), raising, lowering, True, grades)

    def index(self, slot: int, r: int) -> int:
        return (r + self.window) * len(NAMES) + slot

    def _rule(self, rule: Dict[int, List[Tuple[int, int]]], shift: int, size: int) -> Operator:
        columns: Dict[int, SparseVector] = {}
        lossy = set()
        for r in range(-self.window, self.window + 1):
            for slot, targets in rule.items():
                col = self.index(slot, r)
                if abs(r + shift) > self.window:
                    lossy.add(col)
                    continue
                columns[col] = SparseVector({self.index(t, r + shift): c for c, t in targets})
        return Operator(SparseMatrix.from_columns(size, size, columns), lossy)

    def descriptor(self) -> str:
        return f"{self.kind}(S={self.window})"

    def vector(self, slot: int, r: int = 0) -> SparseVector:
        return SparseVector.basis(self.index(slot, r))

    def generator_set(self) -> List[TorElement]:
        """x, y, h, x t^-1, y t, c1 and d1."""
        a = self.algebra
        theta = a.roots.highest
        return [
            TorElement.term(a, a.plus(theta)),
            TorElement.term(a, a.minus(theta)),
            TorElement.term(a, a.cartan(1)),
            TorElement.term(a, a.plus(theta), -1),
            TorElement.term(a, a.minus(theta), 1),
            TorElement.c1(a),
            TorElement.d1_element(a),
        ]


def example_indecomposable_sl2(window: int, algebra: Optional[ChevalleyAlgebra] = None) -> IndecomposableModule:
    """
    Build the indecomposable example on the window |r| <= S.

    Raises:
        ValueError: If S < 1
    """
    if window < 1:
        raise ValueError(f"window must be at least 1, got {window}")
    algebra = algebra or build_algebra(CartanData.parse("A1"))
    module = IndecomposableModule(algebra, window)
    logger.info("module_built", kind=module.descriptor(), dim=module.dim)
    return module
