"""Loop modules V_aff(lambda, a, b) over tensor products of finite irreducibles."""
from typing import Dict, List, Optional, Tuple

import structlog
from pydantic import BaseModel, Field, field_validator

from src.errors import InvalidPointsError, NonDominantWeightError, WindowLossError
from src.exactla.scalars import ExactScalar, format_scalar, scalar_power, to_scalar
from src.exactla.sparse import SparseMatrix, SparseVector
from src.liecore.algebra import ChevalleyAlgebra
from src.liecore.weights import FinWeight
from src.repengine.highest_weight import irreducible_fin
from src.repengine.module import TorWeight, Truncation, WeightModule
from src.repengine.operators import Operator
from src.repengine.tensor import tensor_product

logger = structlog.get_logger()


class LoopModuleSpec(BaseModel):
    """Data of V_aff(lambda_1..lambda_k, a_1..a_k, b) and its Laurent window."""

    weights: List[Tuple[int, ...]] = Field(..., description="dominant finite weights lambda_i")
    points: List[str] = Field(..., description="evaluation points a_i as exact rationals")
    shift: int = Field(0, description="shift b in d1 = s + b")
    window: int = Field(3, ge=0, description="Laurent window |s| <= S")

    @field_validator("points", mode="before")
    @classmethod
    def normalize_points(cls, v):
        """Store points in canonical p/q form."""
        return [format_scalar(to_scalar(a)) for a in v]

    def scalars(self) -> List[ExactScalar]:
        return [to_scalar(a) for a in self.points]

    def check(self, algebra: ChevalleyAlgebra) -> None:
        """
        Raises:
            InvalidPointsError: For zero or repeated points, or a count mismatch
            NonDominantWeightError: For non-dominant weights of the wrong rank
        """
        scalars = self.scalars()
        if len(scalars) != len(self.weights) or not scalars:
            raise InvalidPointsError("one point is required per weight")
        if any(a == 0 for a in scalars):
            raise InvalidPointsError("evaluation points must be non-zero")
        if len(set(scalars)) != len(scalars):
            raise InvalidPointsError("evaluation points must be distinct")
        for w in self.weights:
            if len(w) != algebra.rank or any(c < 0 for c in w):
                raise NonDominantWeightError(f"{w} is not a dominant weight of rank {algebra.rank}")


class LoopModule(WeightModule):
    """
    V_fin(lambda_1) ⊗ ... ⊗ V_fin(lambda_k) ⊗ C[t, t^-1] truncated to |s| <= S.

    x t1^r acts by sum_i a_i^r x_(i) and multiplies by t^r, c1 acts by zero and
    d1 by s + b. Images with |s + r| > S are window loss.
    """

    kind = "V_aff(loop)"

    def __init__(self, algebra: ChevalleyAlgebra, spec: LoopModuleSpec):
        self.spec = spec
        self.base = tensor_product([irreducible_fin(algebra, FinWeight(coords=tuple(w))) for w in spec.weights])
        self.window = spec.window
        self.points = spec.scalars()
        labels, weights = [], []
        for s in self.exponents():
            for t in range(self.base.dim):
                labels.append(f"{self.base.labels[t]} t^{s}")
                base_weight = self.base.weights[t]
                weights.append(TorWeight(base_weight.fin, to_scalar(0), to_scalar(s + spec.shift)))
        super().__init__(algebra, labels, weights, Truncation(loop_window=spec.window), affine=True)
        self._terms: Dict[Tuple[int, int], Operator] = {}

    def exponents(self) -> List[int]:
        return list(range(-self.window, self.window + 1))

    def position(self, base_index: int, s: int) -> int:
        return (s + self.window) * self.base.dim + base_index

    def split(self, index: int) -> Tuple[int, int]:
        """(base index, Laurent exponent) of a basis vector."""
        block, base_index = divmod(index, self.base.dim)
        return base_index, block - self.window

    def descriptor(self) -> str:
        weights = ";".join(",".join(str(c) for c in w) for w in self.spec.weights)
        return f"V_aff(loop; lambda=({weights}); a=({','.join(self.spec.points)}); b={self.spec.shift})"

    def top_index(self) -> int:
        return self.position(self.base.top_index(), 0)

    def term_operator(self, index: int, r1: int, r2: int) -> Operator:
        if r2 != 0:
            raise WindowLossError(f"t2 does not act on {self.descriptor()}")
        cached = self._terms.get((index, r1))
        if cached is not None:
            return cached
        base_op = Operator.zero(self.base.dim)
        for j, a in enumerate(self.points):
            base_op = base_op + self.base.factor_term(j, index, 0).scale(scalar_power(a, r1))
        columns: Dict[int, SparseVector] = {}
        lossy = set()
        for s in self.exponents():
            for t in range(self.base.dim):
                col = self.position(t, s)
                image = base_op.column(t)
                if image.is_zero():
                    continue
                if abs(s + r1) > self.window:
                    lossy.add(col)
                    continue
                columns[col] = SparseVector({self.position(b, s + r1): c for b, c in image.items()})
        operator = Operator(SparseMatrix.from_columns(self.dim, self.dim, columns), lossy)
        self._terms[(index, r1)] = operator
        return operator

    def central_operator(self, k: int) -> Operator:
        if k != 0:
            raise WindowLossError(f"c1 t2^{k} does not act on {self.descriptor()}")
        return Operator.zero(self.dim)

    def d1_operator(self) -> Operator:
        return Operator.diagonal([w.d1 for w in self.weights])


def loop_module(algebra: ChevalleyAlgebra, spec: LoopModuleSpec) -> LoopModule:
    """
    Build the truncated loop module described by its parameters.

    Raises:
        InvalidPointsError: For zero or repeated points
        NonDominantWeightError: For non-dominant weights
    """
    spec.check(algebra)
    module = LoopModule(algebra, spec)
    logger.info("module_built", kind=module.descriptor(), dim=module.dim, window=spec.window)
    return module


class LoopVerdict(BaseModel):
    """Irreducibility of a loop module and, when reducible, its period and generators."""

    irreducible: bool
    period: Optional[int] = Field(None, description="smallest r for which the criterion fails")
    generators: List[str] = Field(default_factory=list, description="v_lambda ⊗ t^l, 0 <= l < r")
    reason: str = ""


def loop_irreducibility(algebra: ChevalleyAlgebra, spec: LoopModuleSpec) -> LoopVerdict:
    """
    Decide irreducibility of V_aff(lambda, a, b) over Q.

    The module is irreducible iff for every r >= 1 some m with m != 0 mod r has
    f(m) = sum_i a_i^m lambda_i != 0; for r = 1 this reads as f not identically zero.
    Over Q two distinct points have a root-of-unity ratio only when a_j = -a_i, so f
    vanishes on all m != 0 mod r only for r <= 2: r = 1 when every lambda_i is zero,
    r = 2 when the non-zero lambda_i cancel in pairs a_j = -a_i with lambda_j = lambda_i.

    Raises:
        InvalidPointsError: For zero or repeated points
        NonDominantWeightError: For non-dominant weights
    """
    spec.check(algebra)
    points = spec.scalars()
    nonzero = [i for i, w in enumerate(spec.weights) if any(w)]

    def generators(period: int) -> List[str]:
        top = " ⊗ ".join("v" for _ in spec.weights)
        return [f"{top} t^{l}" for l in range(period)]

    if not nonzero:
        verdict = LoopVerdict(irreducible=False, period=1, generators=generators(1), reason="all weights vanish")
    else:
        paired = all(
            any(points[j] == -points[i] and tuple(spec.weights[j]) == tuple(spec.weights[i]) for j in nonzero)
            for i in nonzero
        )
        if paired:
            verdict = LoopVerdict(
                irreducible=False, period=2, generators=generators(2), reason="f(m) vanishes for every odd m"
            )
        else:
            verdict = LoopVerdict(irreducible=True, reason="no period r <= 2 annihilates f off the multiples of r")
    logger.info("loop_verdict", irreducible=verdict.irreducible, period=verdict.period)
    return verdict


def period_generators(module: LoopModule, period: int) -> List[SparseVector]:
    """The vectors v_lambda ⊗ t^l, 0 <= l < r, inside the window."""
    top = module.base.top_index()
    return [SparseVector.basis(module.position(top, l)) for l in range(period) if l <= module.window]
