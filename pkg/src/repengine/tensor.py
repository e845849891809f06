"""Tensor products of truncated modules, evaluation tensors V_tor and the tensor criterion."""
import itertools
from typing import Dict, List, Optional, Sequence, Tuple

import structlog
from pydantic import BaseModel, Field

from src.errors import DimensionMismatchError, InvalidPointsError, NonDominantWeightError, ZeroLevelError
from src.exactla.scalars import ExactScalar, ONE, format_scalar, scalar_power, to_scalar
from src.exactla.sparse import SparseMatrix, SparseVector
from src.liecore.algebra import ChevalleyAlgebra
from src.liecore.weights import FinWeight, dual_dominant_weight
from src.repengine.module import TorWeight, Truncation, WeightModule
from src.repengine.operators import Operator
from src.toralg.elements import TorElement

logger = structlog.get_logger()

BasisTuple = Tuple[int, ...]


class TensorModule(WeightModule):
    """
    V_1 ⊗ ... ⊗ V_k restricted to basis tuples whose summed grades fit the window.

    Without points x t1^r1 t2^r2 acts by the coproduct. With points a_j it is the
    evaluation tensor: x t1^r1 t2^m acts by sum_j a_j^m (x t1^r1 on the j-th factor),
    c1 t2^k by sum_j a_j^k c1 and c2 by zero.
    """

    def __init__(
        self,
        factors: Sequence[WeightModule],
        points: Optional[Sequence[object]] = None,
        depth: Optional[int] = None,
        height: Optional[int] = None,
    ):
        if not factors:
            raise ValueError("a tensor product needs at least one factor")
        algebra = factors[0].algebra
        if any(f.algebra != algebra for f in factors):
            raise DimensionMismatchError("all tensor factors must share one algebra")
        self.factors = list(factors)
        self.points: Optional[Tuple[ExactScalar, ...]] = None
        if points is not None:
            if len(points) != len(factors):
                raise InvalidPointsError(f"{len(points)} points for {len(factors)} factors")
            self.points = tuple(to_scalar(a) for a in points)
            if any(a == 0 for a in self.points):
                raise InvalidPointsError("evaluation points must be non-zero")
        self.depth = depth
        self.height = height

        tuples: List[BasisTuple] = []
        for combo in itertools.product(*(range(f.dim) for f in factors)):
            if self._fits(combo):
                tuples.append(combo)
        self.tuples = tuples
        self.index: Dict[BasisTuple, int] = {t: i for i, t in enumerate(tuples)}
        labels = [" ⊗ ".join(f.labels[b] for f, b in zip(factors, t)) for t in tuples]
        weights = [self._sum_weights(t) for t in tuples]
        affine = all(f.affine for f in factors)
        super().__init__(algebra, labels, weights, Truncation(depth=depth, height=height), affine)
        self._terms: Dict[Tuple[int, int, int], Operator] = {}
        self._lifts: Dict[Tuple[int, int, int, int], Operator] = {}
        self.kind = "V_tor" if points is not None else "tensor"
        logger.info("module_built", kind=self.descriptor(), dim=self.dim)

    def _fits(self, combo: BasisTuple) -> bool:
        grades = [f.grade(b) for f, b in zip(self.factors, combo)]
        if self.depth is not None and sum(g[0] for g in grades) > self.depth:
            return False
        if self.height is not None and sum(g[1] for g in grades) > self.height:
            return False
        return True

    def _sum_weights(self, combo: BasisTuple) -> TorWeight:
        total = self.factors[0].weights[combo[0]]
        for f, b in zip(self.factors[1:], combo[1:]):
            total = total + f.weights[b]
        return total

    def descriptor(self) -> str:
        inner = ", ".join(f.descriptor() for f in self.factors)
        if self.points is None:
            return f"tensor({inner})"
        points = ",".join(format_scalar(a) for a in self.points)
        return f"V_tor({inner}; a=({points}))"

    def grade(self, index: int) -> Tuple[int, int]:
        grades = [f.grade(b) for f, b in zip(self.factors, self.tuples[index])]
        return sum(g[0] for g in grades), sum(g[1] for g in grades)

    def top_index(self) -> int:
        return self.index[tuple(f.top_index() for f in self.factors)]

    def lift(self, position: int, operator: Operator) -> Operator:
        """Act with an operator of one factor, identity on the others."""
        columns: Dict[int, SparseVector] = {}
        lossy = set()
        for col, combo in enumerate(self.tuples):
            if combo[position] in operator.lossy:
                lossy.add(col)
            entries = {}
            for b, c in operator.column(combo[position]).items():
                target = combo[:position] + (b,) + combo[position + 1:]
                row = self.index.get(target)
                if row is None:
                    lossy.add(col)
                else:
                    entries[row] = c
            if entries:
                columns[col] = SparseVector(entries)
        return Operator(SparseMatrix.from_columns(self.dim, self.dim, columns), lossy)

    def factor_term(self, position: int, index: int, r1: int, r2: int = 0) -> Operator:
        key = (position, index, r1, r2)
        cached = self._lifts.get(key)
        if cached is None:
            cached = self.lift(position, self.factors[position].term_operator(index, r1, r2))
            self._lifts[key] = cached
        return cached

    def _weighted_sum(self, make, power: int) -> Operator:
        total = Operator.zero(self.dim)
        for j in range(len(self.factors)):
            scale = ONE if self.points is None else scalar_power(self.points[j], power)
            total = total + make(j).scale(scale)
        return total

    def term_operator(self, index: int, r1: int, r2: int) -> Operator:
        key = (index, r1, r2)
        cached = self._terms.get(key)
        if cached is not None:
            return cached
        if self.points is None:
            operator = self._weighted_sum(lambda j: self.factor_term(j, index, r1, r2), 0)
        else:
            operator = self._weighted_sum(lambda j: self.factor_term(j, index, r1, 0), r2)
        self._terms[key] = operator
        return operator

    def central_operator(self, k: int) -> Operator:
        if self.points is None:
            return self._weighted_sum(lambda j: self.lift(j, self.factors[j].central_operator(k)), 0)
        return self._weighted_sum(lambda j: self.lift(j, self.factors[j].central_operator(0)), k)

    def d1_operator(self) -> Operator:
        return Operator.diagonal([w.d1 for w in self.weights])

    def c2_operator(self) -> Operator:
        return Operator.zero(self.dim)

    def closure_elements(self) -> List[TorElement]:
        """With points, also x t2^m for 1 <= m < k."""
        elements = super().closure_elements()
        if self.points is None:
            return elements
        cartan = [self.generators.h[i] for i in self.nodes]
        return elements + [x.shift_t2(m) for m in range(1, len(self.factors)) for x in elements + cartan]


def tensor_product(factors: Sequence[WeightModule], depth: Optional[int] = None, height: Optional[int] = None) -> TensorModule:
    """Plain tensor product with the coproduct action."""
    return TensorModule(factors, None, depth, height)


def evaluation_tensor(
    modules: Sequence[WeightModule],
    points: Sequence[object],
    depth: Optional[int] = None,
    height: Optional[int] = None,
) -> TensorModule:
    """
    V_tor(lambda, a) from truncated affine irreducibles and non-zero points.

    Points may repeat; the reducible case is constructible.

    Raises:
        InvalidPointsError: If a point is zero or the counts differ
    """
    return TensorModule(modules, points, depth, height)


class TensorCriterion(BaseModel):
    """Outcome of the sufficient irreducibility condition for V_aff(lambda) ⊗ V_aff(mu, a)."""

    met: bool
    sum_condition: bool = Field(..., description="sum_i a_i mu_i != 0")
    witness_root: Optional[Tuple[int, ...]] = Field(None, description="positive root satisfying one inequality")
    clause: Optional[str] = Field(None, description="'first' or 'second' inequality")
    detail: str = ""


def tensor_irreducibility_condition(
    algebra: ChevalleyAlgebra,
    coords: Sequence[int],
    weights: Sequence[FinWeight],
    points: Sequence[object],
) -> TensorCriterion:
    """
    Evaluate the sufficient condition for irreducibility of V_aff(lambda) ⊗ V_aff(mu, a).

    The condition holds when sum a_i mu_i is non-zero and some positive root alpha has
    (k+1) lambda(c1) < (mu + lambda)(h_alpha) or k lambda(c1) < (mu* - lambda)(h_alpha),
    with mu = sum mu_i. When it fails nothing is concluded.

    Raises:
        InvalidPointsError: For zero or repeated points
        NonDominantWeightError: For non-dominant inputs
        ZeroLevelError: For lambda of level zero
    """
    scalars = [to_scalar(a) for a in points]
    if len(scalars) != len(weights) or not scalars:
        raise InvalidPointsError("one point is required per finite weight")
    if any(a == 0 for a in scalars) or len(set(scalars)) != len(scalars):
        raise InvalidPointsError("points must be distinct and non-zero")
    if len(coords) != algebra.rank + 1 or any(c < 0 for c in coords):
        raise NonDominantWeightError(f"{tuple(coords)} is not a dominant affine weight")
    if any(not w.is_dominant or w.rank != algebra.rank for w in weights):
        raise NonDominantWeightError("finite weights must be dominant")
    level = sum(m * c for m, c in zip(algebra.roots.affine_marks(), coords))
    if level <= 0:
        raise ZeroLevelError(f"{tuple(coords)} has level zero")

    k = len(weights)
    weighted = [sum((a * w.coords[i] for a, w in zip(scalars, weights)), to_scalar(0)) for i in range(algebra.rank)]
    sum_condition = any(v != 0 for v in weighted)
    mu = FinWeight(coords=tuple(sum(w.coords[i] for w in weights) for i in range(algebra.rank)))
    mu_star = dual_dominant_weight(algebra, mu)
    lam = coords[1:]

    def value(weight: Sequence[int], root) -> int:
        return sum(weight[i] * c for i, c in enumerate(root))

    witness, clause = None, None
    for root in algebra.roots.positive:
        if (k + 1) * level < value(mu.coords, root) + value(lam, root):
            witness, clause = root, "first"
            break
        if k * level < value(mu_star.coords, root) - value(lam, root):
            witness, clause = root, "second"
            break
    met = sum_condition and witness is not None
    detail = "criterion-met" if met else ("sum condition fails" if not sum_condition else "no root satisfies either inequality")
    logger.debug("tensor_criterion", met=met, sum_condition=sum_condition, clause=clause)
    return TensorCriterion(met=met, sum_condition=sum_condition, witness_root=witness, clause=clause, detail=detail)
