"""Fusion products: the t-degree filtration of a cyclic tensor product and its associated graded module."""
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple, Union

import structlog

from src.config.settings import compute_defaults
from src.errors import InvalidPointsError, NonCyclicFactorError, NonDominantWeightError, WindowLossError
from src.exactla.linalg import WeightedSpan, independent_subset, solve_in_span
from src.exactla.scalars import ExactScalar, format_scalar, scalar_power, to_scalar
from src.exactla.sparse import SparseMatrix, SparseVector
from src.liecore.algebra import ChevalleyAlgebra
from src.repengine.analysis import closure_dimension
from src.repengine.highest_weight import fundamental_coords, irreducible_aff_truncated
from src.repengine.module import TorWeight, WeightModule
from src.repengine.operators import Operator
from src.repengine.tensor import TensorModule
from src.toralg.elements import TorElement
from src.weylfusion.models import GradedEntry, GradedTable, RelationReport

logger = structlog.get_logger()


class FilteredModule:
    """
    V_1(a_1) ⊗ ... ⊗ V_k(a_k) with x t^s acting by sum_j a_j^s x_(j), filtered by
    V_r = sum_{s <= r} U(a[t])_s (v_1 ⊗ ... ⊗ v_k) for r = 0..R.

    Here t is t2: a = g_aff when every factor is affine, a = g_fin otherwise.
    """

    def __init__(self, base: TensorModule, points: Sequence[ExactScalar], degree_bound: int):
        self.base = base
        self.algebra = base.algebra
        self.points = tuple(points)
        self.degree_bound = degree_bound
        self.generator = SparseVector.basis(base.top_index())
        self.elements: List[TorElement] = [e for e in base.generator_set() if not e.d1]
        self.loss_events = 0
        self._ops: Dict[Tuple[int, int], Operator] = {}
        self.levels: List[Dict[TorWeight, List[SparseVector]]] = []
        self._build()
        self._graded: Optional["GradedFusionModule"] = None

    def ungraded(self, position: int, s: int) -> Operator:
        """sum_j a_j^s x_(j) for the element at the given position of self.elements."""
        key = (position, s)
        cached = self._ops.get(key)
        if cached is None:
            element = self.elements[position]
            cached = Operator.zero(self.base.dim)
            for j, factor in enumerate(self.base.factors):
                lifted = self.base.lift(j, factor.operator(element))
                cached = cached + lifted.scale(scalar_power(self.points[j], s))
            self._ops[key] = cached
        return cached

    def _weight(self, vector: SparseVector) -> TorWeight:
        return self.base.weights[vector.leading_index()]

    def _absorb(self, span: WeightedSpan, candidates: List[SparseVector]) -> List[SparseVector]:
        grouped: Dict[TorWeight, List[SparseVector]] = {}
        for v in candidates:
            if not v.is_zero():
                grouped.setdefault(self._weight(v), []).append(v)
        new = []
        for weight in sorted(grouped, key=lambda w: w.sort_key()):
            new.extend(span.extend(weight, grouped[weight]))
        return new

    def _apply_all(self, vectors: List[SparseVector], s: int) -> List[SparseVector]:
        out = []
        for v in vectors:
            for position in range(len(self.elements)):
                image, hit = self.ungraded(position, s).apply_tracked(v)
                if hit:
                    self.loss_events += 1
                out.append(image)
        return out

    def _build(self) -> None:
        span = WeightedSpan()
        recorded: List[List[SparseVector]] = []
        for r in range(self.degree_bound + 1):
            candidates = [self.generator] if r == 0 else []
            for q in range(r):
                candidates.extend(self._apply_all(recorded[q], r - q))
            level = self._absorb(span, candidates)
            frontier = list(level)
            while frontier:
                frontier = self._absorb(span, self._apply_all(frontier, 0))
                level.extend(frontier)
            recorded.append(level)

        cumulative: Dict[TorWeight, List[SparseVector]] = {}
        for level in recorded:
            by_weight: Dict[TorWeight, List[SparseVector]] = {}
            for v in level:
                by_weight.setdefault(self._weight(v), []).append(v)
            picked_level: Dict[TorWeight, List[SparseVector]] = {}
            for weight, vectors in by_weight.items():
                known = cumulative.setdefault(weight, [])
                chosen = independent_subset(known + vectors, self.base.dim)
                picked = [vectors[p - len(known)] for p in chosen if p >= len(known)]
                if picked:
                    picked_level[weight] = picked
                    known.extend(picked)
            self.levels.append(picked_level)
        logger.info(
            "fusion_filtered",
            module=self.base.descriptor(),
            degrees=self.graded_dims(),
            loss_events=self.loss_events,
        )

    def graded_dims(self) -> List[int]:
        dims = [sum(len(v) for v in level.values()) for level in self.levels]
        while len(dims) > 1 and dims[-1] == 0:
            dims.pop()
        return dims

    @property
    def total_dim(self) -> int:
        return sum(self.graded_dims())

    def sum_rule_holds(self) -> bool:
        """sum_r dim gr_r equals the dimension of the tensor window."""
        return self.total_dim == self.base.dim

    def table(self) -> GradedTable:
        entries = [
            GradedEntry(degree=r, weight=w.as_list(), dim=len(vectors))
            for r, level in enumerate(self.levels)
            for w, vectors in sorted(level.items(), key=lambda item: item[0].sort_key())
        ]
        return GradedTable(
            module=self.base.descriptor(), degrees=self.graded_dims(), entries=entries, loss_events=self.loss_events
        )

    def graded(self) -> "GradedFusionModule":
        if self._graded is None:
            self._graded = GradedFusionModule(self)
        return self._graded


class GradedFusionModule(WeightModule):
    """
    The fusion product gr V = V_0 ⊕ V_1/V_0 ⊕ ... with the induced action:
    x t1^r1 t2^s maps gr_r to gr_(r+s). Negative t2-powers do not act.
    """

    kind = "fusion"

    def __init__(self, filtered: FilteredModule):
        self.filtered = filtered
        self.vectors: List[SparseVector] = []
        self.degree_of: List[int] = []
        self._position: Dict[Tuple[int, TorWeight], List[int]] = {}
        labels, weights = [], []
        for r, level in enumerate(filtered.levels):
            for weight in sorted(level, key=lambda w: w.sort_key()):
                for k, vector in enumerate(level[weight]):
                    self._position.setdefault((r, weight), []).append(len(self.vectors))
                    self.vectors.append(vector)
                    self.degree_of.append(r)
                    labels.append(f"gr{r}{weight.render()}#{k}")
                    weights.append(weight)
        base = filtered.base
        super().__init__(base.algebra, labels, weights, base.truncation, base.affine)
        self._terms: Dict[Tuple, Operator] = {}

    def descriptor(self) -> str:
        points = ",".join(format_scalar(a) for a in self.filtered.points)
        return f"{self.kind}({', '.join(f.descriptor() for f in self.filtered.base.factors)}; a=({points}))"

    def grade(self, index: int) -> Tuple[int, int]:
        return self.filtered.base.grade(self.vectors[index].leading_index())

    def top_index(self) -> int:
        return 0

    def _below(self, degree: int, weight: TorWeight) -> List[int]:
        """Basis positions of V_degree at a weight, in level order."""
        out = []
        for r in range(degree + 1):
            out.extend(self._position.get((r, weight), []))
        return out

    def _project(self, ungraded: Operator, s: int) -> Operator:
        """Induced map gr_r -> gr_(r+s) of a filtered operator of degree s."""
        columns: Dict[int, SparseVector] = {}
        lossy = set()
        for b, vector in enumerate(self.vectors):
            image, hit = ungraded.apply_tracked(vector)
            if hit:
                lossy.add(b)
            if image.is_zero():
                continue
            target = self.degree_of[b] + s
            if target > self.filtered.degree_bound:
                lossy.add(b)
                continue
            weight = self.filtered.base.weights[image.leading_index()]
            positions = self._below(target, weight)
            solution = solve_in_span([self.vectors[p] for p in positions], [image], self.filtered.base.dim)[0]
            if solution is None:
                lossy.add(b)
                continue
            entries = {}
            for local, c in solution.items():
                p = positions[local]
                if self.degree_of[p] == target:
                    entries[p] = c
            if entries:
                columns[b] = SparseVector(entries)
        return Operator(SparseMatrix.from_columns(self.dim, self.dim, columns), lossy)

    def _weighted(self, make, s: int) -> Operator:
        base = self.filtered.base
        total = Operator.zero(base.dim)
        for j in range(len(base.factors)):
            total = total + make(j).scale(scalar_power(self.filtered.points[j], s))
        return total

    def term_operator(self, index: int, r1: int, r2: int) -> Operator:
        if r2 < 0:
            raise WindowLossError(f"t2^{r2} does not act on {self.descriptor()}")
        key = ("term", index, r1, r2)
        cached = self._terms.get(key)
        if cached is None:
            base = self.filtered.base
            cached = self._project(self._weighted(lambda j: base.factor_term(j, index, r1, 0), r2), r2)
            self._terms[key] = cached
        return cached

    def central_operator(self, k: int) -> Operator:
        if k < 0:
            raise WindowLossError(f"c1 t2^{k} does not act on {self.descriptor()}")
        key = ("central", k)
        cached = self._terms.get(key)
        if cached is None:
            base = self.filtered.base
            cached = self._project(
                self._weighted(lambda j: base.lift(j, base.factors[j].central_operator(0)), k), k
            )
            self._terms[key] = cached
        return cached

    def d1_operator(self) -> Operator:
        return Operator.diagonal([w.d1 for w in self.weights])


class ShiftedModule(WeightModule):
    """Pullback of a graded module along x t^r -> x (t - a)^r."""

    def __init__(self, inner: WeightModule, shift: object):
        super().__init__(inner.algebra, list(inner.labels), list(inner.weights), inner.truncation, inner.affine)
        self.inner = inner
        self.shift = to_scalar(shift)
        self.kind = f"{inner.kind}|t->t-{format_scalar(self.shift)}"
        self._terms: Dict[Tuple, Operator] = {}

    def descriptor(self) -> str:
        return f"{self.inner.descriptor()}|t->t-{format_scalar(self.shift)}"

    def grade(self, index: int) -> Tuple[int, int]:
        return self.inner.grade(index)

    def top_index(self) -> int:
        return self.inner.top_index()

    def _expand(self, r: int, make) -> Operator:
        if r < 0:
            raise WindowLossError(f"t2^{r} does not act on {self.descriptor()}")
        total = Operator.zero(self.dim)
        for j in range(r + 1):
            coefficient = comb(r, j) * scalar_power(-self.shift, r - j)
            if coefficient:
                total = total + make(j).scale(coefficient)
        return total

    def term_operator(self, index: int, r1: int, r2: int) -> Operator:
        key = ("term", index, r1, r2)
        if key not in self._terms:
            self._terms[key] = self._expand(r2, lambda j: self.inner.term_operator(index, r1, j))
        return self._terms[key]

    def central_operator(self, k: int) -> Operator:
        key = ("central", k)
        if key not in self._terms:
            self._terms[key] = self._expand(k, self.inner.central_operator)
        return self._terms[key]

    def d1_operator(self) -> Operator:
        return self.inner.d1_operator()


def pullback_shift(module: Union[FilteredModule, WeightModule], a: object) -> ShiftedModule:
    """
    W(lambda, a): precompose the action with t -> t - a, so that
    x t^r acts by sum_j C(r, j) (-a)^(r-j) x t^j.
    """
    inner = module.graded() if isinstance(module, FilteredModule) else module
    return ShiftedModule(inner, a)


def _check_points(points: Sequence[object], count: int) -> List[ExactScalar]:
    scalars = [to_scalar(a) for a in points]
    if len(scalars) != count:
        raise InvalidPointsError(f"{len(scalars)} points for {count} factors")
    if len(set(scalars)) != len(scalars):
        raise InvalidPointsError("fusion points must be pairwise distinct")
    return scalars


def fusion_product(
    factors: Sequence[WeightModule],
    points: Sequence[object],
    degree_bound: Optional[int] = None,
    depth: Optional[int] = None,
    height: Optional[int] = None,
) -> FilteredModule:
    """
    Filter V_1(a_1) ⊗ ... ⊗ V_k(a_k) by t-degree.

    Each factor must be generated by its top vector.

    Raises:
        InvalidPointsError: If points repeat or their number differs from the factors
        NonCyclicFactorError: If a factor is not cyclic on its top vector
    """
    scalars = _check_points(points, len(factors))
    for factor in factors:
        if closure_dimension(factor, [SparseVector.basis(factor.top_index())]) != factor.dim:
            raise NonCyclicFactorError(f"{factor.descriptor()} is not generated by its top vector")
    bound = compute_defaults.fusion_degree if degree_bound is None else degree_bound
    base = TensorModule(factors, None, depth, height)
    return FilteredModule(base, scalars, bound)


def record_on_top(
    report: RelationReport, module: WeightModule, name: str, operators: List[Operator], expected: SparseVector
) -> None:
    """Apply a product of operators (rightmost first) to the top vector and compare with the expected image."""
    image, lossy = SparseVector.basis(module.top_index()), False
    for op in reversed(operators):
        image, hit = op.apply_tracked(image)
        lossy = lossy or hit
    report.checked += 1
    if image != expected:
        if lossy:
            report.inconclusive += 1
        else:
            report.violations.append(name)


def fusion_relations(module: WeightModule, top: Sequence[int], max_degree: int) -> RelationReport:
    """
    Check on the top vector: e_i t2^s v = 0 for s >= 0, h_i t2^s v = 0 for s >= 1,
    h_i v = lambda(h_i) v and f_i^(lambda(h_i)+1) v = 0, for every node i.
    """
    report = RelationReport()
    v = SparseVector.basis(module.top_index())
    gens = module.generators

    def record(name: str, operators: List[Operator], expected: SparseVector) -> None:
        record_on_top(report, module, name, operators, expected)

    for i in module.nodes:
        value = top[i] if module.affine else top[i - 1]
        record(f"h{i} v = {value} v", [module.operator(gens.h[i])], v.scale(value))
        record(f"f{i}^{value + 1} v = 0", [module.operator(gens.f[i])] * (value + 1), SparseVector())
        for s in range(max_degree + 1):
            record(f"e{i} t2^{s} v = 0", [module.operator(gens.e[i].shift_t2(s))], SparseVector())
            if s:
                record(f"h{i} t2^{s} v = 0", [module.operator(gens.h[i].shift_t2(s))], SparseVector())
    return report


def fusion_W(
    algebra: ChevalleyAlgebra,
    coords: Sequence[int],
    depth: int,
    height: Optional[int] = None,
    points: Optional[Sequence[object]] = None,
    degree_bound: Optional[int] = None,
) -> Tuple[FilteredModule, RelationReport]:
    """
    W(lambda) = V_aff(omega_0)(c_01) * ... * V_aff(omega_n)(c_n lambda_n), one level-one
    factor per unit of lambda(h_i), truncated to the given window.

    Returns:
        The filtered module and the check of its defining relations on the fused generator

    Raises:
        NonDominantWeightError: If lambda is not dominant or is zero
        InvalidPointsError: If the points repeat or have the wrong count
    """
    if len(coords) != algebra.rank + 1 or any(c < 0 for c in coords):
        raise NonDominantWeightError(f"{tuple(coords)} is not a dominant affine weight")
    factors = []
    for node, multiplicity in enumerate(coords):
        factors.extend(
            irreducible_aff_truncated(algebra, fundamental_coords(algebra, node), depth, height)
            for _ in range(multiplicity)
        )
    if not factors:
        raise NonDominantWeightError("W(0) has no fusion factors")
    chosen = list(points) if points is not None else list(range(len(factors)))
    filtered = fusion_product(factors, chosen, degree_bound, depth, height)
    graded = filtered.graded()
    relations = fusion_relations(graded, coords, filtered.degree_bound)
    logger.info(
        "fusion_relations_checked",
        module=graded.descriptor(),
        checked=relations.checked,
        violations=len(relations.violations),
        inconclusive=relations.inconclusive,
    )
    return filtered, relations
