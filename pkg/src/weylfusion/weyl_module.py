"""Truncated Weyl modules W_tor(pi) as finite quotients of the universal module."""
from typing import Dict, FrozenSet, List, Literal, Optional, Sequence, Tuple

import structlog

from src.config.settings import compute_defaults
from src.errors import ResourceBoundExceededError
from src.exactla.linalg import WeightedSpan, rref
from src.exactla.scalars import ExactScalar
from src.exactla.sparse import SparseMatrix, SparseVector
from src.repengine.module import TorWeight, Truncation, WeightModule
from src.repengine.operators import Operator
from src.toralg.roots import RootClass
from src.weylfusion.pbw import Combination, KVector, Letter, Monomial, PBWEngine, cyclic_vector
from src.weylfusion.polytuple import PolyTuple

logger = structlog.get_logger()

Variant = Literal["current", "full"]


class _Window:
    """Depth, height and t2 bounds shared by the saturation and the module."""

    def __init__(self, depth: int, height: int, t2_degree: int, variant: Variant, budget: int):
        self.depth = depth
        self.height = height
        self.t2_degree = t2_degree
        self.variant = variant
        self.budget = budget

    def contains(self, eta: KVector) -> bool:
        return min(eta) >= 0 and eta[0] <= self.depth and sum(eta) <= self.height

    def t2_range(self, bound: int) -> range:
        return range(0, bound + 1) if self.variant == "current" else range(-bound, bound + 1)


class _QuotientSpace:
    """
    One weight space of the quotient: window monomials modulo the relations found there.

    Columns are ordered out-of-window first and then window monomials from the most to
    the least complicated, so the reduced relations eliminate carriers outside the
    window first and the surviving representatives are the simplest monomials.
    """

    def __init__(self, window_monomials: List[Monomial], relations: List[Combination], short_relations: List[Combination], simplicity):
        in_window = set(window_monomials)
        outside = sorted({m for rel in relations for m in rel if m not in in_window}, key=simplicity)
        ordered_window = sorted(window_monomials, key=simplicity, reverse=True)
        self.columns: List[Monomial] = outside + ordered_window
        self.position: Dict[Monomial, int] = {m: p for p, m in enumerate(self.columns)}
        self.outside_count = len(outside)
        self.rows, self.pivots = self._reduce(relations)
        pivot_set = set(self.pivots)
        self.representatives: List[Monomial] = [
            m for m in reversed(ordered_window) if self.position[m] not in pivot_set
        ]
        self.rep_position: Dict[int, int] = {self.position[m]: p for p, m in enumerate(self.representatives)}
        _, short_pivots = self._reduce([r for r in short_relations if all(m in self.position for m in r)])
        window_pivots = sum(1 for p in self.pivots if p >= self.outside_count)
        short_window = sum(1 for p in short_pivots if p >= self.outside_count)
        self.exact = window_pivots == short_window

    def _reduce(self, relations: List[Combination]) -> Tuple[List[SparseVector], Tuple[int, ...]]:
        vectors = [SparseVector({self.position[m]: c for m, c in rel.items()}) for rel in relations]
        vectors = [v for v in vectors if not v.is_zero()]
        if not vectors:
            return [], ()
        reduced, pivots = rref(SparseMatrix.from_rows(vectors, len(self.columns)))
        return [reduced.row(r) for r in range(len(pivots))], pivots

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def normal_form(self, combination: Combination) -> Tuple[Dict[int, ExactScalar], bool]:
        """Coordinates on the representatives and whether a carrier outside the window survived."""
        stray = False
        entries = {}
        for m, c in combination.items():
            p = self.position.get(m)
            if p is None:
                stray = True
            else:
                entries[p] = c
        vector = SparseVector(entries)
        for row, pivot in zip(self.rows, self.pivots):
            c = vector[pivot]
            if c:
                vector = vector - row.scale(c)
        out: Dict[int, ExactScalar] = {}
        for p, c in vector.items():
            rep = self.rep_position.get(p)
            if rep is None:
                stray = True
            else:
                out[rep] = c
        return out, stray


class _Saturation:
    """Relations of W_tor(pi) generated inside an extended window."""

    def __init__(self, engine: PBWEngine, pi: PolyTuple, window: _Window, max_basis: int, max_steps: int):
        self.engine = engine
        self.pi = pi
        self.window = window
        self.max_basis = max_basis
        self.max_steps = max_steps
        self.steps = 0
        self.algebra = engine.algebra
        self._index: Dict[Monomial, int] = {}
        self._monomials: List[Monomial] = []

    # coordinates

    def _vector(self, combination: Combination) -> SparseVector:
        entries = {}
        for m, c in combination.items():
            index = self._index.get(m)
            if index is None:
                index = len(self._monomials)
                self._index[m] = index
                self._monomials.append(m)
            entries[index] = c
        return SparseVector(entries)

    def _combination(self, vector: SparseVector) -> Combination:
        return {self._monomials[i]: c for i, c in vector.items()}

    # letters

    def lowering_letters(self) -> List[Letter]:
        letters = []
        for r1 in range(0, self.window.depth + 1):
            for index in range(self.algebra.dim):
                for r2 in self.window.t2_range(self.window.t2_degree):
                    letter = (index, -r1, r2)
                    if self.engine.kind(letter) is not RootClass.LOWERING:
                        continue
                    if self.window.contains(self.engine.depth_of(letter)):
                        letters.append(letter)
        return sorted(letters, key=self.engine.order_key)

    def _raising_letters(self, bound: KVector) -> List[Letter]:
        letters = []
        for r1 in range(0, bound[0] + 1):
            for index in range(self.algebra.dim):
                for r2 in self.window.t2_range(self.window.budget):
                    letter = (index, r1, r2)
                    kind = self.engine.kind(letter)
                    if kind is RootClass.CARTAN:
                        if r2 != 0:
                            letters.append(letter)
                        continue
                    if kind is RootClass.RAISING:
                        coords = self.engine.root_coords(letter)
                        if all(c <= b for c, b in zip(coords, bound)):
                            letters.append(letter)
        return letters

    def seeds(self) -> List[Tuple[KVector, Combination]]:
        """(x-_i)^(lambda(h_i)+1) w for every node, with x-_0 = x+_theta t1^-1."""
        theta = self.algebra.roots.highest
        out = []
        for node, degree in enumerate(self.pi.degrees):
            if node == 0:
                letter = (self.algebra.plus(theta), -1, 0)
            else:
                letter = (self.algebra.minus(self.algebra.roots.simple[node - 1]), 0, 0)
            vector = cyclic_vector()
            for _ in range(degree + 1):
                vector = self.engine.apply(letter, vector)
            eta = tuple((degree + 1) * c for c in self.engine.depth_of(letter))
            out.append((eta, vector))
        return out

    # closure

    def _close(
        self,
        start: List[Tuple[KVector, Combination, int]],
        letters: Sequence[Letter],
        admissible,
    ) -> Tuple[WeightedSpan, List[Tuple[KVector, SparseVector, int]]]:
        """
        Span of the start vectors under the letters, built level by level in t2 cost.

        A vector recorded at level c lies in the span of words of total t2 cost <= c
        applied to the start vectors, so the records up to any level span exactly the
        relations reachable within that cost.
        """
        span = WeightedSpan()
        pending: Dict[int, List[Tuple[KVector, Combination]]] = {}
        for eta, combination, cost in start:
            if cost <= self.window.budget:
                pending.setdefault(cost, []).append((eta, combination))
        records: List[Tuple[KVector, SparseVector, int]] = []
        for level in range(self.window.budget + 1):
            frontier = self._absorb(span, pending.pop(level, []))
            while frontier:
                records.extend((eta, vector, level) for eta, vector in frontier)
                same_level: List[Tuple[KVector, Combination]] = []
                for eta, vector in frontier:
                    combination = self._combination(vector)
                    for letter in letters:
                        step = level + abs(letter[2])
                        if step > self.window.budget:
                            continue
                        target = tuple(e - c for e, c in zip(eta, self.engine.root_coords(letter)))
                        if not admissible(target):
                            continue
                        self.steps += 1
                        if self.steps > self.max_steps:
                            raise ResourceBoundExceededError(
                                f"relation saturation exceeds {self.max_steps} letter applications"
                            )
                        image = self.engine.apply(letter, combination)
                        if image:
                            (same_level if step == level else pending.setdefault(step, [])).append((target, image))
                frontier = self._absorb(span, same_level)
                if span.total_dimension() > self.max_basis:
                    raise ResourceBoundExceededError(f"relation space exceeds the bound {self.max_basis}")
        return span, records

    def _absorb(self, span: WeightedSpan, candidates) -> List[Tuple[KVector, SparseVector]]:
        grouped: Dict[KVector, List[SparseVector]] = {}
        for eta, combination in candidates:
            grouped.setdefault(eta, []).append(self._vector(combination))
        frontier = []
        for eta in sorted(grouped):
            frontier.extend((eta, vector) for vector in span.extend(eta, grouped[eta]))
        return frontier

    def relations(self) -> Tuple[Dict[KVector, List[Combination]], Dict[KVector, List[Combination]]]:
        """All relations per weight inside the window, and those reached within the t2 window."""
        seeds = self.seeds()
        bound = tuple(max(eta[l] for eta, _ in seeds) for l in range(self.algebra.rank + 1))
        _, raised = self._close(
            [(eta, vector, 0) for eta, vector in seeds],
            self._raising_letters(bound),
            lambda eta: min(eta) >= 0,
        )
        start = [(eta, self._combination(v), cost) for eta, v, cost in raised if self.window.contains(eta)]
        lowered, records = self._close(start, self.lowering_letters(), self.window.contains)
        full = {eta: [self._combination(v) for v in lowered.basis(eta)] for eta in lowered.keys()}
        short: Dict[KVector, List[Combination]] = {}
        for eta, vector, cost in records:
            if cost <= self.window.t2_degree:
                short.setdefault(eta, []).append(self._combination(vector))
        logger.debug("weyl_relations", weights=len(full), memo=self.engine.memo_size, steps=self.steps)
        return full, short


class WeylModule(WeightModule):
    """
    Window of W_tor(pi): weights lambda_pi - eta with eta_0 <= D and height(eta) <= H,
    spanned by normal-ordered monomials whose t2-degrees have total absolute value <= K.

    The variant "current" uses t2-degrees >= 0 only; "full" uses t2-degrees in [-K, K].
    """

    kind = "W_tor"

    def __init__(self, pi: PolyTuple, engine: PBWEngine, spaces: Dict[KVector, _QuotientSpace], window: _Window):
        self.pi = pi
        self.engine = engine
        self.window = window
        self.spaces = spaces
        self.keys: List[KVector] = sorted((k for k, s in spaces.items() if s.dim), key=lambda k: (sum(k), k))
        self.offsets: Dict[KVector, int] = {}
        labels: List[str] = []
        weights: List[TorWeight] = []
        self.eta_of: List[KVector] = []
        for key in self.keys:
            self.offsets[key] = len(labels)
            weight = self._weight(key)
            for m in spaces[key].representatives:
                labels.append(engine.render(m))
                weights.append(weight)
                self.eta_of.append(key)
        truncation = Truncation(
            depth=window.depth,
            height=window.height,
            t2_window=(0 if window.variant == "current" else -window.t2_degree, window.t2_degree),
        )
        super().__init__(pi.algebra, labels, weights, truncation, affine=True)
        self._terms: Dict[Letter, Operator] = {}

    def _weight(self, eta: KVector) -> TorWeight:
        matrix = self.pi.algebra.roots.affine_matrix()
        top = self.pi.degrees
        fin = [top[j] - sum(eta[l] * matrix[j][l] for l in range(len(eta))) for j in range(1, len(top))]
        return TorWeight.make(fin, self.pi.top_weight().c1, -eta[0])

    def descriptor(self) -> str:
        return f"{self.kind}({self.pi.render()}; {self.window.variant})"

    def grade(self, index: int) -> Tuple[int, int]:
        eta = self.eta_of[index]
        return (eta[0], sum(eta))

    def inexact_weights(self) -> FrozenSet[TorWeight]:
        return frozenset(self._weight(k) for k in self.keys if not self.spaces[k].exact)

    def representative(self, index: int) -> Monomial:
        key = self.eta_of[index]
        return self.spaces[key].representatives[index - self.offsets[key]]

    def term_operator(self, index: int, r1: int, r2: int) -> Operator:
        letter = (index, r1, r2)
        cached = self._terms.get(letter)
        if cached is not None:
            return cached
        shift = self.engine.root_coords(letter)
        columns: Dict[int, SparseVector] = {}
        lossy = set()
        for b in range(self.dim):
            image = self.engine.apply_letter(letter, self.representative(b))
            if not image:
                continue
            target = tuple(e - c for e, c in zip(self.eta_of[b], shift))
            space = self.spaces.get(target)
            if space is None or not self.window.contains(target):
                lossy.add(b)
                continue
            coords, stray = space.normal_form(image)
            if stray:
                lossy.add(b)
            offset = self.offsets.get(target, 0)
            columns[b] = SparseVector({offset + p: c for p, c in coords.items()})
        operator = Operator(SparseMatrix.from_columns(self.dim, self.dim, columns), lossy)
        self._terms[letter] = operator
        return operator

    def central_operator(self, k: int) -> Operator:
        return Operator.diagonal([self.pi.central_value(k)] * self.dim)

    def d1_operator(self) -> Operator:
        return Operator.diagonal([w.d1 for w in self.weights])

    def graded_dims(self) -> Dict[KVector, int]:
        """Dimension per eta = lambda_pi - weight in affine simple-root coordinates."""
        return {k: self.spaces[k].dim for k in self.keys}


def _window_monomials(engine: PBWEngine, letters: List[Letter], window: _Window, limit: int) -> Dict[KVector, List[Monomial]]:
    found: Dict[KVector, List[Monomial]] = {}
    zero = tuple(0 for _ in range(engine.algebra.rank + 1))
    count = 0

    def extend(start: int, monomial: Monomial, eta: KVector, norm: int) -> None:
        nonlocal count
        found.setdefault(eta, []).append(monomial)
        count += 1
        if count > limit:
            raise ResourceBoundExceededError(f"window basis exceeds the bound {limit}")
        for position in range(start, len(letters)):
            letter = letters[position]
            step = norm + abs(letter[2])
            if step > window.t2_degree:
                continue
            target = tuple(e + d for e, d in zip(eta, engine.depth_of(letter)))
            if window.contains(target):
                extend(position, monomial + (letter,), target, step)

    extend(0, (), zero, 0)
    return found


def weyl_module_truncated(
    pi: PolyTuple,
    depth: int,
    t2_degree: int,
    height: int,
    variant: Variant = "current",
    budget: Optional[int] = None,
    max_basis: Optional[int] = None,
    max_steps: Optional[int] = None,
) -> WeylModule:
    """
    Build the window of W_tor(pi).

    Relations are the seeds (x-_i)^(deg pi_i + 1) w closed under raising and Cartan
    letters, then under lowering letters, with total applied t2-degree at most `budget`
    (default K + max deg pi_i + 1). A weight is exact when the relations reached within
    the t2 window already give its dimension.

    Args:
        pi: Polynomial tuple
        depth: Window D on eta_0
        t2_degree: Window K on the t2-degrees of the spanning monomials
        height: Window H on the height of eta
        variant: "current" (t2-degrees >= 0) or "full" (t2-degrees in [-K, K])
        budget: Extended t2 budget for generating relations
        max_basis: Resource bound on monomials and relations
        max_steps: Resource bound on letter applications while saturating the relations

    Raises:
        ResourceBoundExceededError: If the window or the relation space is too large, or
            saturation needs more than max_steps letter applications
    """
    if min(depth, t2_degree, height) < 0:
        raise ValueError("window bounds must be non-negative")
    if variant not in ("current", "full"):
        raise ValueError(f"unknown variant {variant!r}")
    limit = max_basis or compute_defaults.max_basis_size
    window = _Window(depth, height, t2_degree, variant, budget if budget is not None else t2_degree + max(pi.degrees) + 1)
    engine = PBWEngine(pi.algebra, pi)
    saturation = _Saturation(engine, pi, window, limit, max_steps or compute_defaults.max_closure_steps)
    letters = saturation.lowering_letters()
    monomials = _window_monomials(engine, letters, window, limit)
    full, short = saturation.relations()

    def simplicity(m: Monomial):
        return (PBWEngine.t2_norm(m), len(m), [engine.order_key(l) for l in m])

    spaces = {}
    for eta in set(monomials) | set(full):
        spaces[eta] = _QuotientSpace(monomials.get(eta, []), full.get(eta, []), short.get(eta, []), simplicity)
    module = WeylModule(pi, engine, spaces, window)
    logger.info(
        "module_built",
        kind=module.descriptor(),
        dim=module.dim,
        depth=depth,
        height=height,
        t2_degree=t2_degree,
        inexact=len(module.inexact_weights()),
    )
    return module
