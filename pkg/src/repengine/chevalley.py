"""Modules presented by their Chevalley generators, with root-space resolution."""
from typing import Dict, List, Sequence, Tuple

import structlog

from src.errors import WindowLossError
from src.exactla.linalg import independent_subset, solve_in_span
from src.exactla.sparse import SparseVector
from src.liecore.algebra import ChevalleyAlgebra
from src.repengine.module import TorWeight, Truncation, WeightModule
from src.repengine.operators import Operator
from src.toralg.bracket import bracket_tor
from src.toralg.elements import TorElement
from src.toralg.roots import is_positive_affine

logger = structlog.get_logger()

AffineRoot = Tuple[Tuple[int, ...], int]


class ChevalleyModule(WeightModule):
    """
    Module known through the operators of e_i and f_i.

    Cartan elements, c1 and d1 act diagonally through the weights. Any other
    x t1^r is recovered by bracketing generators up to its root space and solving
    for the requested root vector. Elements with t2-content do not act.
    """

    def __init__(
        self,
        algebra: ChevalleyAlgebra,
        labels: List[str],
        weights: List[TorWeight],
        truncation: Truncation,
        raising: Dict[int, Operator],
        lowering: Dict[int, Operator],
        affine: bool,
        grades: Sequence[Tuple[int, int]],
    ):
        super().__init__(algebra, labels, weights, truncation, affine)
        self._raising = raising
        self._lowering = lowering
        self._grades = list(grades)
        self._spaces: Dict[Tuple[int, AffineRoot], List[Tuple[TorElement, Operator]]] = {}
        self._terms: Dict[Tuple[int, int], Operator] = {}

    def grade(self, index: int) -> Tuple[int, int]:
        return self._grades[index]

    def raising_operator(self, node: int) -> Operator:
        return self._raising[node]

    def lowering_operator(self, node: int) -> Operator:
        return self._lowering[node]

    # diagonal part

    def _diagonal(self, values) -> Operator:
        return Operator.diagonal(list(values))

    def central_operator(self, k: int) -> Operator:
        if k != 0:
            raise WindowLossError(f"c1 t2^{k} does not act on {self.descriptor()}")
        return self._diagonal(w.c1 for w in self.weights)

    def d1_operator(self) -> Operator:
        return self._diagonal(w.d1 for w in self.weights)

    # root vectors

    def _node_root(self, node: int) -> AffineRoot:
        if node == 0:
            return tuple(-c for c in self.algebra.roots.highest), 1
        return self.algebra.roots.simple[node - 1], 0

    def _is_positive(self, root: AffineRoot) -> bool:
        finite, r1 = root
        if not self.affine:
            return r1 == 0 and self.algebra.roots.is_positive(finite)
        return is_positive_affine(self.algebra.roots, finite, r1)

    def _root_space(self, sign: int, root: AffineRoot) -> List[Tuple[TorElement, Operator]]:
        """Independent elements spanning the root space of sign*root, with their operators."""
        key = (sign, root)
        if key in self._spaces:
            return self._spaces[key]
        generators = self.generators.e if sign > 0 else self.generators.f
        operators = self._raising if sign > 0 else self._lowering
        for node in self.nodes:
            if self._node_root(node) == root:
                space = [(generators[node], operators[node])]
                self._spaces[key] = space
                return space

        candidates: List[Tuple[TorElement, int, Tuple[TorElement, Operator]]] = []
        finite, r1 = root
        for node in self.nodes:
            node_finite, node_r1 = self._node_root(node)
            previous = (tuple(a - b for a, b in zip(finite, node_finite)), r1 - node_r1)
            if not any(previous[0]) and previous[1] == 0:
                continue
            if not self._is_positive(previous):
                continue
            for pair in self._root_space(sign, previous):
                element = bracket_tor(generators[node], pair[0])
                if not element.is_zero():
                    candidates.append((element, node, pair))

        coordinates: Dict[object, int] = {}
        vectors = []
        for element, _, _ in candidates:
            entries = {}
            for term, c in element.iter_terms():
                entries[coordinates.setdefault(term, len(coordinates))] = c
            vectors.append(SparseVector(entries))
        chosen = independent_subset(vectors, len(coordinates)) if vectors else []
        space = []
        for position in chosen:
            element, node, (_, previous_op) = candidates[position]
            space.append((element, operators[node].commutator(previous_op)))
        self._spaces[key] = space
        return space

    def term_operator(self, index: int, r1: int, r2: int) -> Operator:
        if r2 != 0:
            raise WindowLossError(f"t2 does not act on {self.descriptor()}")
        cached = self._terms.get((index, r1))
        if cached is not None:
            return cached
        finite = self.algebra.root_of(index)
        if not any(finite) and r1 == 0:
            i = index - self.algebra.cartan(1) + 1
            operator = self._diagonal(w.fin[i - 1] for w in self.weights)
        else:
            operator = self._resolve(index, finite, r1)
        self._terms[(index, r1)] = operator
        return operator

    def _resolve(self, index: int, finite: Tuple[int, ...], r1: int) -> Operator:
        if not self.affine and r1 != 0:
            raise WindowLossError(f"t1 does not act on {self.descriptor()}")
        if self._is_positive((finite, r1)):
            sign, root = 1, (finite, r1)
        else:
            sign, root = -1, (tuple(-c for c in finite), -r1)
        space = self._root_space(sign, root)
        coordinates: Dict[object, int] = {}
        columns = []
        for element, _ in space:
            entries = {}
            for term, c in element.iter_terms():
                entries[coordinates.setdefault(term, len(coordinates))] = c
            columns.append(SparseVector(entries))
        target_key = (index, r1, 0)
        if target_key not in coordinates:
            raise WindowLossError(f"no root vector for {self.algebra.label(index)} t1^{r1}")
        target = SparseVector.basis(coordinates[target_key])
        (solution,) = solve_in_span(columns, [target], len(coordinates))
        if solution is None:
            raise WindowLossError(f"{self.algebra.label(index)} t1^{r1} is not in its generated root space")
        operator = Operator.zero(self.dim)
        for position, c in solution.items():
            operator = operator + space[position][1].scale(c)
        logger.debug("root_vector_resolved", label=self.algebra.label(index), r1=r1, size=len(space))
        return operator
