"""Irreducible highest-weight modules, finite and truncated affine, and their restricted duals."""
from typing import Dict, List, Optional, Sequence, Set, Tuple

import structlog

from src.config.settings import compute_defaults
from src.errors import NonDominantWeightError, ResourceBoundExceededError, ZeroLevelError
from src.exactla.linalg import rref
from src.exactla.sparse import SparseMatrix, SparseVector
from src.liecore.algebra import ChevalleyAlgebra
from src.liecore.weights import FinWeight, weyl_dimension
from src.repengine.chevalley import ChevalleyModule
from src.repengine.module import TorWeight, Truncation
from src.repengine.operators import Operator

logger = structlog.get_logger()

KVector = Tuple[int, ...]


class _LayerBuilder:
    """
    Weight spaces of the irreducible module L(lambda) of a symmetrizable Kac-Moody
    algebra, layer by layer below the top.

    Below the top a vector is zero in L(lambda) exactly when every e_j kills it, so
    the span of the candidates f_i b at weight mu is the image of the map
    u -> (e_j u)_j. This is the radical of the contravariant form computed one layer
    at a time. The pivots of that map give the basis; its reduced columns give f_i.
    """

    def __init__(self, cartan: Sequence[Sequence[int]], top: Sequence[int], in_window, max_size: int, first_node: int = 0):
        self.cartan = cartan
        self.top = list(top)
        self.nodes = len(top)
        self.in_window = in_window
        self.max_size = max_size
        self.first_node = first_node
        self.spaces: Dict[KVector, List[int]] = {}
        self.k_of: List[KVector] = []
        self.labels: List[str] = []
        self.e_columns: List[Dict[int, SparseVector]] = [dict() for _ in range(self.nodes)]
        self.f_columns: List[Dict[int, SparseVector]] = [dict() for _ in range(self.nodes)]
        self.f_lossy: List[Set[int]] = [set() for _ in range(self.nodes)]

    def value(self, k: KVector, i: int) -> int:
        """mu(h_i) for mu = top - sum k_l alpha_l."""
        return self.top[i] - sum(k[l] * self.cartan[i][l] for l in range(self.nodes))

    def _shift(self, k: KVector, i: int, by: int) -> KVector:
        return tuple(c + (by if l == i else 0) for l, c in enumerate(k))

    def _add(self, k: KVector, label: str) -> int:
        index = len(self.k_of)
        if index >= self.max_size:
            raise ResourceBoundExceededError(f"basis exceeds the bound {self.max_size}")
        self.k_of.append(k)
        self.labels.append(label)
        self.spaces.setdefault(k, []).append(index)
        for j in range(self.nodes):
            self.e_columns[j][index] = SparseVector()
        return index

    def _f_image(self, i: int, vector: SparseVector) -> SparseVector:
        return SparseVector.combine((c, self.f_columns[i][b]) for b, c in vector.items())

    def build(self) -> None:
        zero = tuple(0 for _ in range(self.nodes))
        self._add(zero, "v")
        layer = [zero]
        while layer:
            targets = sorted({
                self._shift(k, i, 1) for k in layer for i in range(self.nodes)
                if self.in_window(self._shift(k, i, 1))
            })
            layer = [mu for mu in targets if self._build_weight(mu)]
        for k, indices in self.spaces.items():
            for i in range(self.nodes):
                if not self.in_window(self._shift(k, i, 1)):
                    for b in indices:
                        self.f_lossy[i].add(b)
                        self.f_columns[i].setdefault(b, SparseVector())

    def _build_weight(self, mu: KVector) -> bool:
        candidates: List[Tuple[int, int]] = []
        for i in range(self.nodes):
            if mu[i] > 0:
                candidates.extend((i, b) for b in self.spaces.get(self._shift(mu, i, -1), []))
        if not candidates:
            return False

        blocks: Dict[int, Tuple[int, Dict[int, int]]] = {}
        offset = 0
        for j in range(self.nodes):
            if mu[j] == 0:
                continue
            target = self.spaces.get(self._shift(mu, j, -1), [])
            blocks[j] = (offset, {g: p for p, g in enumerate(target)})
            offset += len(target)

        columns: Dict[int, SparseVector] = {}
        images: List[Dict[int, SparseVector]] = []
        for position, (i, b) in enumerate(candidates):
            # e_j f_i b = f_i e_j b + delta_ij h_i b
            raised: Dict[int, SparseVector] = {}
            entries: Dict[int, object] = {}
            for j, (start, slot) in blocks.items():
                image = self._f_image(i, self.e_columns[j][b])
                if i == j:
                    image = image + SparseVector.basis(b, self.value(self.k_of[b], i))
                raised[j] = image
                for g, c in image.items():
                    entries[start + slot[g]] = c
            images.append(raised)
            columns[position] = SparseVector(entries)

        reduced, pivots = rref(SparseMatrix.from_columns(offset, len(candidates), columns))
        new_indices = []
        for p in pivots:
            i, b = candidates[p]
            index = self._add(mu, f"f{i + self.first_node} {self.labels[b]}")
            new_indices.append(index)
            for j, image in images[p].items():
                self.e_columns[j][index] = image
        for position, (i, b) in enumerate(candidates):
            self.f_columns[i][b] = SparseVector(
                {new_indices[r]: reduced.get(r, position) for r in range(len(pivots))}
            )
        return bool(pivots)

    def operators(self) -> Tuple[List[Operator], List[Operator]]:
        size = len(self.k_of)
        raising, lowering = [], []
        for i in range(self.nodes):
            e = SparseMatrix.from_columns(size, size, self.e_columns[i])
            f = SparseMatrix.from_columns(size, size, self.f_columns[i])
            raising.append(Operator(e))
            lowering.append(Operator(f, self.f_lossy[i]))
        return raising, lowering


class HighestWeightModule(ChevalleyModule):
    """V_fin(lambda) or the truncation of V_aff(lambda) to a window below its top."""

    def __init__(self, algebra: ChevalleyAlgebra, top: Sequence[int], affine: bool, builder: _LayerBuilder, truncation: Truncation):
        raising, lowering = builder.operators()
        offset = 0 if affine else 1
        self.top_coords = tuple(top)
        self.k_vectors = list(builder.k_of)
        weights = [self._weight_of(algebra, builder, k, affine) for k in builder.k_of]
        grades = [((k[0] if affine else 0), sum(k)) for k in builder.k_of]
        super().__init__(
            algebra,
            list(builder.labels),
            weights,
            truncation,
            {i + offset: op for i, op in enumerate(raising)},
            {i + offset: op for i, op in enumerate(lowering)},
            affine,
            grades,
        )
        self.kind = "V_aff" if affine else "V_fin"

    @staticmethod
    def _weight_of(algebra: ChevalleyAlgebra, builder: _LayerBuilder, k: KVector, affine: bool) -> TorWeight:
        offset = 1 if affine else 0
        fin = [builder.value(k, j + offset) for j in range(algebra.rank)]
        if not affine:
            return TorWeight.make(fin)
        level = sum(m * c for m, c in zip(algebra.roots.affine_marks(), builder.top))
        return TorWeight.make(fin, level, -k[0])

    def descriptor(self) -> str:
        coords = ",".join(str(c) for c in self.top_coords)
        return f"{self.kind}({coords})"

    def top_weight(self) -> TorWeight:
        return self.weights[0]


class DualModule(ChevalleyModule):
    """Restricted dual: x acts by minus the transpose; the top becomes a lowest vector."""

    def __init__(self, source: HighestWeightModule):
        raising = {i: Operator(-source.raising_operator(i).matrix.transpose(), source.lowering_operator(i).lossy) for i in source.nodes}
        lowering = {i: Operator(-source.lowering_operator(i).matrix.transpose()) for i in source.nodes}
        super().__init__(
            source.algebra,
            [f"{label}*" for label in source.labels],
            [-w for w in source.weights],
            source.truncation,
            raising,
            lowering,
            source.affine,
            [source.grade(i) for i in range(source.dim)],
        )
        self.source = source
        self.kind = "V*_aff" if source.affine else "V*_fin"

    def descriptor(self) -> str:
        coords = ",".join(str(c) for c in self.source.top_coords)
        return f"{self.kind}({coords})"


def irreducible_fin(algebra: ChevalleyAlgebra, weight: FinWeight, max_basis: Optional[int] = None) -> HighestWeightModule:
    """
    Build V_fin(lambda).

    Args:
        algebra: Finite algebra
        weight: Dominant highest weight
        max_basis: Bound on the basis size

    Returns:
        The irreducible module, cross-checked against the Weyl dimension formula

    Raises:
        NonDominantWeightError: If lambda is not dominant
    """
    expected = weyl_dimension(algebra, weight)
    builder = _LayerBuilder(
        algebra.matrix, weight.coords, lambda k: True, max_basis or compute_defaults.max_basis_size, first_node=1
    )
    builder.build()
    module = HighestWeightModule(algebra, weight.coords, False, builder, Truncation())
    if module.dim != expected:
        raise RuntimeError(f"V_fin{weight.coords} has dimension {module.dim}, Weyl formula gives {expected}")
    logger.info("module_built", kind=module.descriptor(), dim=module.dim)
    return module


def _check_affine_weight(algebra: ChevalleyAlgebra, coords: Sequence[int]) -> None:
    if len(coords) != algebra.rank + 1:
        raise NonDominantWeightError(f"expected {algebra.rank + 1} affine coordinates, got {len(coords)}")
    if any(c < 0 for c in coords):
        raise NonDominantWeightError(f"{tuple(coords)} is not dominant")
    if sum(m * c for m, c in zip(algebra.roots.affine_marks(), coords)) <= 0:
        raise ZeroLevelError(f"{tuple(coords)} has level zero")


def irreducible_aff_truncated(
    algebra: ChevalleyAlgebra,
    coords: Sequence[int],
    depth: int,
    height: Optional[int] = None,
    max_basis: Optional[int] = None,
) -> HighestWeightModule:
    """
    Weight spaces of V_aff(lambda) with d1-depth at most `depth` below the top.

    Args:
        algebra: Finite algebra whose affinization acts
        coords: lambda(h_i) for i = 0..n
        depth: Window D on the coefficient of alpha_0
        height: Optional bound on the total number of simple roots subtracted
        max_basis: Bound on the basis size

    Raises:
        NonDominantWeightError: If some lambda(h_i) is negative
        ZeroLevelError: If lambda(c1) = 0
    """
    _check_affine_weight(algebra, coords)
    if depth < 0:
        raise ValueError(f"depth must be non-negative, got {depth}")

    def in_window(k: KVector) -> bool:
        return k[0] <= depth and (height is None or sum(k) <= height)

    builder = _LayerBuilder(
        algebra.roots.affine_matrix(), coords, in_window, max_basis or compute_defaults.max_basis_size
    )
    builder.build()
    module = HighestWeightModule(algebra, coords, True, builder, Truncation(depth=depth, height=height))
    logger.info("module_built", kind=module.descriptor(), dim=module.dim, depth=depth, height=height)
    return module


def dual_aff_truncated(
    algebra: ChevalleyAlgebra,
    coords: Sequence[int],
    depth: int,
    height: Optional[int] = None,
    max_basis: Optional[int] = None,
) -> DualModule:
    """V*_aff(lambda) restricted to the same window as irreducible_aff_truncated."""
    module = DualModule(irreducible_aff_truncated(algebra, coords, depth, height, max_basis))
    logger.info("module_built", kind=module.descriptor(), dim=module.dim, depth=depth)
    return module


def fundamental_coords(algebra: ChevalleyAlgebra, node: int, multiple: int = 1) -> Tuple[int, ...]:
    """Affine coordinates of multiple * omega_node."""
    return tuple(multiple if i == node else 0 for i in range(algebra.rank + 1))


def weight_dims(module: ChevalleyModule) -> Dict[TorWeight, int]:
    return {w: len(v) for w, v in module.weight_spaces().items()}
