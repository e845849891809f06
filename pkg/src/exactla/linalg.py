"""Rank, kernels, spans and subspace arithmetic over QQ."""
from typing import Dict, List, Optional, Sequence, Tuple

import structlog

from src.errors import DimensionMismatchError
from src.exactla.scalars import ExactScalar
from src.exactla.sparse import SparseMatrix, SparseVector

logger = structlog.get_logger()


def rref(m: SparseMatrix) -> Tuple[SparseMatrix, Tuple[int, ...]]:
    """
    Reduced row echelon form with its pivot columns.

    Args:
        m: Matrix to reduce

    Returns:
        Tuple of (reduced matrix, pivot column indices)
    """
    if m.nnz == 0:
        return SparseMatrix(m.rows, m.cols), ()
    reduced, pivots = m.to_domain_matrix().rref()
    return SparseMatrix.from_domain_matrix(reduced), tuple(pivots)


def rank(m: SparseMatrix) -> int:
    """Rank over QQ."""
    if m.nnz == 0:
        return 0
    return m.to_domain_matrix().rank()


def kernel_basis(m: SparseMatrix) -> List[SparseVector]:
    """
    Basis of the right null space, one vector per free column.

    Each vector is scaled so that its first nonzero entry is 1.

    Args:
        m: Matrix whose kernel is wanted

    Returns:
        List of cols - rank(m) vectors ordered by free column
    """
    reduced, pivots = rref(m)
    pivot_rows = {p: r for r, p in enumerate(pivots)}
    basis: List[SparseVector] = []
    for free in range(m.cols):
        if free in pivot_rows:
            continue
        entries: Dict[int, ExactScalar] = {free: 1}
        for pivot, r in pivot_rows.items():
            value = reduced.get(r, free)
            if value != 0:
                entries[pivot] = -value
        vector = SparseVector(entries)
        basis.append(vector.scale(1 / vector[vector.leading_index()]))
    return basis


def _ambient(vectors: Sequence[SparseVector], dimension: Optional[int]) -> int:
    needed = max((v.max_index() for v in vectors), default=-1) + 1
    if dimension is None:
        return needed
    if needed > dimension:
        raise DimensionMismatchError(f"vector index {needed - 1} exceeds ambient dimension {dimension}")
    return dimension


def span_rank(vectors: Sequence[SparseVector], dimension: Optional[int] = None) -> int:
    """Dimension of the span of the vectors."""
    cols = _ambient(vectors, dimension)
    return rank(SparseMatrix.from_rows(list(vectors), cols))


def span_basis(vectors: Sequence[SparseVector], dimension: Optional[int] = None) -> List[SparseVector]:
    """Reduced echelon basis of the span, ordered by pivot."""
    cols = _ambient(vectors, dimension)
    reduced, pivots = rref(SparseMatrix.from_rows(list(vectors), cols))
    return [reduced.row(r) for r in range(len(pivots))]


def independent_subset(vectors: Sequence[SparseVector], dimension: Optional[int] = None) -> List[int]:
    """Indices of the lexicographically first maximal independent subfamily."""
    cols = _ambient(vectors, dimension)
    columns = {j: v for j, v in enumerate(vectors)}
    _, pivots = rref(SparseMatrix.from_columns(cols, len(vectors), columns))
    return list(pivots)


def intersect_and_quotient_dims(
    subspace_a: Sequence[SparseVector],
    subspace_b: Sequence[SparseVector],
    dimension: Optional[int] = None,
) -> Tuple[int, int]:
    """
    Dimensions of A ∩ B and A / (A ∩ B) for spans A and B.

    Uses dim(A ∩ B) = dim A + dim B - dim(A + B).

    Args:
        subspace_a: Spanning vectors of A
        subspace_b: Spanning vectors of B
        dimension: Ambient dimension; indices beyond it raise DimensionMismatchError

    Returns:
        Tuple of (dim intersection, dim quotient)
    """
    _ambient(list(subspace_a) + list(subspace_b), dimension)
    dim_a = span_rank(subspace_a, dimension)
    if dim_a == 0:
        return 0, 0
    dim_b = span_rank(subspace_b, dimension)
    dim_sum = span_rank(list(subspace_a) + list(subspace_b), dimension)
    intersection = dim_a + dim_b - dim_sum
    return intersection, dim_a - intersection


def solve_in_span(
    columns: Sequence[SparseVector],
    targets: Sequence[SparseVector],
    dimension: Optional[int] = None,
) -> List[Optional[SparseVector]]:
    """
    Express each target as a combination of the given columns.

    Args:
        columns: Spanning vectors, indexed by position
        targets: Vectors to express

    Returns:
        For each target, coefficients indexed by column position, or None when the
        target is not in the span
    """
    if not targets:
        return []
    cols = _ambient(list(columns) + list(targets), dimension)
    width = len(columns) + len(targets)
    stacked = {j: v for j, v in enumerate(list(columns) + list(targets))}
    reduced, pivots = rref(SparseMatrix.from_columns(cols, width, stacked))
    basic = [(r, p) for r, p in enumerate(pivots) if p < len(columns)]
    solutions: List[Optional[SparseVector]] = []
    for t in range(len(targets)):
        j = len(columns) + t
        if j in pivots:
            solutions.append(None)
            continue
        solutions.append(SparseVector({p: reduced.get(r, j) for r, p in basic}))
    return solutions


class WeightedSpan:
    """
    Per-key subspaces kept in reduced echelon form and grown one vector at a time.

    Every stored row has a 1 at its pivot and zeros at the pivots of the other rows
    of its key, so reducing a vector takes one pass over its support.
    """

    def __init__(self) -> None:
        self._rows: Dict[object, Dict[int, SparseVector]] = {}

    def basis(self, key: object) -> List[SparseVector]:
        rows = self._rows.get(key, {})
        return [rows[p] for p in sorted(rows)]

    def dimension(self, key: object) -> int:
        return len(self._rows.get(key, {}))

    def keys(self) -> List[object]:
        return list(self._rows)

    def total_dimension(self) -> int:
        return sum(len(rows) for rows in self._rows.values())

    def reduce(self, key: object, vector: SparseVector) -> SparseVector:
        """Residue of the vector after eliminating every pivot stored at key."""
        rows = self._rows.get(key)
        if not rows:
            return vector
        residue = vector
        for pivot in [i for i in vector.support() if i in rows]:
            c = residue[pivot]
            if c:
                residue = residue - rows[pivot].scale(c)
        return residue

    def extend(self, key: object, vectors: Sequence[SparseVector]) -> List[SparseVector]:
        """
        Add vectors to the subspace at key.

        Returns:
            One normalized residue per vector that was not already spanned, in input order
        """
        rows = self._rows.setdefault(key, {})
        new: List[SparseVector] = []
        for vector in vectors:
            residue = self.reduce(key, vector)
            if residue.is_zero():
                continue
            pivot = residue.leading_index()
            row = residue.scale(1 / residue[pivot])
            for p, other in list(rows.items()):
                c = other[pivot]
                if c:
                    rows[p] = other - row.scale(c)
            rows[pivot] = row
            new.append(row)
        if not rows:
            del self._rows[key]
        return new

    def contains(self, key: object, vector: SparseVector) -> bool:
        return self.reduce(key, vector).is_zero()
