"""Module operators: sparse matrices with window-loss markers."""
from typing import FrozenSet, Iterable, Optional, Tuple

from src.errors import DimensionMismatchError
from src.exactla.scalars import to_scalar
from src.exactla.sparse import SparseMatrix, SparseVector


class Operator:
    """
    Action of one algebra element on a truncated module.

    Columns in `lossy` are basis vectors whose true image leaves the window; their
    stored image is only the in-window part (usually zero).
    """

    __slots__ = ("matrix", "lossy")

    def __init__(self, matrix: SparseMatrix, lossy: Iterable[int] = ()):
        if matrix.rows != matrix.cols:
            raise DimensionMismatchError(f"operator matrix must be square, got {matrix.shape}")
        self.matrix = matrix
        self.lossy: FrozenSet[int] = frozenset(lossy)

    @property
    def dim(self) -> int:
        return self.matrix.rows

    @classmethod
    def identity(cls, dim: int) -> "Operator":
        return cls(SparseMatrix.identity(dim))

    @classmethod
    def zero(cls, dim: int) -> "Operator":
        return cls(SparseMatrix.zero(dim, dim))

    @classmethod
    def diagonal(cls, values) -> "Operator":
        return cls(SparseMatrix.diagonal(list(values)))

    def apply(self, vector: SparseVector) -> SparseVector:
        return self.matrix.apply(vector)

    def apply_tracked(self, vector: SparseVector) -> Tuple[SparseVector, bool]:
        """Image and whether any lossy column was touched."""
        hit = any(index in self.lossy for index in vector.support())
        return self.matrix.apply(vector), hit

    def column(self, index: int) -> SparseVector:
        return self.matrix.column(index)

    def scale(self, c: object) -> "Operator":
        if to_scalar(c) == 0:
            return Operator(SparseMatrix.zero(self.dim, self.dim), self.lossy)
        return Operator(self.matrix.scale(c), self.lossy)

    def __add__(self, other: "Operator") -> "Operator":
        return Operator(self.matrix + other.matrix, self.lossy | other.lossy)

    def __sub__(self, other: "Operator") -> "Operator":
        return Operator(self.matrix - other.matrix, self.lossy | other.lossy)

    def __neg__(self) -> "Operator":
        return self.scale(-1)

    def __matmul__(self, other: "Operator") -> "Operator":
        """Composition self ∘ other."""
        lossy = set(other.lossy)
        if self.lossy:
            for j in range(other.dim):
                if j in lossy:
                    continue
                if any(i in self.lossy for i in other.matrix.column(j).support()):
                    lossy.add(j)
        return Operator(self.matrix @ other.matrix, lossy)

    def commutator(self, other: "Operator") -> "Operator":
        return (self @ other) - (other @ self)

    def loss_free_columns(self) -> FrozenSet[int]:
        return frozenset(range(self.dim)) - self.lossy

    def agrees_with(self, other: "Operator", columns: Optional[Iterable[int]] = None) -> Optional[int]:
        """First column (among the given, default all loss-free) where the images differ."""
        if columns is None:
            columns = sorted(self.loss_free_columns() & other.loss_free_columns())
        for j in columns:
            if self.matrix.column(j) != other.matrix.column(j):
                return j
        return None

    def __repr__(self) -> str:
        return f"Operator(dim={self.dim}, nnz={self.matrix.nnz}, lossy={len(self.lossy)})"
