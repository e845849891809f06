"""Immutable sparse vectors and matrices over QQ."""
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from src.errors import DimensionMismatchError
from src.exactla.scalars import ExactScalar, ZERO, to_scalar


class SparseVector:
    """Map from basis index to nonzero exact scalar."""

    __slots__ = ("_entries", "_hash")

    def __init__(self, entries: Optional[Mapping[int, object]] = None):
        cleaned: Dict[int, ExactScalar] = {}
        if entries:
            for index, value in entries.items():
                scalar = to_scalar(value)
                if scalar != 0:
                    cleaned[int(index)] = scalar
        self._entries = cleaned
        self._hash: Optional[int] = None

    @classmethod
    def basis(cls, index: int, coefficient: object = 1) -> "SparseVector":
        return cls({index: coefficient})

    @classmethod
    def zero(cls) -> "SparseVector":
        return cls()

    @classmethod
    def combine(cls, terms: Iterable[Tuple[object, "SparseVector"]]) -> "SparseVector":
        """Linear combination sum(c * v)."""
        acc: Dict[int, ExactScalar] = {}
        for coefficient, vector in terms:
            c = to_scalar(coefficient)
            if c == 0:
                continue
            for index, value in vector._entries.items():
                acc[index] = acc.get(index, ZERO) + c * value
        return cls(acc)

    def items(self) -> Iterator[Tuple[int, ExactScalar]]:
        return iter(sorted(self._entries.items()))

    def support(self) -> List[int]:
        return sorted(self._entries)

    def to_dict(self) -> Dict[int, ExactScalar]:
        return dict(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def leading_index(self) -> int:
        return min(self._entries)

    def max_index(self) -> int:
        return max(self._entries) if self._entries else -1

    def scale(self, coefficient: object) -> "SparseVector":
        c = to_scalar(coefficient)
        if c == 0:
            return SparseVector()
        return SparseVector({i: c * v for i, v in self._entries.items()})

    def dot(self, other: "SparseVector") -> ExactScalar:
        small, large = sorted((self._entries, other._entries), key=len)
        total = ZERO
        for index, value in small.items():
            if index in large:
                total += value * large[index]
        return total

    def __getitem__(self, index: int) -> ExactScalar:
        return self._entries.get(index, ZERO)

    def __len__(self) -> int:
        return len(self._entries)

    def __add__(self, other: "SparseVector") -> "SparseVector":
        return SparseVector.combine([(1, self), (1, other)])

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        return SparseVector.combine([(1, self), (-1, other)])

    def __neg__(self) -> "SparseVector":
        return self.scale(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{i}: {v}" for i, v in self.items())
        return f"SparseVector({{{body}}})"


class SparseMatrix:
    """Row-major sparse matrix with explicit shape."""

    __slots__ = ("rows", "cols", "_rows", "_columns")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping[Tuple[int, int], object]] = None):
        self.rows = rows
        self.cols = cols
        data: Dict[int, Dict[int, ExactScalar]] = {}
        for (r, c), value in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise DimensionMismatchError(f"entry ({r}, {c}) outside {rows}x{cols}")
            scalar = to_scalar(value)
            if scalar != 0:
                data.setdefault(r, {})[c] = scalar
        self._rows = data
        self._columns: Optional[Dict[int, SparseVector]] = None

    @classmethod
    def from_columns(cls, rows: int, cols: int, columns: Mapping[int, SparseVector]) -> "SparseMatrix":
        entries: Dict[Tuple[int, int], ExactScalar] = {}
        for c, vector in columns.items():
            for r, value in vector.items():
                entries[(r, c)] = value
        return cls(rows, cols, entries)

    @classmethod
    def from_rows(cls, rows: Sequence[SparseVector], cols: int) -> "SparseMatrix":
        entries: Dict[Tuple[int, int], ExactScalar] = {}
        for r, vector in enumerate(rows):
            for c, value in vector.items():
                entries[(r, c)] = value
        return cls(len(rows), cols, entries)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        entries = {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row)}
        return cls(nrows, ncols, entries)

    @classmethod
    def identity(cls, size: int) -> "SparseMatrix":
        return cls(size, size, {(i, i): 1 for i in range(size)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols)

    @classmethod
    def diagonal(cls, values: Sequence[object]) -> "SparseMatrix":
        return cls(len(values), len(values), {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def from_domain_matrix(cls, dm: DomainMatrix) -> "SparseMatrix":
        rows, cols = dm.shape
        entries: Dict[Tuple[int, int], ExactScalar] = {}
        for r, row in dm.to_sdm().items():
            for c, value in row.items():
                entries[(r, c)] = value
        return cls(rows, cols, entries)

    def to_domain_matrix(self) -> DomainMatrix:
        rows = {r: dict(row) for r, row in self._rows.items()}
        return DomainMatrix(rows, (self.rows, self.cols), QQ)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._rows.values())

    def entries(self) -> Iterator[Tuple[Tuple[int, int], ExactScalar]]:
        for r in sorted(self._rows):
            for c in sorted(self._rows[r]):
                yield (r, c), self._rows[r][c]

    def get(self, row: int, col: int) -> ExactScalar:
        return self._rows.get(row, {}).get(col, ZERO)

    def row(self, index: int) -> SparseVector:
        return SparseVector(self._rows.get(index, {}))

    def _column_map(self) -> Dict[int, SparseVector]:
        if self._columns is None:
            acc: Dict[int, Dict[int, ExactScalar]] = {}
            for r, row in self._rows.items():
                for c, value in row.items():
                    acc.setdefault(c, {})[r] = value
            self._columns = {c: SparseVector(col) for c, col in acc.items()}
        return self._columns

    def column(self, index: int) -> SparseVector:
        return self._column_map().get(index, SparseVector())

    def nonzero_columns(self) -> List[int]:
        return sorted(self._column_map())

    def apply(self, vector: SparseVector) -> SparseVector:
        if vector.max_index() >= self.cols:
            raise DimensionMismatchError(f"vector index {vector.max_index()} outside {self.cols} columns")
        columns = self._column_map()
        return SparseVector.combine(
            (value, columns[c]) for c, value in vector.items() if c in columns
        )

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries()})

    def scale(self, coefficient: object) -> "SparseMatrix":
        c = to_scalar(coefficient)
        return SparseMatrix(self.rows, self.cols, {k: c * v for k, v in self.entries()})

    def _check_same_shape(self, other: "SparseMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_same_shape(other)
        acc = dict(self.entries())
        for key, value in other.entries():
            acc[key] = acc.get(key, ZERO) + value
        return SparseMatrix(self.rows, self.cols, acc)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        if self.nnz == 0 or other.nnz == 0:
            return SparseMatrix(self.rows, other.cols)
        product = self.to_domain_matrix() * other.to_domain_matrix()
        return SparseMatrix.from_domain_matrix(product)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, frozenset(self.entries())))

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz})"
