"""Cartan data for simply-laced finite types."""
from typing import List, Literal, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from src.errors import InvalidCartanMatrixError

CartanMatrix = Tuple[Tuple[int, ...], ...]


def _type_a(rank: int) -> List[List[int]]:
    m = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        m[i][i] = 2
        if i + 1 < rank:
            m[i][i + 1] = m[i + 1][i] = -1
    return m


def _type_d(rank: int) -> List[List[int]]:
    m = _type_a(rank - 1) if rank > 1 else [[2]]
    m = [row + [0] for row in m] + [[0] * rank]
    m[rank - 1][rank - 1] = 2
    # last node attaches to node rank-3 (0-based)
    m[rank - 3][rank - 1] = m[rank - 1][rank - 3] = -1
    return m


def _type_e(rank: int) -> List[List[int]]:
    # Bourbaki labelling: 1-3-4-5-...; node 2 attaches to node 4
    m = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        m[i][i] = 2
    edges = [(0, 2), (1, 3), (2, 3)] + [(k, k + 1) for k in range(3, rank - 1)]
    for i, j in edges:
        m[i][j] = m[j][i] = -1
    return m


def cartan_matrix(type_label: str, rank: int) -> CartanMatrix:
    """
    Cartan matrix of a simply-laced type.

    Args:
        type_label: "A", "D" or "E"
        rank: Rank n

    Returns:
        n x n integer matrix as nested tuples

    Raises:
        InvalidCartanMatrixError: For unsupported types or ranks
    """
    if type_label == "A" and rank >= 1:
        rows = _type_a(rank)
    elif type_label == "D" and rank >= 4:
        rows = _type_d(rank)
    elif type_label == "E" and rank in (6, 7, 8):
        rows = _type_e(rank)
    elif type_label in ("B", "C", "F", "G"):
        raise InvalidCartanMatrixError(f"type {type_label} is not simply laced and is not supported")
    else:
        raise InvalidCartanMatrixError(f"no Cartan matrix of type {type_label}{rank}")
    return tuple(tuple(row) for row in rows)


def validate_cartan_matrix(matrix: CartanMatrix) -> None:
    """Raise InvalidCartanMatrixError unless the matrix is a symmetric generalized Cartan matrix."""
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise InvalidCartanMatrixError("Cartan matrix must be square and non-empty")
    for i in range(n):
        if matrix[i][i] != 2:
            raise InvalidCartanMatrixError(f"diagonal entry ({i},{i}) is {matrix[i][i]}, not 2")
        for j in range(n):
            if i == j:
                continue
            if matrix[i][j] > 0:
                raise InvalidCartanMatrixError(f"off-diagonal entry ({i},{j}) is positive")
            if (matrix[i][j] == 0) != (matrix[j][i] == 0):
                raise InvalidCartanMatrixError(f"entries ({i},{j}) and ({j},{i}) violate A_ij=0 <=> A_ji=0")
            if matrix[i][j] != matrix[j][i]:
                raise InvalidCartanMatrixError("only symmetric (simply-laced) Cartan matrices are supported")


class CartanData(BaseModel):
    """Cartan type, rank and matrix, accepted from {"type": "A", "rank": 1}."""

    type: Literal["A", "B", "C", "D", "E", "F", "G"] = Field(..., description="Cartan type label")
    rank: int = Field(..., description="Rank n")

    @field_validator("rank")
    @classmethod
    def validate_rank(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"rank must be positive, got {v}")
        return v

    @model_validator(mode="after")
    def validate_type(self) -> "CartanData":
        cartan_matrix(self.type, self.rank)
        return self

    @property
    def matrix(self) -> CartanMatrix:
        return cartan_matrix(self.type, self.rank)

    @property
    def label(self) -> str:
        return f"{self.type}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "CartanData":
        """Parse a label such as "A1" or "D4"."""
        text = text.strip().upper()
        if len(text) < 2 or not text[1:].isdigit():
            raise InvalidCartanMatrixError(f"cannot parse Cartan label {text!r}")
        return cls(type=text[0], rank=int(text[1:]))
