"""Chevalley basis, structure constants and the normalized invariant form."""
import itertools
from typing import Dict, List, Optional, Tuple

import structlog
from sympy import Matrix, zeros

from src.errors import AlgebraMismatchError
from src.exactla.scalars import ExactScalar, ZERO
from src.exactla.sparse import SparseVector
from src.liecore.cartan import CartanData
from src.liecore.roots import Root, RootSystem, pairing

logger = structlog.get_logger()

PLUS, MINUS, CARTAN = "+", "-", "h"


def cocycle_sign(matrix, a: Root, b: Root) -> int:
    """
    Frenkel-Kac sign eps(a, b) on the root lattice.

    eps(a_i, a_i) = -1, eps(a_i, a_j) = (-1)^{A_ij} for i < j and 1 for i > j,
    extended bimultiplicatively.
    """
    n = len(matrix)
    exponent = sum(a[i] * b[i] for i in range(n))
    exponent += sum(matrix[i][j] * a[i] * b[j] for i in range(n) for j in range(i + 1, n))
    return -1 if exponent % 2 else 1


class ChevalleyAlgebra:
    """
    Finite simply-laced simple Lie algebra with a Chevalley basis.

    Basis order: x+_a for positive roots a (by height, then coordinates), then x-_a in the
    same order, then h_1..h_n. With E_a the Frenkel-Kac basis, x+_a = E_a and
    x-_a = -E_{-a}, so that [x+_a, x-_a] = h_a.
    """

    def __init__(self, data: CartanData):
        self.data = data
        self.roots = RootSystem(data.matrix)
        self.matrix = data.matrix
        self.rank = data.rank
        self.num_positive = len(self.roots)
        self.dim = 2 * self.num_positive + self.rank
        self._table: Dict[Tuple[int, int], Dict[int, int]] = {}
        self._form: Dict[Tuple[int, int], int] = {}
        self._build_tables()
        logger.debug("algebra_built", type=data.label, dim=self.dim)

    # basis bookkeeping

    def plus(self, root: Root) -> int:
        return self.roots.index[tuple(root)]

    def minus(self, root: Root) -> int:
        return self.num_positive + self.roots.index[tuple(root)]

    def cartan(self, i: int) -> int:
        """Index of h_i for 1 <= i <= n."""
        return 2 * self.num_positive + i - 1

    def kind(self, index: int) -> Tuple[str, Optional[Root]]:
        """("+" | "-" | "h", root or None) of a basis index."""
        if index < self.num_positive:
            return PLUS, self.roots.positive[index]
        if index < 2 * self.num_positive:
            return MINUS, self.roots.positive[index - self.num_positive]
        return CARTAN, None

    def root_of(self, index: int) -> Root:
        """Finite root of a basis element, zero vector for the Cartan part."""
        kind, root = self.kind(index)
        if kind == PLUS:
            return root
        if kind == MINUS:
            return tuple(-c for c in root)
        return tuple(0 for _ in range(self.rank))

    def label(self, index: int) -> str:
        kind, root = self.kind(index)
        if kind == CARTAN:
            return f"h{index - 2 * self.num_positive + 1}"
        coords = "".join(str(c) for c in root)
        return f"x{kind}{coords}"

    def coroot(self, root: Root) -> SparseVector:
        """h_a = sum a_i h_i as a vector in the algebra."""
        return SparseVector({self.cartan(i + 1): c for i, c in enumerate(root) if c})

    # tables

    def _set(self, i: int, j: int, result: Dict[int, int]) -> None:
        result = {k: v for k, v in result.items() if v}
        if result:
            self._table[(i, j)] = result
            self._table[(j, i)] = {k: -v for k, v in result.items()}

    def _build_tables(self) -> None:
        A = self.matrix
        pos = self.roots.positive
        N = self.num_positive
        for a, alpha in enumerate(pos):
            # Cartan action
            for i in range(self.rank):
                weight = sum(A[i][j] * alpha[j] for j in range(self.rank))
                self._set(self.cartan(i + 1), a, {a: weight})
                self._set(self.cartan(i + 1), N + a, {N + a: -weight})
            for b, beta in enumerate(pos):
                eps = cocycle_sign(A, alpha, beta)
                total = tuple(x + y for x, y in zip(alpha, beta))
                if a < b and total in self.roots.index:
                    k = self.roots.index[total]
                    self._set(a, b, {k: eps})
                    self._set(N + a, N + b, {N + k: -eps})
                if a == b:
                    self._set(a, N + a, {self.cartan(i + 1): c for i, c in enumerate(alpha)})
                    continue
                diff = tuple(x - y for x, y in zip(alpha, beta))
                if diff in self.roots.index:
                    self._set(a, N + b, {self.roots.index[diff]: -eps})
                else:
                    neg = tuple(-d for d in diff)
                    if neg in self.roots.index:
                        self._set(a, N + b, {N + self.roots.index[neg]: eps})
            self._form[(a, N + a)] = self._form[(N + a, a)] = 1
        for i in range(self.rank):
            for j in range(self.rank):
                if A[i][j]:
                    self._form[(self.cartan(i + 1), self.cartan(j + 1))] = A[i][j]

    def bracket_basis(self, i: int, j: int) -> Dict[int, int]:
        return self._table.get((i, j), {})

    def form_basis(self, i: int, j: int) -> int:
        return self._form.get((i, j), 0)

    # elements

    def element(self, coeffs: Dict[int, object]) -> "FinElement":
        return FinElement(self, SparseVector(coeffs))

    def basis_element(self, index: int) -> "FinElement":
        return FinElement(self, SparseVector.basis(index))

    def basis(self) -> List["FinElement"]:
        return [self.basis_element(k) for k in range(self.dim)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChevalleyAlgebra):
            return NotImplemented
        return self.data == other.data

    def __hash__(self) -> int:
        return hash(self.data.label)

    def __repr__(self) -> str:
        return f"ChevalleyAlgebra({self.data.label}, dim={self.dim})"


class FinElement:
    """Element of g_fin as a sparse vector in the Chevalley basis."""

    __slots__ = ("algebra", "vector")

    def __init__(self, algebra: ChevalleyAlgebra, vector: SparseVector):
        self.algebra = algebra
        self.vector = vector

    def _check(self, other: "FinElement") -> None:
        if self.algebra != other.algebra:
            raise AlgebraMismatchError(f"{self.algebra!r} and {other.algebra!r}")

    def __add__(self, other: "FinElement") -> "FinElement":
        self._check(other)
        return FinElement(self.algebra, self.vector + other.vector)

    def __sub__(self, other: "FinElement") -> "FinElement":
        self._check(other)
        return FinElement(self.algebra, self.vector - other.vector)

    def scale(self, c: object) -> "FinElement":
        return FinElement(self.algebra, self.vector.scale(c))

    def is_zero(self) -> bool:
        return self.vector.is_zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinElement):
            return NotImplemented
        return self.algebra == other.algebra and self.vector == other.vector

    def __hash__(self) -> int:
        return hash(self.vector)

    def render(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(f"{c}*{self.algebra.label(k)}" for k, c in self.vector.items())

    def __repr__(self) -> str:
        return f"FinElement({self.render()})"


def bracket_vectors(algebra: ChevalleyAlgebra, x: SparseVector, y: SparseVector) -> SparseVector:
    acc: Dict[int, ExactScalar] = {}
    for i, a in x.items():
        for j, b in y.items():
            for k, c in algebra.bracket_basis(i, j).items():
                acc[k] = acc.get(k, ZERO) + a * b * c
    return SparseVector(acc)


def form_vectors(algebra: ChevalleyAlgebra, x: SparseVector, y: SparseVector) -> ExactScalar:
    total = ZERO
    for i, a in x.items():
        for j, b in y.items():
            value = algebra.form_basis(i, j)
            if value:
                total += a * b * value
    return total


def bracket_fin(x: FinElement, y: FinElement) -> FinElement:
    """Lie bracket [x, y] by bilinear extension of the structure constants."""
    x._check(y)
    return FinElement(x.algebra, bracket_vectors(x.algebra, x.vector, y.vector))


def invariant_form(x: FinElement, y: FinElement) -> ExactScalar:
    """Invariant form normalized by <h_theta, h_theta> = 2."""
    x._check(y)
    return form_vectors(x.algebra, x.vector, y.vector)


def build_algebra(data: CartanData) -> ChevalleyAlgebra:
    """Construct the Chevalley algebra of a Cartan type."""
    return ChevalleyAlgebra(data)


def _matrix_images(algebra: ChevalleyAlgebra) -> Dict[int, Matrix]:
    n = algebra.rank
    size = n + 1
    images: Dict[int, Matrix] = {}

    def unit(i: int, j: int) -> Matrix:
        m = zeros(size, size)
        m[i, j] = 1
        return m

    for k, root in enumerate(algebra.roots.positive):
        if sum(root) == 1:
            i = root.index(1)
            images[algebra.plus(root)] = unit(i, i + 1)
            images[algebra.minus(root)] = unit(i + 1, i)
            continue
        for i in range(n):
            if root[i] == 0:
                continue
            beta = tuple(c - (1 if j == i else 0) for j, c in enumerate(root))
            if beta in algebra.roots.index:
                simple = algebra.roots.simple[i]
                eps = cocycle_sign(algebra.matrix, simple, beta)
                xi, xb = images[algebra.plus(simple)], images[algebra.plus(beta)]
                yi, yb = images[algebra.minus(simple)], images[algebra.minus(beta)]
                images[algebra.plus(root)] = eps * (xi * xb - xb * xi)
                images[algebra.minus(root)] = -eps * (yi * yb - yb * yi)
                break
    for i in range(n):
        images[algebra.cartan(i + 1)] = unit(i, i) - unit(i + 1, i + 1)
    return images


def verify_matrix_realization(algebra: ChevalleyAlgebra) -> List[str]:
    """
    Compare structure constants and the form with sl_{n+1} matrices (type A only).

    Returns:
        Descriptions of mismatches; empty when the realization agrees
    """
    if algebra.data.type != "A":
        raise ValueError("matrix realization is only available for type A")
    images = _matrix_images(algebra)

    def image(vector: SparseVector) -> Matrix:
        size = algebra.rank + 1
        total = zeros(size, size)
        for k, c in vector.items():
            total += images[k] * int(c)
        return total

    problems: List[str] = []
    for i, j in itertools.product(range(algebra.dim), repeat=2):
        lhs = image(bracket_vectors(algebra, SparseVector.basis(i), SparseVector.basis(j)))
        rhs = images[i] * images[j] - images[j] * images[i]
        if lhs != rhs:
            problems.append(f"[{algebra.label(i)}, {algebra.label(j)}]")
        if (images[i] * images[j]).trace() != algebra.form_basis(i, j):
            problems.append(f"<{algebra.label(i)}, {algebra.label(j)}>")
    return problems


def simple_pairing(algebra: ChevalleyAlgebra, root: Root, i: int) -> int:
    """alpha(h_i) for a root alpha and 1 <= i <= n."""
    return pairing(algebra.matrix, root, algebra.roots.simple[i - 1])
