"""Positive roots, highest root and marks of a simply-laced root system."""
from typing import Dict, List, Tuple

from src.liecore.cartan import CartanMatrix, validate_cartan_matrix

Root = Tuple[int, ...]


def pairing(matrix: CartanMatrix, a: Root, b: Root) -> int:
    """Normalized form (a, b) = sum a_i A_ij b_j on root coordinates."""
    n = len(matrix)
    return sum(a[i] * matrix[i][j] * b[j] for i in range(n) for j in range(n) if a[i] and b[j])


class RootSystem:
    """
    Positive roots as coordinate vectors in the simple-root basis.

    Roots are generated from the simple roots by the simply-laced string rule:
    for a positive root b other than a_i, b + a_i is a root iff (b, a_i) = -1.
    """

    def __init__(self, matrix: CartanMatrix):
        validate_cartan_matrix(matrix)
        self.matrix = matrix
        self.rank = len(matrix)
        self.simple: List[Root] = [
            tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)
        ]
        found = set(self.simple)
        layer = list(self.simple)
        while layer:
            nxt = []
            for beta in layer:
                for i, alpha in enumerate(self.simple):
                    if pairing(matrix, beta, alpha) == -1:
                        gamma = tuple(b + a for b, a in zip(beta, alpha))
                        if gamma not in found:
                            found.add(gamma)
                            nxt.append(gamma)
            layer = nxt
        self.positive: List[Root] = sorted(found, key=lambda r: (sum(r), r))
        self.index: Dict[Root, int] = {r: k for k, r in enumerate(self.positive)}
        self.highest: Root = self.positive[-1]
        self.marks: Tuple[int, ...] = self.highest

    def height(self, root: Root) -> int:
        return sum(root)

    def is_root(self, vector: Root) -> bool:
        """True for nonzero vectors in R = R+ ∪ -R+."""
        if vector in self.index:
            return True
        return tuple(-v for v in vector) in self.index

    def is_positive(self, vector: Root) -> bool:
        return vector in self.index

    def affine_matrix(self) -> CartanMatrix:
        """Untwisted affine Cartan matrix with node 0 prepended."""
        n = self.rank
        theta = self.highest
        row0 = [2] + [-sum(theta[j] * self.matrix[j][i] for j in range(n)) for i in range(n)]
        rows = [row0]
        for i in range(n):
            rows.append([row0[i + 1]] + list(self.matrix[i]))
        return tuple(tuple(r) for r in rows)

    def affine_marks(self) -> Tuple[int, ...]:
        """Marks (1, m_1, ..., m_n) with c1 = h_0 + sum m_i h_i."""
        return (1,) + tuple(self.marks)

    def __len__(self) -> int:
        return len(self.positive)
