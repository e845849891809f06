"""Sparse elements of the toroidal algebra and the affine Chevalley generators."""
from typing import Dict, Iterator, Mapping, Optional, Tuple

from src.errors import AlgebraMismatchError
from src.exactla.scalars import ExactScalar, ZERO, format_scalar, to_scalar
from src.liecore.algebra import ChevalleyAlgebra, FinElement

TermKey = Tuple[int, int, int]


def _clean(mapping: Mapping) -> Dict:
    out = {}
    for k, v in mapping.items():
        s = to_scalar(v)
        if s != 0:
            out[k] = s
    return out


class TorElement:
    """
    Element of g_fin ⊗ C[t1^±, t2^±] ⊕ C[t2^±] c1 ⊕ C c2 ⊕ C d1 ⊕ C d2.

    terms maps (fin basis index, r1, r2) to the coefficient of x t1^r1 t2^r2 and
    central maps k to the coefficient of c1 t2^k.
    """

    __slots__ = ("algebra", "terms", "central", "c2", "d1", "d2", "_hash")

    def __init__(
        self,
        algebra: ChevalleyAlgebra,
        terms: Optional[Mapping[TermKey, object]] = None,
        central: Optional[Mapping[int, object]] = None,
        c2: object = 0,
        d1: object = 0,
        d2: object = 0,
    ):
        self.algebra = algebra
        self.terms: Dict[TermKey, ExactScalar] = _clean(terms or {})
        self.central: Dict[int, ExactScalar] = _clean(central or {})
        self.c2 = to_scalar(c2)
        self.d1 = to_scalar(d1)
        self.d2 = to_scalar(d2)
        self._hash: Optional[int] = None

    # constructors

    @classmethod
    def zero(cls, algebra: ChevalleyAlgebra) -> "TorElement":
        return cls(algebra)

    @classmethod
    def term(cls, algebra: ChevalleyAlgebra, index: int, r1: int = 0, r2: int = 0, coeff: object = 1) -> "TorElement":
        return cls(algebra, {(index, r1, r2): coeff})

    @classmethod
    def from_fin(cls, x: FinElement, r1: int = 0, r2: int = 0) -> "TorElement":
        return cls(x.algebra, {(k, r1, r2): c for k, c in x.vector.items()})

    @classmethod
    def c1(cls, algebra: ChevalleyAlgebra, k: int = 0, coeff: object = 1) -> "TorElement":
        return cls(algebra, central={k: coeff})

    @classmethod
    def c2_element(cls, algebra: ChevalleyAlgebra) -> "TorElement":
        return cls(algebra, c2=1)

    @classmethod
    def d1_element(cls, algebra: ChevalleyAlgebra) -> "TorElement":
        return cls(algebra, d1=1)

    @classmethod
    def d2_element(cls, algebra: ChevalleyAlgebra) -> "TorElement":
        return cls(algebra, d2=1)

    # arithmetic

    def _check(self, other: "TorElement") -> None:
        if self.algebra != other.algebra:
            raise AlgebraMismatchError(f"{self.algebra!r} and {other.algebra!r}")

    def __add__(self, other: "TorElement") -> "TorElement":
        self._check(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, ZERO) + v
        central = dict(self.central)
        for k, v in other.central.items():
            central[k] = central.get(k, ZERO) + v
        return TorElement(
            self.algebra, terms, central,
            self.c2 + other.c2, self.d1 + other.d1, self.d2 + other.d2,
        )

    def scale(self, c: object) -> "TorElement":
        s = to_scalar(c)
        return TorElement(
            self.algebra,
            {k: s * v for k, v in self.terms.items()},
            {k: s * v for k, v in self.central.items()},
            s * self.c2, s * self.d1, s * self.d2,
        )

    def __neg__(self) -> "TorElement":
        return self.scale(-1)

    def __sub__(self, other: "TorElement") -> "TorElement":
        return self + (-other)

    def shift_t2(self, k: int) -> "TorElement":
        """Multiply the loop part by t2^k; c2, d1 and d2 must be absent."""
        if self.c2 or self.d1 or self.d2:
            raise ValueError("only loop and c1 parts can be shifted in t2")
        return TorElement(
            self.algebra,
            {(i, r1, r2 + k): v for (i, r1, r2), v in self.terms.items()},
            {j + k: v for j, v in self.central.items()},
        )

    def is_zero(self) -> bool:
        return not (self.terms or self.central or self.c2 or self.d1 or self.d2)

    def iter_terms(self) -> Iterator[Tuple[TermKey, ExactScalar]]:
        return iter(sorted(self.terms.items()))

    def t2_degrees(self) -> set:
        return {r2 for (_, _, r2) in self.terms} | set(self.central)

    def in_affine_part(self) -> bool:
        """True for elements of g^e_aff (no t2, c2 or d2 content)."""
        return (
            all(r2 == 0 for (_, _, r2) in self.terms)
            and all(k == 0 for k in self.central)
            and self.c2 == 0
            and self.d2 == 0
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TorElement):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.terms == other.terms
            and self.central == other.central
            and (self.c2, self.d1, self.d2) == (other.c2, other.d1, other.d2)
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((
                frozenset(self.terms.items()), frozenset(self.central.items()),
                self.c2, self.d1, self.d2,
            ))
        return self._hash

    def render(self) -> str:
        parts = []
        for (k, r1, r2), c in self.iter_terms():
            monomial = self.algebra.label(k)
            if r1:
                monomial += f" t1^{r1}"
            if r2:
                monomial += f" t2^{r2}"
            parts.append(f"{format_scalar(c)}*{monomial}")
        for k, c in sorted(self.central.items()):
            parts.append(f"{format_scalar(c)}*c1" + (f" t2^{k}" if k else ""))
        for name in ("c2", "d1", "d2"):
            value = getattr(self, name)
            if value:
                parts.append(f"{format_scalar(value)}*{name}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"TorElement({self.render()})"


class AffineGenerators:
    """
    Chevalley generators e_i, f_i, h_i (i = 0..n) of the affine algebra.

    e_0 = x-_theta t1, f_0 = x+_theta t1^-1 and h_0 = c1 - h_theta.
    """

    def __init__(self, algebra: ChevalleyAlgebra):
        self.algebra = algebra
        theta = algebra.roots.highest
        self.nodes = algebra.rank + 1
        self.e = [TorElement.term(algebra, algebra.minus(theta), 1, 0)]
        self.f = [TorElement.term(algebra, algebra.plus(theta), -1, 0)]
        h_theta = {(algebra.cartan(i + 1), 0, 0): -m for i, m in enumerate(algebra.roots.marks)}
        self.h = [TorElement(algebra, h_theta, {0: 1})]
        for i in range(1, algebra.rank + 1):
            simple = algebra.roots.simple[i - 1]
            self.e.append(TorElement.term(algebra, algebra.plus(simple)))
            self.f.append(TorElement.term(algebra, algebra.minus(simple)))
            self.h.append(TorElement.term(algebra, algebra.cartan(i)))

    def raising(self, affine: bool = True):
        return self.e if affine else self.e[1:]

    def lowering(self, affine: bool = True):
        return self.f if affine else self.f[1:]

    def h_theta(self) -> TorElement:
        return TorElement(
            self.algebra,
            {(self.algebra.cartan(i + 1), 0, 0): m for i, m in enumerate(self.algebra.roots.marks)},
        )

    def cartan_element(self, coords: Mapping[int, object], c1: object = 0, k: int = 0) -> TorElement:
        """sum_i coords[i] h_i t2^k (1 <= i <= n) + c1 * c1 t2^k."""
        return TorElement(
            self.algebra,
            {(self.algebra.cartan(i), 0, k): v for i, v in coords.items()},
            {k: c1},
        )
