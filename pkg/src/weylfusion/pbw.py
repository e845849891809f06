"""Normal-ordered monomials of U(g_tor(<)) applied to a cyclic vector with prescribed U(g_tor(0))-eigenvalues."""
from typing import Dict, Iterable, List, Tuple

import structlog

from src.exactla.scalars import ExactScalar, ONE, ZERO
from src.liecore.algebra import ChevalleyAlgebra
from src.toralg.bracket import bracket_tor
from src.toralg.elements import TorElement
from src.toralg.roots import RootClass, TorRoot, term_class
from src.weylfusion.polytuple import PolyTuple

logger = structlog.get_logger()

Letter = Tuple[int, int, int]
Monomial = Tuple[Letter, ...]
Combination = Dict[Monomial, ExactScalar]
KVector = Tuple[int, ...]


def _accumulate(target: Combination, monomial: Monomial, value: ExactScalar) -> None:
    total = target.get(monomial, ZERO) + value
    if total:
        target[monomial] = total
    else:
        target.pop(monomial, None)


class PBWEngine:
    """
    The universal module U(g_tor(<)) w on which g_tor(>) kills w and h t2^k, c1 t2^k
    act on w by the power sums of a PolyTuple (c2 acts by zero).

    Vectors are combinations of monomials l_1 ... l_k w with l_1 <= ... <= l_k in the
    lowering order: affine height, then affine coordinates, then basis index, then t2-degree.
    Letters act by commuting to the right; results are memoized per (letter, monomial).
    """

    def __init__(self, algebra: ChevalleyAlgebra, pi: PolyTuple):
        self.algebra = algebra
        self.pi = pi
        self._cartan_node = {algebra.cartan(i): i for i in range(1, algebra.rank + 1)}
        self._memo: Dict[Tuple[Letter, Monomial], Combination] = {}
        self._brackets: Dict[Tuple[Letter, Letter], Tuple[List[Tuple[Letter, ExactScalar]], ExactScalar]] = {}
        self._kinds: Dict[Letter, RootClass] = {}
        self._coords: Dict[Letter, KVector] = {}

    # letters

    def kind(self, letter: Letter) -> RootClass:
        cached = self._kinds.get(letter)
        if cached is None:
            cached = term_class(self.algebra, *letter)
            self._kinds[letter] = cached
        return cached

    def root_coords(self, letter: Letter) -> KVector:
        """Affine simple-root coordinates of the root of x t1^r1 (t2 ignored)."""
        cached = self._coords.get(letter)
        if cached is None:
            index, r1, _ = letter
            cached = TorRoot(self.algebra.root_of(index), r1).affine_coordinates(self.algebra.roots)
            self._coords[letter] = cached
        return cached

    def depth_of(self, letter: Letter) -> KVector:
        """eta with the letter lowering the weight by eta."""
        return tuple(-c for c in self.root_coords(letter))

    def order_key(self, letter: Letter) -> Tuple:
        eta = self.depth_of(letter)
        return (sum(eta), eta, letter[0], letter[2], letter[1])

    def monomial_depth(self, monomial: Monomial) -> KVector:
        total = [0] * (self.algebra.rank + 1)
        for letter in monomial:
            for l, c in enumerate(self.depth_of(letter)):
                total[l] += c
        return tuple(total)

    @staticmethod
    def t2_norm(monomial: Monomial) -> int:
        return sum(abs(letter[2]) for letter in monomial)

    def render(self, monomial: Monomial) -> str:
        parts = []
        for index, r1, r2 in monomial:
            text = self.algebra.label(index)
            if r1:
                text += f" t1^{r1}"
            if r2:
                text += f" t2^{r2}"
            parts.append(f"({text})" if (r1 or r2) else text)
        return " ".join(parts + ["w"])

    # eigenvalues on w

    def cartan_value(self, letter: Letter) -> ExactScalar:
        index, _, r2 = letter
        return self.pi.power_sum(self._cartan_node[index], r2)

    def bracket(self, a: Letter, b: Letter) -> Tuple[List[Tuple[Letter, ExactScalar]], ExactScalar]:
        """[a, b] as letters plus the scalar by which its central part acts."""
        key = (a, b)
        cached = self._brackets.get(key)
        if cached is None:
            element = bracket_tor(TorElement.term(self.algebra, *a), TorElement.term(self.algebra, *b))
            letters = [(term, c) for term, c in element.iter_terms()]
            scalar = sum((c * self.pi.central_value(k) for k, c in element.central.items()), ZERO)
            cached = (letters, scalar)
            self._brackets[key] = cached
        return cached

    # action

    def apply_letter(self, letter: Letter, monomial: Monomial) -> Combination:
        key = (letter, monomial)
        cached = self._memo.get(key)
        if cached is None:
            cached = self._compute(letter, monomial)
            self._memo[key] = cached
        return cached

    def _compute(self, letter: Letter, monomial: Monomial) -> Combination:
        kind = self.kind(letter)
        if not monomial:
            if kind is RootClass.LOWERING:
                return {(letter,): ONE}
            if kind is RootClass.RAISING:
                return {}
            value = self.cartan_value(letter)
            return {(): value} if value else {}
        first, rest = monomial[0], monomial[1:]
        if kind is RootClass.LOWERING and self.order_key(letter) <= self.order_key(first):
            return {(letter,) + monomial: ONE}
        # y l rest = l (y rest) + [y, l] rest
        result: Combination = {}
        for moved, c in self.apply_letter(letter, rest).items():
            for image, d in self.apply_letter(first, moved).items():
                _accumulate(result, image, c * d)
        letters, scalar = self.bracket(letter, first)
        for term, c in letters:
            for image, d in self.apply_letter(term, rest).items():
                _accumulate(result, image, c * d)
        if scalar:
            _accumulate(result, rest, scalar)
        return result

    def apply(self, letter: Letter, vector: Combination) -> Combination:
        result: Combination = {}
        for monomial, c in vector.items():
            for image, d in self.apply_letter(letter, monomial).items():
                _accumulate(result, image, c * d)
        return result

    def apply_word(self, letters: Iterable[Letter], vector: Combination) -> Combination:
        """Apply letters right to left, like a product acting on a vector."""
        for letter in reversed(list(letters)):
            vector = self.apply(letter, vector)
        return vector

    @property
    def memo_size(self) -> int:
        return len(self._memo)


def cyclic_vector() -> Combination:
    return {(): ONE}
