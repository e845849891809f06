"""The toroidal bracket and the affine invariant form."""
from typing import Dict

from src.errors import AlgebraMismatchError
from src.exactla.scalars import ExactScalar, ZERO
from src.toralg.elements import TermKey, TorElement


def _degree_part(element: TorElement, which: int) -> TorElement:
    """[d1, e] for which=1, [d2, e] for which=2."""
    terms = {}
    for (k, r1, r2), c in element.terms.items():
        degree = r1 if which == 1 else r2
        if degree:
            terms[(k, r1, r2)] = degree * c
    central = {}
    if which == 2:
        central = {k: k * c for k, c in element.central.items() if k}
    return TorElement(element.algebra, terms, central)


def bracket_tor(a: TorElement, b: TorElement) -> TorElement:
    """
    Bracket in g_tor.

    [x t1^r t2^p, y t1^m t2^q] = [x,y] t1^(r+m) t2^(p+q)
        + r δ(r,-m) <x,y> c1 t2^(p+q) + p δ(p,-q) δ(r,-m) <x,y> c2.
    c1 t2^k and c2 are central up to the derivations: [d1, .] is the t1-degree and
    [d2, .] the t2-degree, so [d2, c1 t2^k] = k c1 t2^k.

    Raises:
        AlgebraMismatchError: If the elements belong to different algebras
    """
    if a.algebra != b.algebra:
        raise AlgebraMismatchError(f"{a.algebra!r} and {b.algebra!r}")
    algebra = a.algebra
    terms: Dict[TermKey, ExactScalar] = {}
    central: Dict[int, ExactScalar] = {}
    c2 = ZERO
    for (i, r1, p), u in a.terms.items():
        for (j, m1, q), v in b.terms.items():
            coeff = u * v
            for k, s in algebra.bracket_basis(i, j).items():
                key = (k, r1 + m1, p + q)
                terms[key] = terms.get(key, ZERO) + coeff * s
            if r1 + m1 == 0:
                form = algebra.form_basis(i, j)
                if form:
                    if r1:
                        central[p + q] = central.get(p + q, ZERO) + r1 * form * coeff
                    if p + q == 0 and p:
                        c2 += p * form * coeff
    result = TorElement(algebra, terms, central, c2)
    if a.d1:
        result = result + _degree_part(b, 1).scale(a.d1)
    if b.d1:
        result = result - _degree_part(a, 1).scale(b.d1)
    if a.d2:
        result = result + _degree_part(b, 2).scale(a.d2)
    if b.d2:
        result = result - _degree_part(a, 2).scale(b.d2)
    return result


def affine_form(a: TorElement, b: TorElement) -> ExactScalar:
    """
    Invariant form on g^e_aff: <x t1^r, y t1^m> = δ(r,-m) <x,y>, <c1, d1> = 1.

    Raises:
        ValueError: If an argument has t2, c2 or d2 content
    """
    if a.algebra != b.algebra:
        raise AlgebraMismatchError(f"{a.algebra!r} and {b.algebra!r}")
    if not (a.in_affine_part() and b.in_affine_part()):
        raise ValueError("the affine form is defined on g^e_aff only")
    algebra = a.algebra
    total = ZERO
    for (i, r1, _), u in a.terms.items():
        for (j, m1, _), v in b.terms.items():
            if r1 + m1 == 0:
                total += u * v * algebra.form_basis(i, j)
    total += a.central.get(0, ZERO) * b.d1 + a.d1 * b.central.get(0, ZERO)
    return total
