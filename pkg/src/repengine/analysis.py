"""Generic analyses of truncated weight modules."""
import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import structlog

from src.errors import DimensionMismatchError, WindowLossError
from src.exactla.linalg import WeightedSpan, kernel_basis, solve_in_span
from src.exactla.scalars import ZERO, to_scalar
from src.exactla.sparse import SparseMatrix, SparseVector
from src.repengine.models import (
    AxiomReport,
    AxiomViolation,
    CharacterTable,
    DecompositionEntry,
    DecompositionTable,
    IntegrabilityReport,
    WeightEntry,
)
from src.repengine.module import TorWeight, WeightModule
from src.repengine.operators import Operator
from src.toralg.bracket import bracket_tor
from src.toralg.elements import TorElement

logger = structlog.get_logger()


@dataclass(frozen=True)
class HighestWeightVector:
    weight: TorWeight
    vector: SparseVector
    exact: bool = True


def act(module: WeightModule, element: TorElement, vector: SparseVector) -> SparseVector:
    """
    Apply an element to a vector of the module.

    Raises:
        WindowLossError: If the result is not determined inside the window
    """
    return module.act(element, vector)


def submodule_closure(
    module: WeightModule,
    seeds: Sequence[SparseVector],
    elements: Optional[Sequence[TorElement]] = None,
) -> List[SparseVector]:
    """
    Echelon basis of the least subspace containing the seeds and stable under the elements.

    Images are truncated to the window. Windows are unions of weight spaces, so the
    truncated image of a vector is still in the submodule it generates.

    Args:
        module: Module to work in
        seeds: Generating vectors
        elements: Acting elements, default the module's closure elements

    Returns:
        Reduced echelon basis of the closure
    """
    operators = [module.operator(e) for e in (elements or module.closure_elements())]
    if any(s.max_index() >= module.dim for s in seeds):
        raise DimensionMismatchError(f"seed index beyond dimension {module.dim}")
    span = WeightedSpan()
    frontier = span.extend(0, seeds)
    rounds = 0
    while frontier:
        rounds += 1
        frontier = span.extend(0, [op.apply(v) for v in frontier for op in operators])
    basis = span.basis(0)
    logger.debug("closure_computed", module=module.descriptor(), dim=len(basis), rounds=rounds)
    return basis


def closure_dimension(module: WeightModule, seeds: Sequence[SparseVector], elements=None) -> int:
    return len(submodule_closure(module, seeds, elements))


def is_proper_closure(module: WeightModule, seeds: Sequence[SparseVector], elements=None) -> bool:
    return closure_dimension(module, seeds, elements) < module.dim


def random_vectors(module: WeightModule, count: int, seed: int, support: int = 3) -> List[SparseVector]:
    """Deterministic non-zero vectors with small integer coefficients."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        size = min(support, module.dim)
        indices = rng.sample(range(module.dim), size)
        entries = {i: rng.choice([-3, -2, -1, 1, 2, 3]) for i in indices}
        out.append(SparseVector(entries))
    return out


def highest_weight_vectors(
    module: WeightModule,
    elements: Optional[Sequence[TorElement]] = None,
) -> List[HighestWeightVector]:
    """
    Basis of the joint kernel of the raising elements, weight by weight.

    A vector is marked inexact when some raising image of its weight space leaves
    the window.
    """
    operators = [module.operator(e) for e in (elements or module.raising_elements())]
    found: List[HighestWeightVector] = []
    for weight in sorted(module.weight_spaces(), key=lambda w: w.sort_key()):
        indices = module.weight_spaces()[weight]
        local = {g: p for p, g in enumerate(indices)}
        rows: List[SparseVector] = []
        exact = True
        for op in operators:
            if any(g in op.lossy for g in indices):
                exact = False
            by_row: Dict[int, Dict[int, object]] = {}
            for g in indices:
                for row, c in op.column(g).items():
                    by_row.setdefault(row, {})[local[g]] = c
            rows.extend(SparseVector(entries) for _, entries in sorted(by_row.items()))
        if rows:
            kernel = kernel_basis(SparseMatrix.from_rows(rows, len(indices)))
        else:
            kernel = [SparseVector.basis(p) for p in range(len(indices))]
        for vector in kernel:
            found.append(HighestWeightVector(weight, SparseVector({indices[p]: c for p, c in vector.items()}), exact))
    return found


def character(module: WeightModule) -> CharacterTable:
    """Weight-space dimensions, ordered from the top."""
    inexact = module.inexact_weights()
    entries = [
        WeightEntry(weight=w.as_list(), dim=len(v), exact=w not in inexact)
        for w, v in sorted(module.weight_spaces().items(), key=lambda item: item[0].sort_key())
    ]
    return CharacterTable(
        module=module.descriptor(),
        weights=entries,
        truncation=module.truncation.model_dump(exclude_none=True),
    )


def _record(report: AxiomReport, module: WeightModule, left: str, right: str, lhs: Operator, rhs: Operator) -> None:
    columns = sorted(lhs.loss_free_columns() & rhs.loss_free_columns())
    report.pairs_checked += 1
    report.columns_checked += len(columns)
    report.columns_skipped += module.dim - len(columns)
    bad = lhs.agrees_with(rhs, columns)
    if bad is not None:
        report.violations.append(AxiomViolation(left=left, right=right, column=bad, label=module.labels[bad]))


def check_module_axiom(module: WeightModule, elements: Optional[Sequence[TorElement]] = None) -> AxiomReport:
    """
    Compare action([a, b]) with [action(a), action(b)] for all generator pairs.

    Only loss-free columns of both sides are compared.
    """
    elements = list(elements or module.generator_set())
    report = AxiomReport(module=module.descriptor())
    for i, a in enumerate(elements):
        for b in elements[i + 1:]:
            try:
                lhs = module.operator(bracket_tor(a, b))
            except WindowLossError:
                report.columns_skipped += module.dim
                continue
            rhs = module.operator(a).commutator(module.operator(b))
            _record(report, module, a.render(), b.render(), lhs, rhs)
    logger.info("module_axiom_checked", module=module.descriptor(), pairs=report.pairs_checked, violations=len(report.violations))
    return report


def check_chevalley_relations(module: WeightModule) -> AxiomReport:
    """
    Chevalley-Serre relations of the generators e_i, f_i, h_i and the d1 relations,
    as operator identities on loss-free columns.
    """
    gens = module.generators
    nodes = module.nodes
    matrix = module.algebra.roots.affine_matrix() if module.affine else None
    offset = 0 if module.affine else 1
    E = {i: module.operator(gens.e[i]) for i in nodes}
    F = {i: module.operator(gens.f[i]) for i in nodes}
    H = {i: module.operator(gens.h[i]) for i in nodes}
    zero = Operator.zero(module.dim)
    report = AxiomReport(module=module.descriptor())

    def a(i: int, j: int) -> int:
        if matrix is not None:
            return matrix[i][j]
        return module.algebra.matrix[i - offset][j - offset]

    for i in nodes:
        for j in nodes:
            _record(report, module, f"[e{i}, f{j}]", f"delta h{i}", E[i].commutator(F[j]), H[i] if i == j else zero)
            _record(report, module, f"[h{i}, e{j}]", f"{a(i, j)} e{j}", H[i].commutator(E[j]), E[j].scale(a(i, j)))
            _record(report, module, f"[h{i}, f{j}]", f"{-a(i, j)} f{j}", H[i].commutator(F[j]), F[j].scale(-a(i, j)))
            if i == j:
                continue
            for name, X in (("e", E), ("f", F)):
                current = X[j]
                for _ in range(1 - a(i, j)):
                    current = X[i].commutator(current)
                _record(report, module, f"ad({name}{i})^{1 - a(i, j)} {name}{j}", "0", current, zero)
    if module.affine:
        D = module.operator(TorElement.d1_element(module.algebra))
        for i in nodes:
            shift = 1 if i == 0 else 0
            _record(report, module, f"[d1, e{i}]", f"{shift} e{i}", D.commutator(E[i]), E[i].scale(shift))
            _record(report, module, f"[d1, f{i}]", f"{-shift} f{i}", D.commutator(F[i]), F[i].scale(-shift))
    logger.info("chevalley_relations_checked", module=module.descriptor(), violations=len(report.violations))
    return report


def root_shift(module: WeightModule, element: TorElement) -> Optional[TorWeight]:
    """Weight change caused by a homogeneous element, None if it is not homogeneous."""
    algebra = module.algebra
    shifts = set()
    for (index, r1, _), _ in element.iter_terms():
        finite = algebra.root_of(index)
        fin = tuple(sum(algebra.matrix[i][j] * finite[j] for j in range(algebra.rank)) for i in range(algebra.rank))
        shifts.add((fin, r1))
    if element.central or element.c2 or element.d1 or element.d2:
        shifts.add((tuple(0 for _ in range(algebra.rank)), 0))
    if len(shifts) != 1:
        return None
    fin, r1 = shifts.pop()
    return TorWeight.make(fin, 0, r1)


def check_grading(module: WeightModule, elements: Optional[Sequence[TorElement]] = None) -> List[str]:
    """Basis vectors whose image under a root element has components of the wrong weight."""
    problems = []
    for element in elements or module.generator_set():
        shift = root_shift(module, element)
        if shift is None:
            continue
        op = module.operator(element)
        for col in range(module.dim):
            expected = module.weights[col] + shift
            for row in op.column(col).support():
                if module.weights[row] != expected:
                    problems.append(f"{element.render()} on {module.labels[col]} hits {module.labels[row]}")
                    break
    return problems


def integrability_witness(module: WeightModule, max_r1: int = 1, t2_degrees: Iterable[int] = (0,)) -> IntegrabilityReport:
    """
    Powers N with (x±_alpha t1^r t2^m)^N v = 0 for every basis vector v.

    N must not exceed max |mu(h_alpha) + r mu(c1)| + 1 over the window; chains that
    leave the window are counted as inconclusive.
    """
    algebra = module.algebra
    report = IntegrabilityReport(module=module.descriptor())
    r_values = range(-max_r1, max_r1 + 1) if module.affine else (0,)
    for root in algebra.roots.positive:
        for r1 in r_values:
            coroot = [sum(c * w.fin[i] for i, c in enumerate(root)) + r1 * w.c1 for w in module.weights]
            bound = int(max((abs(v) for v in coroot), default=ZERO)) + 1
            for r2 in t2_degrees:
                for index, sign in ((algebra.plus(root), 1), (algebra.minus(root), -1)):
                    try:
                        op = module.operator(TorElement.term(algebra, index, sign * r1, r2))
                    except WindowLossError:
                        continue
                    for col in range(module.dim):
                        vector, power = SparseVector.basis(col), 0
                        while not vector.is_zero() and power <= bound:
                            vector, hit = op.apply_tracked(vector)
                            power += 1
                            if hit:
                                report.inconclusive += 1
                                break
                        else:
                            if vector.is_zero():
                                report.max_power = max(report.max_power, power)
                            else:
                                report.violations.append(f"{algebra.label(index)} t1^{sign * r1} t2^{r2} on {module.labels[col]}")
    logger.info("integrability_checked", module=module.descriptor(), max_power=report.max_power, inconclusive=report.inconclusive)
    return report


def _in_q_plus(module: WeightModule, top: TorWeight, weight: TorWeight) -> bool:
    """top - weight is a non-negative integer combination of simple roots."""
    algebra = module.algebra
    diff = top - weight
    depth = -diff.d1 if module.affine else ZERO
    if depth < 0 or depth != int(depth) or diff.c1 != 0:
        return False
    theta_fin = [sum(algebra.matrix[i][j] * algebra.roots.highest[j] for j in range(algebra.rank)) for i in range(algebra.rank)]
    target = SparseVector({i: diff.fin[i] + depth * theta_fin[i] for i in range(algebra.rank)})
    columns = [SparseVector({i: algebra.matrix[i][j] for i in range(algebra.rank)}) for j in range(algebra.rank)]
    (solution,) = solve_in_span(columns, [target], algebra.rank)
    if solution is None:
        return False
    return all(c >= 0 and c == int(c) for _, c in solution.items())


def _in_p_plus(module: WeightModule, top: TorWeight, weight: TorWeight) -> bool:
    """top - weight is dominant integral."""
    diff = top - weight
    values = list(diff.affine_coords(module.algebra)) if module.affine else list(diff.fin)
    return all(v >= 0 and v == int(v) for v in values)


def isotypic_decomposition(module: WeightModule, top: Optional[TorWeight] = None) -> DecompositionTable:
    """
    Multiplicity of each highest weight among the highest-weight vectors of the window.

    With a top weight, also reports constituents outside top - Q+ and outside top - P+.
    """
    counts: Dict[TorWeight, List[int]] = {}
    for hw in highest_weight_vectors(module):
        entry = counts.setdefault(hw.weight, [0, 1])
        entry[0] += 1
        entry[1] = entry[1] and int(hw.exact)
    entries = [
        DecompositionEntry(weight=w.as_list(), multiplicity=m, exact=bool(exact))
        for w, (m, exact) in sorted(counts.items(), key=lambda item: item[0].sort_key())
    ]
    table = DecompositionTable(module=module.descriptor(), entries=entries)
    if top is not None:
        table.top_multiplicity = counts.get(top, [0, 1])[0]
        for weight in counts:
            if not _in_q_plus(module, top, weight):
                table.cone_violations.append(f"Q+: {weight.render()}")
            if not _in_p_plus(module, top, weight):
                table.cone_violations.append(f"P+: {weight.render()}")
    return table


def weight_dimensions(module: WeightModule) -> Dict[TorWeight, int]:
    return {w: len(v) for w, v in module.weight_spaces().items()}


def scalar_on(module: WeightModule, element: TorElement, index: int) -> object:
    """Eigenvalue of an element on a basis vector, None if the vector is not an eigenvector."""
    image = module.operator(element).column(index)
    extra = [i for i in image.support() if i != index]
    if extra:
        return None
    return image[index] if index in image.support() else to_scalar(0)
