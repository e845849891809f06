"""
Window comparisons for Weyl modules: g_aff-decomposition, factorization over the
roots of pi, current against full presentations and the irreducibility criterion.
"""
from typing import Dict

import structlog

from src.exactla.scalars import format_scalar, to_scalar
from src.liecore.algebra import ChevalleyAlgebra
from src.repengine.analysis import highest_weight_vectors, isotypic_decomposition, scalar_on, weight_dimensions
from src.repengine.highest_weight import fundamental_coords, irreducible_aff_truncated
from src.repengine.models import DecompositionTable
from src.repengine.module import TorWeight, WeightModule
from src.repengine.tensor import TensorModule
from src.weylfusion.models import DimensionComparison, FactorizationReport, IrreducibilityReport
from src.weylfusion.polytuple import PolyTuple
from src.weylfusion.weyl_module import WeylModule, weyl_module_truncated

logger = structlog.get_logger()


def rendered_dims(dims: Dict[TorWeight, int]) -> Dict[str, int]:
    return {w.render(): d for w, d in sorted(dims.items(), key=lambda item: item[0].sort_key()) if d}


def compare_dimensions(left: WeightModule, right: WeightModule) -> DimensionComparison:
    """Weight-space dimensions of two modules, with the first weight where they differ."""
    left_dims = weight_dimensions(left)
    right_dims = weight_dimensions(right)
    first = None
    for weight in sorted(set(left_dims) | set(right_dims), key=lambda w: w.sort_key()):
        a, b = left_dims.get(weight, 0), right_dims.get(weight, 0)
        if a != b:
            first = f"{weight.render()}: {a} != {b}"
            break
    return DimensionComparison(
        left=left.descriptor(),
        right=right.descriptor(),
        equal=first is None,
        first_discrepancy=first,
        left_dims=rendered_dims(left_dims),
        right_dims=rendered_dims(right_dims),
    )


def aff_decomposition(module: WeylModule) -> DecompositionTable:
    """
    Multiplicities m(mu) of V_aff(mu) in the window of W_tor(pi).

    Highest weights outside lambda_pi - Q+ and outside lambda_pi - P+ are both reported.
    """
    table = isotypic_decomposition(module, top=module.pi.top_weight())
    logger.info(
        "aff_decomposition",
        module=module.descriptor(),
        constituents=len(table.entries),
        top_multiplicity=table.top_multiplicity,
    )
    return table


def factorization_check(pi: PolyTuple, depth: int, t2_degree: int, height: int) -> FactorizationReport:
    """
    Compare W_tor(pi) with the tensor product of W_tor(pi^(a)) over the distinct roots a.

    Besides the weight dimensions, h_i t2^k (1 <= k <= K) must act on the tensor top by
    the power sums of pi.

    Raises:
        NonRationalRootsError: If some pi_i does not split over Q
    """
    whole = weyl_module_truncated(pi, depth, t2_degree, height)
    factors = pi.factors()
    points = [format_scalar(a) for a, _ in factors]
    if not factors:
        comparison = compare_dimensions(whole, whole)
        return FactorizationReport(points=points, comparison=comparison, eigenvalues_match=True)

    parts = [weyl_module_truncated(part, depth, t2_degree, height) for _, part in factors]
    product = TensorModule(parts, None, depth, height)
    comparison = compare_dimensions(whole, product)

    top = product.top_index()
    gens = product.generators
    matches = True
    for i in product.nodes:
        for k in range(1, t2_degree + 1):
            if scalar_on(product, gens.h[i].shift_t2(k), top) != pi.power_sum(i, k):
                matches = False
    logger.info(
        "factorization_checked",
        pi=pi.render(),
        points=points,
        equal=comparison.equal,
        eigenvalues_match=matches,
    )
    return FactorizationReport(points=points, comparison=comparison, eigenvalues_match=matches)


def current_full_agreement(pi: PolyTuple, depth: int, t2_degree: int, height: int) -> DimensionComparison:
    """Build W_tor(pi) with t2-degrees in [0, K] and in [-K, K] and compare their windows."""
    current = weyl_module_truncated(pi, depth, t2_degree, height, variant="current")
    full = weyl_module_truncated(pi, depth, t2_degree, height, variant="full")
    return compare_dimensions(current, full)


def irred_condition(node: int, algebra: ChevalleyAlgebra) -> bool:
    """i = 0 or m_i = 1, where theta = sum m_i alpha_i."""
    if not 0 <= node <= algebra.rank:
        raise ValueError(f"node {node} out of range 0..{algebra.rank}")
    return node == 0 or algebra.roots.marks[node - 1] == 1


def irreducibility_check(
    algebra: ChevalleyAlgebra,
    node: int,
    point: object,
    depth: int,
    t2_degree: int,
    height: int,
) -> IrreducibilityReport:
    """W_tor(pi_{i,a}) against V_tor(omega_i, a): weight dimensions and highest-weight vectors."""
    pi = PolyTuple.fundamental(algebra, node, point)
    weyl = weyl_module_truncated(pi, depth, t2_degree, height)
    evaluation = TensorModule(
        [irreducible_aff_truncated(algebra, fundamental_coords(algebra, node), depth, height)],
        [point],
        depth,
        height,
    )
    comparison = compare_dimensions(weyl, evaluation)
    count = len(highest_weight_vectors(weyl))
    report = IrreducibilityReport(
        node=node,
        point=format_scalar(to_scalar(point)),
        condition_satisfied=irred_condition(node, algebra),
        comparison=comparison,
        highest_weight_vectors=count,
    )
    logger.info(
        "irreducibility_checked",
        node=node,
        point=report.point,
        equal=comparison.equal,
        highest_weight_vectors=count,
    )
    return report
