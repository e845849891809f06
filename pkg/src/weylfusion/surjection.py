"""W_tor(pi) -> W(lambda_pi, a) for pi_j = (1 - a u)^(n_j): relations on the fused generator and window dimensions."""
from typing import List, Optional

import structlog

from src.errors import NonRationalRootsError, RestrictedShapeError
from src.exactla.scalars import ExactScalar, format_scalar
from src.exactla.sparse import SparseVector
from src.repengine.analysis import highest_weight_vectors, weight_dimensions
from src.repengine.highest_weight import irreducible_aff_truncated
from src.repengine.module import WeightModule
from src.repengine.operators import Operator
from src.toralg.lambda_series import lambda_series
from src.weylfusion.decomposition import rendered_dims
from src.weylfusion.fusion import fusion_W, pullback_shift, record_on_top
from src.weylfusion.models import RelationReport, SurjectionReport
from src.weylfusion.polytuple import PolyTuple
from src.weylfusion.weyl_module import weyl_module_truncated

logger = structlog.get_logger()


def restricted_point(pi: PolyTuple) -> ExactScalar:
    """
    The point a with pi_j = (1 - a u)^(n_j) for every j.

    Raises:
        RestrictedShapeError: If pi has no root or more than one distinct root
    """
    try:
        roots = pi.roots()
    except NonRationalRootsError as e:
        raise RestrictedShapeError(f"{pi.render()} does not split over Q") from e
    if len(roots) != 1:
        raise RestrictedShapeError(f"{pi.render()} has {len(roots)} distinct roots, expected exactly one")
    return next(iter(roots))


def generator_relations(module: WeightModule, pi: PolyTuple, max_degree: int) -> RelationReport:
    """
    Defining relations of w_pi on the top vector of a module over g_aff[t2]:
    h_i v = deg pi_i v, e_i t2^s v = 0 for 0 <= s <= max_degree,
    Lambda+(h_i, r) v = p+_r(h_i) v for 1 <= r <= deg pi_i + 1 and f_i^(deg pi_i + 1) v = 0.
    """
    report = RelationReport()
    v = SparseVector.basis(module.top_index())
    gens = module.generators

    def record(name: str, operators: List[Operator], expected: SparseVector) -> None:
        record_on_top(report, module, name, operators, expected)

    for i in module.nodes:
        degree = pi.degrees[i]
        record(f"h{i} w = {degree} w", [module.operator(gens.h[i])], v.scale(degree))
        record(f"f{i}^{degree + 1} w = 0", [module.operator(gens.f[i])] * (degree + 1), SparseVector())
        for s in range(max_degree + 1):
            record(f"e{i} t2^{s} w = 0", [module.operator(gens.e[i].shift_t2(s))], SparseVector())
        coefficients = pi.p_coefficients(i, 1, degree + 1)
        identity = module.identity_operator()
        for lam in lambda_series(gens.h[i], 1, degree + 1)[1:]:
            operator = lam.evaluate_operator(lambda s, lam=lam: module.operator(lam.symbol_element(s)), identity)
            expected = coefficients[lam.order]
            record(f"Lambda+(h{i}, {lam.order}) w = {format_scalar(expected)} w", [operator], v.scale(expected))
    return report


def surjection_check(
    pi: PolyTuple,
    depth: int,
    height: int,
    degree_bound: Optional[int] = None,
    t2_degree: Optional[int] = None,
) -> SurjectionReport:
    """
    Build W(lambda_pi, a) as a shifted fusion product and check that its generator
    satisfies the relations of w_pi.

    W(lambda_pi, a) is reducible in the window when some weight space is larger than
    that of V_aff(lambda_pi). With t2_degree, the window of W_tor(pi) is built too and
    must dominate W(lambda_pi, a) weight by weight.

    Raises:
        RestrictedShapeError: If pi is not of the form pi_j = (1 - a u)^(n_j)
    """
    point = restricted_point(pi)
    filtered, fused = fusion_W(pi.algebra, pi.degrees, depth, height, degree_bound=degree_bound)
    shifted = pullback_shift(filtered, -point)
    relations = generator_relations(shifted, pi, filtered.degree_bound)

    irreducible = irreducible_aff_truncated(pi.algebra, pi.degrees, depth, height)
    fusion_dims = weight_dimensions(shifted)
    irreducible_dims = weight_dimensions(irreducible)
    reducible = any(d > irreducible_dims.get(w, 0) for w, d in fusion_dims.items())

    weyl_dims = None
    surjective = None
    if t2_degree is not None:
        weyl = weyl_module_truncated(pi, depth, t2_degree, height)
        dims = weight_dimensions(weyl)
        surjective = all(dims.get(w, 0) >= d for w, d in fusion_dims.items())
        weyl_dims = rendered_dims(dims)

    report = SurjectionReport(
        point=format_scalar(point),
        relations=relations,
        fusion_relations=fused,
        sum_rule=filtered.sum_rule_holds(),
        fusion_dims=rendered_dims(fusion_dims),
        irreducible_dims=rendered_dims(irreducible_dims),
        weyl_dims=weyl_dims,
        surjective_in_window=surjective,
        fusion_highest_weight_vectors=len(highest_weight_vectors(shifted)),
        irreducible_highest_weight_vectors=len(highest_weight_vectors(irreducible)),
        reducible=reducible,
    )
    logger.info(
        "surjection_checked",
        pi=pi.render(),
        point=report.point,
        violations=len(relations.violations),
        reducible=reducible,
        fusion_highest_weight_vectors=report.fusion_highest_weight_vectors,
    )
    return report
