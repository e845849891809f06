"""Named checks: each validates its parameters, runs one identity or criterion and returns a CheckReport."""
import itertools
import json
import random
import re
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple, Type

import structlog
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.config.settings import compute_defaults
from src.errors import InvalidParamsError, UnknownCheckError
from src.exactla.linalg import span_rank
from src.exactla.polynomials import linear_factor, parse_polynomial_list, series_product
from src.exactla.scalars import format_scalar, scalar_power, to_scalar
from src.exactla.sparse import SparseVector
from src.harness.models import CheckReport, Verdict
from src.liecore.algebra import ChevalleyAlgebra, build_algebra
from src.liecore.cartan import CartanData
from src.liecore.weights import FinWeight
from src.repengine.analysis import (
    check_chevalley_relations,
    check_module_axiom,
    closure_dimension,
    highest_weight_vectors,
    random_vectors,
    submodule_closure,
    weight_dimensions,
)
from src.repengine.example import NAMES, W0, example_indecomposable_sl2
from src.repengine.highest_weight import fundamental_coords, irreducible_aff_truncated, irreducible_fin
from src.repengine.loop import LoopModuleSpec, loop_irreducibility, loop_module, period_generators
from src.repengine.tensor import evaluation_tensor, tensor_irreducibility_condition, tensor_product
from src.toralg.bracket import affine_form, bracket_tor
from src.toralg.elements import TorElement
from src.toralg.garland import garland_residual, garland_pair
from src.toralg.lambda_series import exp_expansion_oracle, lambda_series
from src.toralg.roots import TorRoot
from src.weylfusion.decomposition import (
    aff_decomposition,
    current_full_agreement,
    factorization_check,
    irreducibility_check,
)
from src.weylfusion.fusion import fusion_product
from src.weylfusion.polytuple import PolyTuple
from src.weylfusion.surjection import surjection_check
from src.weylfusion.weyl_module import weyl_module_truncated

logger = structlog.get_logger()

Window = Tuple[int, int, int]


@dataclass
class Outcome:
    verdict: Verdict
    witness: Optional[str] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def tally(cls, failures: List[str], inconclusive: int, details: Optional[Dict[str, Any]] = None) -> "Outcome":
        """fail on the first failure, else inconclusive-window if anything left the window, else pass."""
        details = dict(details or {})
        details["inconclusive"] = inconclusive
        if failures:
            details["failures"] = len(failures)
            return cls("fail", failures[0], details)
        if inconclusive:
            return cls("inconclusive-window", None, details)
        return cls("pass", None, details)


class CheckParams(BaseModel):
    model_config = ConfigDict(extra="forbid")


@dataclass(frozen=True)
class RegisteredCheck:
    name: str
    params: Type[CheckParams]
    run: Callable[[Any], Outcome]
    description: str


REGISTRY: Dict[str, RegisteredCheck] = {}


def register(name: str, params: Type[CheckParams]):
    def wrap(func: Callable[[Any], Outcome]) -> Callable[[Any], Outcome]:
        REGISTRY[name] = RegisteredCheck(name, params, func, (func.__doc__ or "").strip().splitlines()[0])
        return func

    return wrap


def algebra_of(label: str) -> ChevalleyAlgebra:
    return build_algebra(CartanData.parse(label))


def random_element(algebra: ChevalleyAlgebra, rng: random.Random, affine_only: bool = False, terms: int = 3) -> TorElement:
    """Sparse element with small integer coefficients and degrees in [-2, 2]."""
    coeffs = [-2, -1, 1, 2, 3]
    entries = {}
    for _ in range(terms):
        r2 = 0 if affine_only else rng.randint(-2, 2)
        entries[(rng.randrange(algebra.dim), rng.randint(-2, 2), r2)] = rng.choice(coeffs)
    central = {0 if affine_only else rng.randint(-2, 2): rng.choice(coeffs)} if rng.random() < 0.5 else {}
    c2 = 0 if affine_only or rng.random() < 0.5 else rng.choice(coeffs)
    d1 = rng.choice([0, 0, 1, -1])
    d2 = 0 if affine_only else rng.choice([0, 0, 1, -1])
    return TorElement(algebra, entries, central, c2, d1, d2)


# Lie algebra identities


class JacobiParams(CheckParams):
    types: List[str] = Field(default_factory=lambda: ["A1", "A2"])
    trials: int = Field(default_factory=lambda: compute_defaults.jacobi_trials, ge=1)
    seed: int = Field(default_factory=lambda: compute_defaults.seed)


@register("jacobi", JacobiParams)
def check_jacobi(params: JacobiParams) -> Outcome:
    """Antisymmetry and the Jacobi identity of the toroidal bracket on seeded random elements."""
    failures: List[str] = []
    for label in params.types:
        algebra = algebra_of(label)
        rng = random.Random(params.seed)
        for _ in range(params.trials):
            a, b, c = (random_element(algebra, rng) for _ in range(3))
            if not (bracket_tor(a, b) + bracket_tor(b, a)).is_zero():
                failures.append(f"[a,b] + [b,a] != 0 for a = {a.render()}, b = {b.render()}")
            cyclic = bracket_tor(a, bracket_tor(b, c)) + bracket_tor(b, bracket_tor(c, a)) + bracket_tor(c, bracket_tor(a, b))
            if not cyclic.is_zero():
                failures.append(f"Jacobi sum = {cyclic.render()} for a = {a.render()}, b = {b.render()}, c = {c.render()}")
    return Outcome.tally(failures, 0, {"triples": params.trials * len(params.types)})


class FormParams(CheckParams):
    types: List[str] = Field(default_factory=lambda: ["A1", "A2"])
    trials: int = Field(200, ge=1)
    seed: int = Field(default_factory=lambda: compute_defaults.seed)


@register("form-invariance", FormParams)
def check_form_invariance(params: FormParams) -> Outcome:
    """Symmetry and invariance of the affine form, including the pairing of c1 with d1."""
    failures: List[str] = []
    for label in params.types:
        algebra = algebra_of(label)
        rng = random.Random(params.seed)
        for _ in range(params.trials):
            a, b, c = (random_element(algebra, rng, affine_only=True) for _ in range(3))
            if affine_form(a, b) != affine_form(b, a):
                failures.append(f"<a,b> != <b,a> for a = {a.render()}, b = {b.render()}")
            left, right = affine_form(bracket_tor(a, b), c), affine_form(a, bracket_tor(b, c))
            if left != right:
                failures.append(
                    f"<[a,b],c> = {format_scalar(left)} != {format_scalar(right)} = <a,[b,c]> "
                    f"for a = {a.render()}, b = {b.render()}, c = {c.render()}"
                )
    return Outcome.tally(failures, 0, {"triples": params.trials * len(params.types)})


class CentralParams(CheckParams):
    point: str = "2"
    depth: int = Field(default_factory=lambda: compute_defaults.depth, ge=0)
    height: int = Field(default_factory=lambda: compute_defaults.height, ge=0)
    window: int = Field(default_factory=lambda: compute_defaults.loop_window, ge=1)


@register("c1-identity", CentralParams)
def check_c1_identity(params: CentralParams) -> Outcome:
    """c1 = h0 + h_theta as operators on V_tor(omega_0, a) and on the indecomposable sl2 example."""
    algebra = algebra_of("A1")
    modules = [
        evaluation_tensor(
            [irreducible_aff_truncated(algebra, fundamental_coords(algebra, 0), params.depth, params.height)],
            [params.point],
            params.depth,
            params.height,
        ),
        example_indecomposable_sl2(params.window, algebra),
    ]
    failures = []
    columns = 0
    for module in modules:
        gens = module.generators
        lhs = module.operator(TorElement.c1(algebra))
        rhs = module.operator(gens.h[0]) + module.operator(gens.h_theta())
        bad = lhs.agrees_with(rhs)
        columns += module.dim
        if bad is not None:
            failures.append(f"{module.descriptor()}: c1 != h0 + h_theta on {module.labels[bad]}")
    return Outcome.tally(failures, 0, {"modules": [m.descriptor() for m in modules], "columns": columns})


class NewtonParams(CheckParams):
    order: int = Field(6, ge=1)


@register("lambda-newton", NewtonParams)
def check_lambda_newton(params: NewtonParams) -> Outcome:
    """Lambda series from the Newton recursion against the truncated exponential."""
    algebra = algebra_of("A1")
    h = TorElement.term(algebra, algebra.cartan(1))
    oracle = exp_expansion_oracle(params.order)
    failures = []
    for sign in (1, -1):
        for lam in lambda_series(h, sign, params.order):
            if lam.poly != oracle[lam.order]:
                failures.append(f"Lambda{'+' if sign > 0 else '-'}(h, {lam.order}) = {lam.render()} != {oracle[lam.order]}")
    details = {"coefficients": [lam.render() for lam in lambda_series(h, 1, min(params.order, 3))]}
    return Outcome.tally(failures, 0, details)


_FUNDAMENTAL = re.compile(r"^\s*(?:ω|omega_?|w)?\s*(\d+)\s*$")
_EVALUATION = re.compile(r"^\s*V_tor\(\s*(?P<weight>[^,]+?)\s*,\s*(?P<point>[^)]+?)\s*\)\s*$")
_SUBSCRIPTS = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")


def fundamental_node(value: Any) -> int:
    """Node i of a fundamental weight written as i, "ω1", "omega_1" or "w1"."""
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    match = _FUNDAMENTAL.match(str(value).translate(_SUBSCRIPTS))
    if match is None:
        raise ValueError(f"expected a fundamental weight such as omega_1, got {value!r}")
    return int(match.group(1))


def parse_sign(value: Any) -> int:
    if value in ("+", 1, "1", "+1"):
        return 1
    if value in ("-", -1, "-1"):
        return -1
    raise ValueError(f"sign must be + or -, got {value!r}")


def fold_scalars(data: Any, folds: Dict[str, Tuple[str, Callable[[Any], Any]]]) -> Any:
    """Turn single-case keys into one-element lists of their list-valued fields."""
    if not isinstance(data, dict):
        return data
    data = dict(data)
    for single, (plural, convert) in folds.items():
        if single not in data:
            continue
        if plural in data:
            raise ValueError(f"give either {single} or {plural}, not both")
        data[plural] = [convert(data.pop(single))]
    return data


class GarlandParams(CheckParams):
    type: str = "A1"
    points: List[str] = Field(default_factory=lambda: ["1", "2", "-3"])
    s_values: List[int] = Field(default_factory=lambda: [1, 2, 3])
    signs: List[int] = Field(default_factory=lambda: [1, -1])
    r1_values: List[int] = Field(default_factory=lambda: [0, 1], description="beta = alpha_1 + r1 delta_1")
    node: Optional[int] = Field(None, description="omega_node of the module; only the last node is supported")

    @model_validator(mode="before")
    @classmethod
    def fold_single_case(cls, data: Any) -> Any:
        """Accept s, sign, point and module = "V_tor(omega_n, a)" for one case."""
        if isinstance(data, dict) and "module" in data:
            data = dict(data)
            match = _EVALUATION.match(str(data.pop("module")))
            if match is None:
                raise ValueError("module must look like V_tor(omega_n, a)")
            data["node"] = fundamental_node(match.group("weight"))
            data["point"] = match.group("point")
        return fold_scalars(data, {"s": ("s_values", int), "sign": ("signs", parse_sign), "point": ("points", str)})

    @field_validator("signs", mode="before")
    @classmethod
    def validate_signs(cls, v: Any) -> Any:
        return [parse_sign(s) for s in v]

    @model_validator(mode="after")
    def validate_node(self) -> "GarlandParams":
        if self.node is None:
            return self
        rank = CartanData.parse(self.type).rank
        if self.node != rank:
            raise ValueError(f"Garland identities are checked on V_tor(omega_{rank}, a), got omega_{self.node}")
        return self


@register("garland", GarlandParams)
def check_garland(params: GarlandParams) -> Outcome:
    """Garland identities on the highest vector of V_tor(omega_n, a), both divided-power forms."""
    algebra = algebra_of(params.type)
    node = algebra.rank
    root = algebra.roots.highest
    failures, inconclusive, checked = [], 0, 0
    for r1 in params.r1_values:
        for s in params.s_values:
            depth = (s + 1) * r1
            height = (s + 1) * (1 + 2 * r1) * len(root)
            factor = irreducible_aff_truncated(algebra, fundamental_coords(algebra, node), depth, height)
            for point in params.points:
                module = evaluation_tensor([factor], [point], depth, height)
                top = SparseVector.basis(module.top_index())
                for sign in params.signs:
                    for variant in (False, True):
                        identity = garland_pair(algebra, TorRoot(root, r1), s, sign, degree_variant=variant)
                        residual, lossy = garland_residual(identity, module, top)
                        checked += 1
                        if residual.is_zero():
                            continue
                        if lossy:
                            inconclusive += 1
                        else:
                            failures.append(f"a = {point}: {identity.render()}")
    return Outcome.tally(failures, inconclusive, {"identities": checked})


class EigCase(BaseModel):
    nodes: List[int] = Field(..., description="lambda_j = omega_(nodes[j])")
    points: List[str]


class EigParams(CheckParams):
    cases: List[EigCase] = Field(
        default_factory=lambda: [
            EigCase(nodes=[0, 0], points=["1", "2"]),
            EigCase(nodes=[0, 1], points=["1", "-1"]),
            EigCase(nodes=[1, 1, 0], points=["1", "2", "3"]),
        ]
    )
    order: int = Field(default_factory=lambda: compute_defaults.series_order, ge=1)
    depth: int = Field(1, ge=0)

    @model_validator(mode="before")
    @classmethod
    def fold_single_case(cls, data: Any) -> Any:
        """Accept one case as k, lambda (or nodes) and a (or points)."""
        if not isinstance(data, dict):
            return data
        data = dict(data)
        weights = data.pop("lambda", data.pop("λ", data.pop("nodes", None)))
        points = data.pop("a", data.pop("points", None))
        k = data.pop("k", None)
        if weights is None and points is None and k is None:
            return data
        if "cases" in data:
            raise ValueError("give either cases or a single case, not both")
        if weights is None or points is None:
            raise ValueError("a single case needs both lambda and a")
        nodes = [fundamental_node(w) for w in weights]
        if k is not None and not (int(k) == len(nodes) == len(points)):
            raise ValueError(f"k = {k} needs {k} weights and {k} points")
        data["cases"] = [{"nodes": nodes, "points": [str(p) for p in points]}]
        return data


@register("eig-eigenvalue", EigParams)
def check_eig_eigenvalue(params: EigParams) -> Outcome:
    """Lambda±(h_i, u) on the tensor highest vector equals prod_j (1 - a_j^(±1) u)^(lambda_j(h_i))."""
    algebra = algebra_of("A1")
    failures, inconclusive = [], 0
    first: List[str] = []
    for case in params.cases:
        if len(case.nodes) != len(case.points):
            raise InvalidParamsError("every eigenvalue case needs one point per weight")
        coords = [fundamental_coords(algebra, n) for n in case.nodes]
        factors = [irreducible_aff_truncated(algebra, c, params.depth) for c in coords]
        module = evaluation_tensor(factors, case.points, params.depth)
        v = SparseVector.basis(module.top_index())
        identity = module.identity_operator()
        for i in module.nodes:
            for sign in (1, -1):
                expected = series_product(
                    [linear_factor(scalar_power(to_scalar(a), sign)) ** c[i] for a, c in zip(case.points, coords)],
                    params.order,
                )
                for lam in lambda_series(module.generators.h[i], sign, params.order):
                    op = lam.evaluate_operator(lambda s, lam=lam: module.operator(lam.symbol_element(s)), identity)
                    image, lossy = op.apply_tracked(v)
                    if image == v.scale(expected[lam.order]):
                        continue
                    if lossy:
                        inconclusive += 1
                    else:
                        failures.append(
                            f"{module.descriptor()}: Lambda{'+' if sign > 0 else '-'}(h{i}, {lam.order}) "
                            f"!= {format_scalar(expected[lam.order])}"
                        )
                if not first and i == 0 and sign == 1:
                    first = [format_scalar(c) for c in expected]
    return Outcome.tally(failures, inconclusive, {"series": first})


# representation criteria


class LoopParams(CheckParams):
    weights: List[List[int]] = Field(default_factory=lambda: [[0], [1], [2]])
    points: List[str] = Field(default_factory=lambda: ["1", "-1", "2", "-2"])
    max_factors: int = Field(2, ge=1)
    window: int = Field(default_factory=lambda: compute_defaults.loop_window, ge=1)


@register("loop-irred", LoopParams)
def check_loop_irreducibility(params: LoopParams) -> Outcome:
    """The loop-module verdict against the closure of every basis vector of the window.

    With period 2 the minimal proper closures must be the two pieces generated by v ⊗ t^0 and v ⊗ t^1.
    """
    algebra = algebra_of("A1")
    failures = []
    cases = 0
    split: Dict[str, List[int]] = {}
    for k in range(1, params.max_factors + 1):
        for weights in itertools.product(params.weights, repeat=k):
            for points in itertools.combinations(params.points, k):
                spec = LoopModuleSpec(weights=[tuple(w) for w in weights], points=list(points), window=params.window)
                verdict = loop_irreducibility(algebra, spec)
                module = loop_module(algebra, spec)
                closures = {tuple(submodule_closure(module, [SparseVector.basis(i)])) for i in range(module.dim)}
                proper = [c for c in closures if len(c) < module.dim]
                cases += 1
                if (not proper) != verdict.irreducible:
                    failures.append(
                        f"{module.descriptor()}: verdict irreducible={verdict.irreducible}, "
                        f"proper closures {sorted(len(c) for c in proper)} of {module.dim}"
                    )
                    continue
                if verdict.period != 2:
                    continue
                pieces = {tuple(submodule_closure(module, [g])) for g in period_generators(module, 2)}
                minimal = {
                    c
                    for c in proper
                    if not any(len(o) < len(c) and span_rank(list(c) + list(o), module.dim) == len(c) for o in proper)
                }
                dims = sorted(len(p) for p in pieces)
                joined = span_rank([v for p in pieces for v in p], module.dim)
                if minimal != pieces or len(pieces) != 2 or sum(dims) != module.dim or joined != module.dim:
                    failures.append(
                        f"{module.descriptor()}: minimal closures {sorted(len(c) for c in minimal)} "
                        f"are not the two pieces {dims} splitting {module.dim}"
                    )
                split[module.descriptor()] = dims
    return Outcome.tally(failures, 0, {"cases": cases, "period_two": split})


class TensorParams(CheckParams):
    depth: int = Field(default_factory=lambda: compute_defaults.depth, ge=0)
    random_vectors: int = Field(default_factory=lambda: compute_defaults.random_vectors, ge=1)
    seed: int = Field(default_factory=lambda: compute_defaults.seed)


@register("tensor-irred-condition", TensorParams)
def check_tensor_irreducibility(params: TensorParams) -> Outcome:
    """
    The sufficient condition for V_aff(lambda) ⊗ V_aff(mu, a) on worked cases, and closures in
    V_tor((omega_0, omega_0), a): full from random vectors for a = (1, 2), proper for a = (1, 1).
    """
    algebra = algebra_of("A1")
    failures = []
    omega0 = fundamental_coords(algebra, 0)
    expectations = [((2,), "5", True), ((1,), "5", False), ((0,), "5", False)]
    for mu, point, met in expectations:
        criterion = tensor_irreducibility_condition(algebra, omega0, [FinWeight(coords=mu)], [point])
        if criterion.met != met:
            failures.append(f"mu = {mu}, a = {point}: criterion met = {criterion.met}, expected {met}")

    factor = irreducible_aff_truncated(algebra, omega0, params.depth)
    distinct = evaluation_tensor([factor, factor], ["1", "2"], params.depth)
    partial = 0
    for v in random_vectors(distinct, params.random_vectors, params.seed):
        if closure_dimension(distinct, [v]) != distinct.dim:
            partial += 1
    if partial:
        failures.append(f"{distinct.descriptor()}: {partial} random vectors generate proper closures")

    repeated = evaluation_tensor([factor, factor], ["1", "1"], params.depth)
    top = repeated.weights[repeated.top_index()]
    lower = [hw for hw in highest_weight_vectors(repeated) if hw.weight != top]
    proper = [closure_dimension(repeated, [hw.vector]) for hw in lower]
    if not proper or all(d == repeated.dim for d in proper):
        failures.append(f"{repeated.descriptor()}: no highest-weight vector generates a proper closure")
    details = {"dimension": distinct.dim, "proper_closures": proper}
    return Outcome.tally(failures, 0, details)


class ExampleParams(CheckParams):
    window: int = Field(default_factory=lambda: compute_defaults.loop_window, ge=1)


@register("example-2-3", ExampleParams)
def check_example(params: ExampleParams) -> Outcome:
    """The indecomposable sl2 example: relations, the proper submodule of the w0 t^r and its lack of a complement."""
    module = example_indecomposable_sl2(params.window)
    elements = module.generator_set()
    failures = []
    relations = check_chevalley_relations(module)
    axioms = check_module_axiom(module)
    failures.extend(f"{v.left} != {v.right} on {v.label}" for v in relations.violations + axioms.violations)

    w0 = module.vector(W0, 0)
    v0 = module.vector(0, 0)
    proper = submodule_closure(module, [w0], elements)
    if len(proper) >= module.dim or span_rank(proper + [v0], module.dim) == len(proper):
        failures.append("w0 t^0 generates a submodule containing v0 t^0")
    everything = closure_dimension(module, [v0], elements)
    if everything != module.dim:
        failures.append(f"v0 t^0 generates {everything} of {module.dim} dimensions")

    # every g-image of v0 + w with w in the w0-span is an image of v0, and these reach w0 t^1
    images = [module.operator(e).apply(v0) for e in elements]
    reached = submodule_closure(module, [v for v in images if not v.is_zero()], elements)
    w0_next = module.vector(W0, 1)
    if span_rank(reached + [w0_next], module.dim) != len(reached):
        failures.append("the images of v0 t^0 avoid w0 t^1, so the w0-submodule may have a complement")
    details = {
        "dimension": module.dim,
        "basis": list(NAMES),
        "w0_submodule": len(proper),
        "pairs_checked": relations.pairs_checked + axioms.pairs_checked,
        "columns_skipped": relations.columns_skipped + axioms.columns_skipped,
    }
    return Outcome.tally(failures, 0, details)


# Weyl modules and fusion


def _parse_pi(algebra: ChevalleyAlgebra, text: str) -> PolyTuple:
    return PolyTuple(algebra, parse_polynomial_list(text))


class WeylParams(CheckParams):
    pis: List[str] = Field(default_factory=lambda: ["[1, 1-u]", "[1, (1-u)*(1-u/2)]"])
    depth: int = Field(default_factory=lambda: compute_defaults.depth, ge=0)
    t2_degree: int = Field(default_factory=lambda: compute_defaults.t2_degree, ge=0)
    height: int = Field(default_factory=lambda: compute_defaults.height, ge=0)


@register("weyl-topdims", WeylParams)
def check_weyl_top_dims(params: WeylParams) -> Outcome:
    """Top layers of W_tor(pi): dim 1 at lambda_pi, dim deg pi_i at lambda_pi - alpha_i and m(lambda_pi) = 1."""
    algebra = algebra_of("A1")
    failures, inconclusive = [], 0
    tables: Dict[str, Dict[str, int]] = {}
    for text in params.pis:
        pi = _parse_pi(algebra, text)
        module = weyl_module_truncated(pi, params.depth, params.t2_degree, params.height)
        dims = module.graded_dims()
        zero = tuple(0 for _ in pi.degrees)
        checked = {zero: 1}
        for i, degree in enumerate(pi.degrees):
            eta = tuple(1 if j == i else 0 for j in range(len(pi.degrees)))
            if module.window.contains(eta):
                checked[eta] = degree
        inexact = {k for k in checked if k in module.spaces and not module.spaces[k].exact}
        for eta, expected in checked.items():
            if dims.get(eta, 0) != expected:
                if eta in inexact:
                    inconclusive += 1
                else:
                    failures.append(f"{module.descriptor()}: dim at eta = {eta} is {dims.get(eta, 0)}, expected {expected}")
        table = aff_decomposition(module)
        if table.top_multiplicity != 1:
            failures.append(f"{module.descriptor()}: m(lambda_pi) = {table.top_multiplicity}")
        tables[pi.render()] = {",".join(map(str, k)): d for k, d in sorted(dims.items())}
    return Outcome.tally(failures, inconclusive, {"graded_dims": tables})


class VariantParams(CheckParams):
    pi: str = "[1, 1-u]"
    windows: List[Window] = Field(default_factory=lambda: [(1, 1, 1), (2, 2, 2)], description="(D, K, H)")


@register("gcur-agreement", VariantParams)
def check_current_full(params: VariantParams) -> Outcome:
    """W_tor(pi) built from t2-degrees in [0, K] and in [-K, K] has the same window dimensions."""
    algebra = algebra_of("A1")
    pi = _parse_pi(algebra, params.pi)
    failures = []
    for depth, t2_degree, height in params.windows:
        comparison = current_full_agreement(pi, depth, t2_degree, height)
        if not comparison.equal:
            failures.append(f"window (D={depth}, K={t2_degree}, H={height}): {comparison.first_discrepancy}")
    return Outcome.tally(failures, 0, {"windows": len(params.windows)})


class FactorParams(CheckParams):
    pi: str = "[1, (1-u)*(1-u/2)]"
    windows: List[Window] = Field(default_factory=lambda: [(2, 2, 1), (2, 2, 2)], description="(D, K, H)")


@register("factorization", FactorParams)
def check_factorization(params: FactorParams) -> Outcome:
    """W_tor(pi) against the tensor product of the W_tor(pi^(a)) over the roots of pi."""
    algebra = algebra_of("A1")
    pi = _parse_pi(algebra, params.pi)
    failures = []
    points: List[str] = []
    for depth, t2_degree, height in params.windows:
        report = factorization_check(pi, depth, t2_degree, height)
        points = report.points
        if not report.comparison.equal:
            failures.append(f"window (D={depth}, K={t2_degree}, H={height}): {report.comparison.first_discrepancy}")
        if not report.eigenvalues_match:
            failures.append(f"window (D={depth}, K={t2_degree}, H={height}): h t2^k eigenvalues of the tensor top differ")
    return Outcome.tally(failures, 0, {"points": points})


class IrredParams(CheckParams):
    node: int = Field(1, ge=0)
    points: List[str] = Field(default_factory=lambda: ["1", "2"])
    windows: List[Window] = Field(default_factory=lambda: [(1, 1, 1), (2, 2, 2)], description="(D, K, H)")


@register("irred-theorem", IrredParams)
def check_irred_theorem(params: IrredParams) -> Outcome:
    """W_tor(pi_{i,a}) has the dimensions of V_tor(omega_i, a) and one highest-weight vector."""
    algebra = algebra_of("A1")
    failures = []
    for point in params.points:
        for depth, t2_degree, height in params.windows:
            report = irreducibility_check(algebra, params.node, point, depth, t2_degree, height)
            where = f"a = {point}, window (D={depth}, K={t2_degree}, H={height})"
            if not report.condition_satisfied:
                failures.append(f"node {params.node} does not satisfy the mark condition")
            if not report.comparison.equal:
                failures.append(f"{where}: {report.comparison.first_discrepancy}")
            if report.highest_weight_vectors != 1:
                failures.append(f"{where}: {report.highest_weight_vectors} highest-weight vectors")
    return Outcome.tally(failures, 0, {"cases": len(params.points) * len(params.windows)})


class SurjectionParams(CheckParams):
    pi: str = "[1, (1-u)^2]"
    control: str = "[1, 1-u]"
    depth: int = Field(default_factory=lambda: compute_defaults.depth, ge=0)
    height: int = Field(3, ge=0)
    degree_bound: int = Field(default_factory=lambda: compute_defaults.fusion_degree, ge=0)


@register("surjection-reducibility", SurjectionParams)
def check_surjection(params: SurjectionParams) -> Outcome:
    """W(lambda_pi, a) by fusion: relations of w_pi hold on its generator; reducible for (1-u)^2, not for 1-u."""
    algebra = algebra_of("A1")
    failures, inconclusive = [], 0
    details: Dict[str, Any] = {}
    for text, expect_reducible in ((params.pi, True), (params.control, False)):
        pi = _parse_pi(algebra, text)
        report = surjection_check(pi, params.depth, params.height, params.degree_bound)
        for relations in (report.relations, report.fusion_relations):
            failures.extend(f"{pi.render()}: {v}" for v in relations.violations)
            inconclusive += relations.inconclusive
        if not report.sum_rule:
            failures.append(f"{pi.render()}: the graded dimensions do not add up to the tensor window")
        if report.reducible != expect_reducible:
            failures.append(f"{pi.render()}: reducible = {report.reducible}, expected {expect_reducible}")
        hw = report.fusion_highest_weight_vectors
        if report.irreducible_highest_weight_vectors != 1 or (hw < 2 if expect_reducible else hw != 1):
            failures.append(
                f"{pi.render()}: {hw} highest-weight vectors in W(lambda, a), "
                f"{report.irreducible_highest_weight_vectors} in V_aff(lambda)"
            )
        details[pi.render()] = {"highest_weight_vectors": hw, "reducible": report.reducible}
    return Outcome.tally(failures, inconclusive, details)


class FusionParams(CheckParams):
    points: List[str] = Field(default_factory=lambda: ["0", "1"])
    triple: List[str] = Field(default_factory=lambda: ["0", "1", "2"])
    expected: List[int] = Field(default_factory=lambda: [3, 1])


@register("fusion-oracle", FusionParams)
def check_fusion_oracle(params: FusionParams) -> Outcome:
    """Fusion of copies of V_fin(1) over sl2[t]: graded dimensions and the sum rule."""
    algebra = algebra_of("A1")
    doublet = irreducible_fin(algebra, FinWeight(coords=(1,)))
    failures = []
    pair = fusion_product([doublet] * len(params.points), params.points)
    if pair.graded_dims() != params.expected:
        failures.append(f"graded dims {pair.graded_dims()} != {params.expected}")
    triple = fusion_product([doublet] * len(params.triple), params.triple)
    tensor = tensor_product([doublet] * len(params.triple))
    for filtered in (pair, triple):
        if not filtered.sum_rule_holds():
            failures.append(f"{filtered.base.descriptor()}: total {filtered.total_dim} != {filtered.base.dim}")
    if weight_dimensions(triple.graded()) != weight_dimensions(tensor):
        failures.append("the triple fusion and the triple tensor have different characters")
    details = {"pair": pair.graded_dims(), "triple": triple.graded_dims(), "triple_total": triple.total_dim}
    return Outcome.tally(failures, 0, details)


class DeterminismParams(CheckParams):
    checks: List[str] = Field(default_factory=lambda: ["lambda-newton", "fusion-oracle", "c1-identity"])


@register("determinism", DeterminismParams)
def check_determinism(params: DeterminismParams) -> Outcome:
    """Running the same checks twice gives byte-identical JSON."""
    failures = []
    for name in params.checks:
        first, second = (json.dumps(run_check(name).model_dump(mode="json", exclude={"seconds"}), sort_keys=True) for _ in range(2))
        if first != second:
            failures.append(f"{name}: repeated runs differ")
    return Outcome.tally(failures, 0, {"checks": params.checks})


def validate_params(name: str, params: Optional[Dict[str, Any]] = None) -> CheckParams:
    """
    Raises:
        UnknownCheckError: If no check has this name
        InvalidParamsError: If the parameters do not validate
    """
    if name not in REGISTRY:
        raise UnknownCheckError(f"unknown check {name!r}; known: {', '.join(sorted(REGISTRY))}")
    try:
        return REGISTRY[name].params.model_validate(params or {})
    except ValidationError as e:
        raise InvalidParamsError(f"invalid parameters for {name}: {e}") from e


def run_check(name: str, params: Optional[Dict[str, Any]] = None) -> CheckReport:
    """
    Run one registered check.

    Args:
        name: Registered check name
        params: Overrides of the check's default parameters

    Returns:
        The check report, timed

    Raises:
        UnknownCheckError: If no check has this name
        InvalidParamsError: If the parameters do not validate
    """
    validated = validate_params(name, params)
    logger.info("check_started", check=name)
    start = time.perf_counter()
    outcome = REGISTRY[name].run(validated)
    seconds = round(time.perf_counter() - start, 3)
    report = CheckReport(
        name=name,
        params=validated.model_dump(mode="json"),
        verdict=outcome.verdict,
        witness=outcome.witness,
        details=outcome.details,
        seconds=seconds,
    )
    logger.info("check_finished", check=name, verdict=report.verdict, seconds=seconds)
    return report
