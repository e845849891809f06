"""Input documents accepted by the build, fusion and weyl commands."""
from typing import List, Literal, Optional, Tuple

import structlog
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.config.settings import compute_defaults
from src.exactla.polynomials import parse_polynomial_list
from src.exactla.scalars import format_scalar, to_scalar
from src.liecore.algebra import ChevalleyAlgebra, build_algebra
from src.liecore.cartan import CartanData
from src.liecore.weights import FinWeight
from src.repengine.example import example_indecomposable_sl2
from src.repengine.highest_weight import dual_aff_truncated, irreducible_aff_truncated, irreducible_fin
from src.repengine.loop import LoopModuleSpec, loop_module
from src.repengine.module import WeightModule
from src.repengine.tensor import TensorModule
from src.weylfusion.fusion import FilteredModule, fusion_product
from src.weylfusion.polytuple import PolyTuple
from src.weylfusion.weyl_module import weyl_module_truncated

logger = structlog.get_logger()

ModuleKind = Literal["fin", "aff", "dual-aff", "tensor", "loop", "example", "weyl", "fusion"]


class BuildRequest(BaseModel):
    """
    A named module and its window, e.g.
    {"kind": "tensor", "type": "A1", "factors": [[1, 0], [1, 0]], "points": ["1", "2"], "depth": 2}.

    fin takes `weight`; aff and dual-aff take `coords`; tensor takes `factors` (affine
    coordinates) and optional `points`; loop and fusion take `weights` (finite) and `points`;
    weyl takes `pi`.
    """

    model_config = ConfigDict(extra="forbid")

    kind: ModuleKind
    type: str = Field("A1", description="Cartan label such as A1 or D4")
    weight: Optional[Tuple[int, ...]] = None
    coords: Optional[Tuple[int, ...]] = None
    factors: List[Tuple[int, ...]] = Field(default_factory=list)
    weights: List[Tuple[int, ...]] = Field(default_factory=list)
    points: Optional[List[str]] = None
    pi: Optional[str] = Field(None, description='polynomial list such as "[1, (1-u)^2]"')
    depth: int = Field(default_factory=lambda: compute_defaults.depth, ge=0)
    height: Optional[int] = Field(None, ge=0)
    t2_degree: int = Field(default_factory=lambda: compute_defaults.t2_degree, ge=0)
    window: int = Field(default_factory=lambda: compute_defaults.loop_window, ge=0)
    shift: int = 0
    variant: Literal["current", "full"] = "current"
    degree_bound: Optional[int] = Field(None, ge=0)

    @field_validator("points", mode="before")
    @classmethod
    def normalize_points(cls, v):
        """Accept numbers or strings; store canonical p/q strings."""
        if v is None:
            return v
        return [format_scalar(to_scalar(a)) for a in v]

    @model_validator(mode="after")
    def require_inputs(self) -> "BuildRequest":
        required = {
            "fin": self.weight is not None,
            "aff": self.coords is not None,
            "dual-aff": self.coords is not None,
            "tensor": bool(self.factors),
            "loop": bool(self.weights) and self.points is not None,
            "fusion": bool(self.weights) and self.points is not None,
            "weyl": self.pi is not None,
            "example": True,
        }
        if not required[self.kind]:
            raise ValueError(f"missing inputs for a {self.kind} module")
        return self

    def algebra(self) -> ChevalleyAlgebra:
        return build_algebra(CartanData.parse(self.type))


def build_filtered(request: BuildRequest) -> FilteredModule:
    """Fusion product of V_fin(weights[j]) at points[j]."""
    algebra = request.algebra()
    factors = [irreducible_fin(algebra, FinWeight(coords=w)) for w in request.weights]
    return fusion_product(factors, request.points or [], request.degree_bound)


def build_module(request: BuildRequest) -> WeightModule:
    """
    Construct the module a request names.

    Raises:
        TorrepError: Whatever the underlying constructor raises for invalid data
    """
    algebra = request.algebra()
    kind = request.kind
    if kind == "fin":
        module = irreducible_fin(algebra, FinWeight(coords=request.weight))
    elif kind == "aff":
        module = irreducible_aff_truncated(algebra, request.coords, request.depth, request.height)
    elif kind == "dual-aff":
        module = dual_aff_truncated(algebra, request.coords, request.depth, request.height)
    elif kind == "tensor":
        factors = [irreducible_aff_truncated(algebra, c, request.depth, request.height) for c in request.factors]
        module = TensorModule(factors, request.points, request.depth, request.height)
    elif kind == "loop":
        spec = LoopModuleSpec(weights=request.weights, points=request.points, shift=request.shift, window=request.window)
        module = loop_module(algebra, spec)
    elif kind == "example":
        module = example_indecomposable_sl2(request.window, algebra)
    elif kind == "weyl":
        pi = PolyTuple(algebra, parse_polynomial_list(request.pi))
        module = weyl_module_truncated(
            pi, request.depth, request.t2_degree, request.height or compute_defaults.height, request.variant
        )
    else:
        module = build_filtered(request).graded()
    logger.info("request_built", kind=kind, module=module.descriptor(), dim=module.dim)
    return module
