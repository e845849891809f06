"""Serializable results of Weyl-module and fusion computations."""
from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class GradedEntry(BaseModel):
    degree: int = Field(..., ge=0)
    weight: List[str]
    dim: int = Field(..., ge=0)


class GradedTable(BaseModel):
    """Dimensions of the associated graded pieces of a filtered module."""

    module: str
    degrees: List[int] = Field(default_factory=list, description="dim gr_r for r = 0..R")
    entries: List[GradedEntry] = Field(default_factory=list)
    loss_events: int = Field(0, description="operator images that left the window while filtering")

    @property
    def total(self) -> int:
        return sum(self.degrees)


class RelationReport(BaseModel):
    """Defining relations checked on a generating vector."""

    checked: int = 0
    inconclusive: int = Field(0, description="relations whose evaluation left the window")
    violations: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


class DimensionComparison(BaseModel):
    """Weight-by-weight comparison of two truncated modules."""

    left: str
    right: str
    equal: bool
    first_discrepancy: Optional[str] = None
    left_dims: Dict[str, int] = Field(default_factory=dict)
    right_dims: Dict[str, int] = Field(default_factory=dict)


class FactorizationReport(BaseModel):
    points: List[str]
    comparison: DimensionComparison
    eigenvalues_match: bool = Field(..., description="Lambda+ data of the tensor top equals that of pi")

    @property
    def ok(self) -> bool:
        return self.comparison.equal and self.eigenvalues_match


class SurjectionReport(BaseModel):
    """Relations of w_pi verified on the fused generator of W(lambda_pi, a) and the resulting dimension bounds."""

    point: str
    relations: RelationReport
    fusion_relations: RelationReport = Field(..., description="relations of the fused generator of W(lambda)")
    sum_rule: bool = Field(..., description="sum of dim gr_r equals the dimension of the tensor window")
    fusion_dims: Dict[str, int]
    irreducible_dims: Dict[str, int]
    weyl_dims: Optional[Dict[str, int]] = None
    surjective_in_window: Optional[bool] = Field(None, description="dim W_tor(pi) >= dim W(lambda, a) at every weight")
    fusion_highest_weight_vectors: int
    irreducible_highest_weight_vectors: int
    reducible: bool = Field(..., description="W(lambda, a) is larger than V_aff(lambda) somewhere in the window")


class IrreducibilityReport(BaseModel):
    """W_tor(pi_{i,a}) against the evaluation module V_tor(omega_i, a) in one window."""

    node: int
    point: str
    condition_satisfied: bool = Field(..., description="i = 0 or the mark m_i equals 1")
    comparison: DimensionComparison
    highest_weight_vectors: int

    @property
    def isomorphic_in_window(self) -> bool:
        return self.comparison.equal and self.highest_weight_vectors == 1
