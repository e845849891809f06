"""Serializable results of module analyses."""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class WeightEntry(BaseModel):
    """One weight with its multiplicity."""

    weight: List[str] = Field(..., description="lambda(h_1..h_n), lambda(c1), lambda(d1)")
    dim: int = Field(..., ge=0)
    exact: bool = Field(True, description="False when window loss touches this weight")


class CharacterTable(BaseModel):
    """Weight-space dimensions of a truncated module."""

    module: str
    weights: List[WeightEntry]
    truncation: Dict[str, Any] = Field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(entry.dim for entry in self.weights)

    def as_dict(self) -> Dict[tuple, int]:
        return {tuple(entry.weight): entry.dim for entry in self.weights}


class AxiomViolation(BaseModel):
    """First basis vector where a Lie-module identity fails."""

    left: str
    right: str
    column: int
    label: str


class AxiomReport(BaseModel):
    module: str
    pairs_checked: int = 0
    columns_checked: int = 0
    columns_skipped: int = Field(0, description="loss-tainted columns excluded from comparison")
    violations: List[AxiomViolation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


class IntegrabilityReport(BaseModel):
    module: str
    max_power: int = 0
    inconclusive: int = Field(0, description="chains that left the window")
    violations: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


class DecompositionEntry(BaseModel):
    weight: List[str]
    multiplicity: int
    exact: bool = True


class DecompositionTable(BaseModel):
    """Multiplicities of highest-weight constituents found in a window."""

    module: str
    entries: List[DecompositionEntry]
    cone_violations: List[str] = Field(default_factory=list)
    top_multiplicity: Optional[int] = None

    def multiplicity(self, weight: List[str]) -> int:
        return sum(e.multiplicity for e in self.entries if e.weight == weight)
