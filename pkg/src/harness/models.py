"""Reports produced by the check harness."""
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

Verdict = Literal["pass", "fail", "inconclusive-window"]

SCHEMA_VERSION = 1


class CheckReport(BaseModel):
    """Outcome of one named check."""

    name: str = Field(..., description="Registered check name")
    params: Dict[str, Any] = Field(default_factory=dict, description="Validated parameters")
    verdict: Verdict
    witness: Optional[str] = Field(None, description="First failing equation, rendered")
    details: Dict[str, Any] = Field(default_factory=dict)
    seconds: Optional[float] = Field(None, description="Wall time, reported only on request")

    @model_validator(mode="after")
    def require_witness(self) -> "CheckReport":
        if self.verdict == "fail" and not self.witness:
            raise ValueError(f"failing check {self.name} carries no witness")
        return self

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


class CriterionEntry(BaseModel):
    criterion: int = Field(..., ge=1)
    check: str
    report: CheckReport


class SuiteSummary(BaseModel):
    """The acceptance battery, one entry per criterion in criterion order."""

    schema_version: int = Field(SCHEMA_VERSION, alias="schema")
    entries: List[CriterionEntry] = Field(default_factory=list)

    model_config = {"populate_by_name": True}

    @property
    def passed(self) -> int:
        return sum(1 for e in self.entries if e.report.verdict == "pass")

    @property
    def failed(self) -> int:
        return sum(1 for e in self.entries if e.report.verdict == "fail")

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def payload(self, timings: bool = False) -> Dict[str, Any]:
        """JSON-ready document; timings are dropped unless requested."""
        data = self.model_dump(mode="json", by_alias=True)
        data["passed"] = self.passed
        data["failed"] = self.failed
        if not timings:
            for entry in data["entries"]:
                entry["report"].pop("seconds", None)
        return data
