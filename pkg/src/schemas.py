"""
Report schemas shared by the checks, the harness and the CLI
"""

from typing import Any, Dict, List, Literal, Optional
from pydantic import BaseModel, Field, model_validator


class Failure(BaseModel):
    """One failed property with the smallest witness found"""
    axiom: str = Field(description="Name of the property that failed")
    witness: List[Any] = Field(default_factory=list, description="Points, halfspaces or sets exhibiting the failure")


class ValidationReport(BaseModel):
    """Outcome of a check; ok iff there are no failures"""
    ok: bool = True
    failures: List[Failure] = Field(default_factory=list)

    @model_validator(mode="after")
    def _ok_matches_failures(self):
        if self.ok != (not self.failures):
            raise ValueError("ok must be true exactly when failures is empty")
        return self

    @classmethod
    def from_failures(cls, failures: List[Failure]) -> "ValidationReport":
        return cls(ok=not failures, failures=failures)

    def merged(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport.from_failures(self.failures + other.failures)


class GeneratorSpec(BaseModel):
    """Family name plus parameters of one generated instance"""
    family: Literal["hypercube", "path", "tree", "random_tree", "grid", "staircase", "random_subalgebra", "tripod", "cycle"]
    params: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    corrupt_seed: Optional[int] = Field(default=None, description="Overwrite one median table entry (fault injection)")

    @property
    def instance_id(self) -> str:
        parts = [f"{key}={self.params[key]}" for key in sorted(self.params)]
        if self.seed is not None:
            parts.append(f"seed={self.seed}")
        if self.corrupt_seed is not None:
            parts.append(f"corrupt={self.corrupt_seed}")
        return f"{self.family}({','.join(parts)})"


class CorpusSpec(BaseModel):
    """An ordered list of generator specs"""
    name: str = "default"
    instances: List[GeneratorSpec] = Field(default_factory=list)


class ScorecardEntry(BaseModel):
    """One (statement, instance) cell of the scorecard"""
    statement: str
    instance: str
    status: Literal["pass", "fail", "skipped"]
    witness: Optional[List[Any]] = None
    elapsed_ms: Optional[float] = None


class Scorecard(BaseModel):
    """Statement-by-instance results in canonical order"""
    entries: List[ScorecardEntry] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(entry.status != "fail" for entry in self.entries)

    def failures(self) -> List[ScorecardEntry]:
        return [entry for entry in self.entries if entry.status == "fail"]

    def canonical(self) -> "Scorecard":
        return Scorecard(entries=sorted(self.entries, key=lambda e: (e.instance, e.statement)))


class StaircaseReport(BaseModel):
    """Gate-projections of the deepest staircase corner onto the first step"""
    k_max: int
    projections: List[str] = Field(description="Projected point for k = 1..k_max")
    stabilized_at: int = Field(description="Smallest k after which the projection never changes")

    @property
    def ok(self) -> bool:
        return self.stabilized_at <= 2
