"""Diagnostics for model sources and validation reports for models."""
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict

DiagnosticCategory = Literal[
    "syntax",
    "unknown-generator",
    "duplicate-generator",
    "degree-mismatch",
    "minimality",
    "order-violation",
    "d-squared",
    "degree",
]


class Diagnostic(BaseModel):
    """A single positioned problem found in a model source."""

    line: int
    column: int
    category: DiagnosticCategory
    message: str

    def render(self, provenance: str = "<model>") -> str:
        return f"{provenance}:{self.line}:{self.column}: {self.category}: {self.message}"


class DiagnosticList(BaseModel):
    """All diagnostics collected while parsing one source."""

    provenance: str
    items: List[Diagnostic] = []

    def __bool__(self) -> bool:
        return bool(self.items)

    def categories(self) -> List[str]:
        return [item.category for item in self.items]


class ValidationIssue(BaseModel):
    """One failed model invariant, with the generator and polynomial that witness it."""

    category: DiagnosticCategory
    generator: str
    message: str
    witness: Optional[str] = None


class ValidationReport(BaseModel):
    """Pass/fail for every model invariant."""

    model: str
    valid: bool
    checks: List[str]
    issues: List[ValidationIssue] = []

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "model": "bad",
                "valid": False,
                "checks": ["degree", "order-violation", "degree-mismatch", "minimality", "d-squared"],
                "issues": [
                    {
                        "category": "minimality",
                        "generator": "y",
                        "message": "d(y) has a term of word length 1",
                        "witness": "x",
                    }
                ],
            }
        }
    )

    def issues_for(self, category: str) -> List[ValidationIssue]:
        return [issue for issue in self.issues if issue.category == category]
