"""Pydantic models for diagnostics, verdicts and reports."""

from .diagnostic import Diagnostic, DiagnosticList, ValidationIssue, ValidationReport
from .report import (
    ClassWitness,
    CohomologyTable,
    E0Report,
    EllipticityVerdict,
    FundamentalClass,
    Hypothesis,
    ModelInvariants,
    PageTable,
    Report,
    ReportSummary,
    TheoremVerdict,
)

__all__ = [
    "ClassWitness",
    "CohomologyTable",
    "Diagnostic",
    "DiagnosticList",
    "E0Report",
    "EllipticityVerdict",
    "FundamentalClass",
    "Hypothesis",
    "ModelInvariants",
    "PageTable",
    "Report",
    "ReportSummary",
    "TheoremVerdict",
    "ValidationIssue",
    "ValidationReport",
]
