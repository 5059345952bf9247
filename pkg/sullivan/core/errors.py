"""Exception hierarchy shared by the engine and the command-line driver."""
from __future__ import annotations

from typing import Any, Optional


class SullivanError(Exception):
    """Base class for every error raised by the engine."""


class ModelError(SullivanError):
    """A model that failed validation was handed to an operation requiring a valid one."""

    def __init__(self, message: str, report: Any = None) -> None:
        super().__init__(message)
        self.report = report


class ParseFailure(SullivanError):
    """Model source text could not be turned into a model."""

    def __init__(self, diagnostics: Any) -> None:
        super().__init__(f"{len(diagnostics.items)} diagnostic(s)")
        self.diagnostics = diagnostics


class NotACocycle(SullivanError):
    """An element expected to be a cocycle has a nonzero differential."""


class ZeroClass(SullivanError):
    """An element expected to represent a nonzero class is a coboundary."""


class NotHomogeneous(SullivanError):
    """A word-length bigrading was requested for a non length-homogeneous differential."""


class DualityViolation(SullivanError):
    """A class has no Poincare dual; the model is not a duality algebra."""

    def __init__(self, message: str, witness: Optional[str] = None) -> None:
        super().__init__(message)
        self.witness = witness


class WellDefinednessViolation(SullivanError):
    """A page differential depends on the chosen representative (engine bug)."""


class IsoViolation(SullivanError):
    """A subquotient isomorphism check failed (engine bug)."""


class EngineInconsistency(SullivanError):
    """A proven theorem failed on a model; the engine is wrong until proven otherwise."""

    def __init__(self, message: str, verdict: Any = None, dump: Optional[dict] = None) -> None:
        super().__init__(message)
        self.verdict = verdict
        self.dump = dump or {}


class ComputationLimitExceeded(SullivanError):
    """A degree's monomial basis is larger than the configured maximum."""

    def __init__(self, degree: int, size: int, limit: int) -> None:
        super().__init__(f"basis of degree {degree} has {size} monomials (limit {limit})")
        self.degree = degree
        self.size = size
        self.limit = limit


class UnknownModel(SullivanError, KeyError):
    """A model reference names neither an existing file nor a corpus entry."""
