"""Service layer: the algebra engine, parser, corpus and report assembly."""

from .cohomology import cohomology_table, ellipticity_verdict, pairing_dual
from .parser import load_model, parse_model
from .spectral import e_infinity, page_entry, spectral_sequence
from .sullivan_model import SullivanModel, acyclic_closure, invariants, validate
from .theorems import run_suite

__all__ = [
    "SullivanModel",
    "acyclic_closure",
    "cohomology_table",
    "e_infinity",
    "ellipticity_verdict",
    "invariants",
    "load_model",
    "page_entry",
    "pairing_dual",
    "parse_model",
    "run_suite",
    "spectral_sequence",
    "validate",
]
