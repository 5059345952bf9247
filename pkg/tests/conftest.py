"""Shared fixtures: corpus models, settings isolation and a small model builder."""

from pathlib import Path
import sys

# Ensure the package is importable when tests run from the repository root.
sys.path.append(str(Path(__file__).resolve().parents[1]))

import pytest

from sullivan.core.config import get_settings
from sullivan.services.corpus import corpus_model
from sullivan.services.parser import load_model

SETTINGS_ENV = (
    "SULLIVAN_WINDOW_FACTOR",
    "SULLIVAN_CLOSURE_BOUND",
    "SULLIVAN_PAGE_SLACK",
    "SULLIVAN_FALLBACK_BOUND",
    "SULLIVAN_MAX_BASIS_SIZE",
    "SULLIVAN_JSON_INDENT",
    "SULLIVAN_LOG_LEVEL",
    "SULLIVAN_CORPUS_JOBS",
)

ELLIPTIC_CORPUS = ("s2", "s3", "s3xs5", "cp2", "cp3", "e6-pure", "free-odd")


@pytest.fixture(autouse=True)
def _isolated_settings(monkeypatch):
    """Every test sees default settings, whatever the caller's environment holds."""

    for key in SETTINGS_ENV:
        monkeypatch.delenv(key, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def corpus():
    """Load a corpus model by id."""

    return corpus_model


@pytest.fixture
def model_from():
    """Parse model text, failing the test on diagnostics."""

    def build(text: str, name: str = "test"):
        return load_model(text, provenance=f"<{name}>", name=name)

    return build
