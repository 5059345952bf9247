"""Sub-command modules; each exposes ``register(subparsers)``."""

from . import analysis, corpus, theorems

__all__ = ["analysis", "corpus", "theorems"]
