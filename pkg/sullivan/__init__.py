"""Exact cohomology and word-length spectral sequences of Sullivan minimal models."""

__version__ = "1.0.0"
