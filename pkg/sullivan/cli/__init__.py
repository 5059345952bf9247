"""Command-line driver."""
