"""Engine configuration settings.

This module centralizes environment-driven configuration using pydantic's
settings management so that the CLI and the engine share one source of
defaults. Command-line flags override whatever is loaded here.
"""

from functools import lru_cache
from typing import Optional

from pydantic import AliasChoices, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Engine settings sourced from environment variables or a .env file."""

    window_factor: int = Field(
        2,
        validation_alias=AliasChoices("SULLIVAN_WINDOW_FACTOR"),
        description="Ellipticity window W = factor * N_formula (at least N_formula + max generator degree)",
        ge=1,
    )
    closure_bound: Optional[int] = Field(
        default=None,
        validation_alias=AliasChoices("SULLIVAN_CLOSURE_BOUND"),
        description="Degree bound for the acyclic closure check; derived from N_formula when unset",
        ge=0,
    )
    page_slack: int = Field(
        2,
        validation_alias=AliasChoices("SULLIVAN_PAGE_SLACK"),
        description="Page tables default to total degrees up to N + slack",
        ge=0,
    )
    fallback_bound: int = Field(
        12,
        validation_alias=AliasChoices("SULLIVAN_FALLBACK_BOUND"),
        description="Degree bound used when no formal dimension is available",
        ge=0,
    )
    max_basis_size: int = Field(
        20000,
        validation_alias=AliasChoices("SULLIVAN_MAX_BASIS_SIZE"),
        description="Largest monomial basis of a single degree the engine will eliminate over",
        ge=1,
    )
    json_indent: int = Field(
        2,
        validation_alias=AliasChoices("SULLIVAN_JSON_INDENT"),
        description="Indentation of emitted json reports",
        ge=0,
    )
    log_level: str = Field(
        "WARNING",
        validation_alias=AliasChoices("SULLIVAN_LOG_LEVEL"),
        description="Root log level used by the command-line driver",
    )
    corpus_jobs: int = Field(
        1,
        validation_alias=AliasChoices("SULLIVAN_CORPUS_JOBS"),
        description="Worker processes used by `corpus run`",
        ge=1,
    )

    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", extra="ignore", populate_by_name=True
    )

    def closure_bound_for(self, n_formula: int) -> int:
        """Return the acyclic-closure degree bound for a model with formal dimension ``n_formula``."""

        if self.closure_bound is not None:
            return self.closure_bound
        return 2 * n_formula + 2 if n_formula >= 0 else 12


@lru_cache
def get_settings() -> Settings:
    """Return a cached Settings instance shared by the CLI and the engine."""

    return Settings()
