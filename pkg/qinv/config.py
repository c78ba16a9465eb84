"""Application configuration.

Purpose:
- Centralize runtime configuration (data directory, worker count, seeds).
- Avoid hard-coding values in the rest of the codebase.

Notes:
- Defaults are fine for local runs; a `.env` file in the working directory
  is read first, then environment variables override it.
- RunConfig is the per-invocation view built by the CLI from Settings and
  command-line flags.
"""
from __future__ import annotations

import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

load_dotenv()


# APPLICATION SETTINGS
class Settings(BaseModel):
    """Typed config object for all application settings."""

    # Where `qinv seed` writes the bundled category and scene files
    QINV_DATA_DIR: str = os.getenv("QINV_DATA_DIR", "./data")

    # Parallel workers for state sums and surgery sums (1 = sequential)
    QINV_WORKERS: int = int(os.getenv("QINV_WORKERS", "1"))

    # Print every term of the identity ledgers
    QINV_LEDGER: bool = os.getenv("QINV_LEDGER", "0") in ("1", "true", "yes")

    # Seed for the random elements used to split endomorphism algebras
    QINV_SEED: int = int(os.getenv("QINV_SEED", "20170"))

    # Random elements tried per corner before giving up on a splitting
    QINV_DECOMPOSITION_TRIES: int = int(os.getenv("QINV_DECOMPOSITION_TRIES", "8"))

    # Optional Sentry DSN for error tracking
    SENTRY_DSN: str | None = os.getenv("SENTRY_DSN")

    # Environment name used by Sentry
    SENTRY_ENV: str = os.getenv("SENTRY_ENV", "development")

    # Sample rate for tracing
    SENTRY_TRACES: float = float(os.getenv("SENTRY_TRACES", "0.0"))


# Shared settings instance
settings = Settings()


class RunConfig(BaseModel):
    """Options of one engine run, validated before any computation."""

    workers: int = Field(default_factory=lambda: settings.QINV_WORKERS, ge=1)
    ledger: bool = Field(default_factory=lambda: settings.QINV_LEDGER)
    seed: int = Field(default_factory=lambda: settings.QINV_SEED)
    decomposition_tries: int = Field(default_factory=lambda: settings.QINV_DECOMPOSITION_TRIES, ge=1)
    inputs: list[Path] = Field(default_factory=list)
    export_center: Optional[Path] = None

    @field_validator("inputs")
    @classmethod
    def _inputs_exist(cls, paths: list[Path]) -> list[Path]:
        for p in paths:
            if not p.exists():
                raise ValueError(f"fichier introuvable : {p}")
        return paths

    @field_validator("export_center")
    @classmethod
    def _export_parent_exists(cls, path: Optional[Path]) -> Optional[Path]:
        if path is not None and not path.parent.exists():
            raise ValueError(f"dossier introuvable : {path.parent}")
        return path

    def data_dir(self) -> Path:
        return Path(settings.QINV_DATA_DIR)
