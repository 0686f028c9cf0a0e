"""
Runtime settings for the command line.
"""

import os
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, field_validator

from app import __version__
from app.models.tables import SCHEMA_VERSION

CACHE_DIR_ENV = "MODULI_CACHE_DIR"

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


class Settings(BaseModel):
    """Resolved once per invocation and passed down explicitly."""

    cache_dir: Optional[Path] = Field(default=None, description="Disk cache directory; None disables caching")
    log_level: str = Field(default="WARNING", description="Root logging level; logs go to stderr")
    schema_version: int = Field(default=SCHEMA_VERSION, description="Cache and table layout version")
    tool_version: str = Field(default=__version__, description="Version recorded in cache entries")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v):
        level = v.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"log level must be one of {', '.join(LOG_LEVELS)}")
        return level


def resolve_cache_dir(flag: Optional[Path]) -> Optional[Path]:
    """--cache-dir beats MODULI_CACHE_DIR; neither means no cache."""
    if flag is not None:
        return flag
    env = os.environ.get(CACHE_DIR_ENV)
    return Path(env) if env else None


def load_settings(cache_dir: Optional[Path] = None, log_level: str = "WARNING") -> Settings:
    return Settings(cache_dir=resolve_cache_dir(cache_dir), log_level=log_level)
