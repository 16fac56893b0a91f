"""Runtime settings read from INVDMOD_* environment variables."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from typing import Mapping, Optional

from .errors import ConfigError

try:
    from dotenv import load_dotenv
except ImportError:
    load_dotenv = None


DEFAULT_MAX_DEGREE = 64
DEFAULT_LOG_LEVEL = "WARNING"

_LEVELS = ("CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG")


@dataclass(frozen=True)
class Settings:
    """Resource guards and logging level."""

    max_degree: int = DEFAULT_MAX_DEGREE
    log_level: str = DEFAULT_LOG_LEVEL

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        if environ is None:
            if load_dotenv:
                load_dotenv()
            environ = os.environ
        raw_degree = environ.get("INVDMOD_MAX_DEGREE", str(DEFAULT_MAX_DEGREE)).strip()
        try:
            max_degree = int(raw_degree)
        except ValueError as exc:
            raise ConfigError(
                f"INVDMOD_MAX_DEGREE must be an integer, got {raw_degree!r}"
            ) from exc
        if max_degree < 1:
            raise ConfigError(f"INVDMOD_MAX_DEGREE must be positive, got {max_degree}")
        log_level = environ.get("INVDMOD_LOG_LEVEL", DEFAULT_LOG_LEVEL).strip().upper()
        if log_level not in _LEVELS:
            raise ConfigError(f"Unknown INVDMOD_LOG_LEVEL {log_level!r}")
        return cls(max_degree=max_degree, log_level=log_level)

    @property
    def numeric_log_level(self) -> int:
        return getattr(logging, self.log_level)


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


def reset_settings(settings: Optional[Settings] = None) -> None:
    """Drop the cached settings, or pin them to ``settings``."""
    global _settings
    _settings = settings
