"""Runtime settings read from the environment."""

import logging
import os
from dataclasses import dataclass, replace
from pathlib import Path

from dotenv import load_dotenv

from .exceptions import ParameterError

logger = logging.getLogger(__name__)

DEFAULT_MAX_POINTS = 1_000_000
DEFAULT_COVERING_SAMPLES = 10_000


def load_environment() -> None:
    """Load ~/.env.shared first, then a local .env that may override it."""
    shared_env = Path.home() / ".env.shared"
    if shared_env.exists():
        load_dotenv(shared_env)
    load_dotenv()


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise ParameterError(f"{name} must be an integer, got {raw!r}") from e
    if value <= 0:
        raise ParameterError(f"{name} must be positive, got {value}")
    return value


def _log_level_env(name: str) -> str:
    level = (os.getenv(name) or "INFO").strip().upper() or "INFO"
    if level not in logging.getLevelNamesMapping():
        raise ParameterError(f"{name} is not a logging level: {level!r}")
    return level


@dataclass(frozen=True)
class Settings:
    """Process-wide settings."""

    max_points: int = DEFAULT_MAX_POINTS
    log_level: str = "INFO"
    covering_samples: int = DEFAULT_COVERING_SAMPLES

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            max_points=_int_env("ENGELSET_MAX_POINTS", DEFAULT_MAX_POINTS),
            log_level=_log_level_env("ENGELSET_LOG_LEVEL"),
            covering_samples=_int_env("ENGELSET_COVERING_SAMPLES", DEFAULT_COVERING_SAMPLES),
        )

    def with_max_points(self, max_points: int | None) -> "Settings":
        if max_points is None:
            return self
        if max_points <= 0:
            raise ParameterError(f"--max-points must be positive, got {max_points}")
        return replace(self, max_points=max_points)


# Singleton instance
_settings: Settings | None = None


def get_settings() -> Settings:
    """Get or create the settings singleton."""
    global _settings
    if _settings is None:
        load_environment()
        _settings = Settings.from_env()
        logger.debug(f"Settings loaded: {_settings}")
    return _settings


def override_settings(settings: Settings) -> None:
    """Replace the singleton, e.g. after applying CLI flags."""
    global _settings
    _settings = settings


def reset_settings() -> None:
    """Drop the cached singleton so the next get_settings() rereads the environment."""
    global _settings
    _settings = None
