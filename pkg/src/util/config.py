"""
Runtime Configuration

Module-level defaults for the computation pipeline, overridable from the
environment. Command-line flags override both.
"""

import os
import logging
from dataclasses import dataclass, replace
from typing import Mapping, Optional

logger = logging.getLogger(__name__)

# Enumeration cap for expansion, division and counting loops
DEFAULT_TERM_CAP = 10**7
DEFAULT_MARGIN = 1
DEFAULT_WORKERS = 1
DEFAULT_LOG_LEVEL = "WARNING"

ENV_TERM_CAP = "PLUMB_TERM_CAP"
ENV_WORKERS = "PLUMB_WORKERS"
ENV_LOG_LEVEL = "PLUMB_LOG_LEVEL"


def _positive_int(env: Mapping[str, str], name: str, default: int) -> int:
    raw = env.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw.strip().replace("_", ""))
    except ValueError:
        raise ValueError(f"{name} must be a positive integer, got {raw!r}")
    if value <= 0:
        raise ValueError(f"{name} must be a positive integer, got {raw!r}")
    return value


@dataclass(frozen=True)
class Settings:
    """
    Immutable pipeline settings.

    Attributes:
        term_cap: Maximum number of terms/visits any single enumeration may touch
        margin: Starting margin for deep-point search in the counting oracle
        workers: Worker processes for per-class and per-instance parallelism
        log_level: Logging level name for the command line
    """

    term_cap: int = DEFAULT_TERM_CAP
    margin: int = DEFAULT_MARGIN
    workers: int = DEFAULT_WORKERS
    log_level: str = DEFAULT_LOG_LEVEL

    @classmethod
    def from_env(cls, env: Optional[Mapping[str, str]] = None) -> "Settings":
        """
        Build settings from environment variables.

        Args:
            env: Mapping to read from (defaults to os.environ)

        Raises:
            ValueError: If a numeric variable is not a positive integer
        """
        env = os.environ if env is None else env
        settings = cls(
            term_cap=_positive_int(env, ENV_TERM_CAP, DEFAULT_TERM_CAP),
            workers=_positive_int(env, ENV_WORKERS, DEFAULT_WORKERS),
            log_level=env.get(ENV_LOG_LEVEL, DEFAULT_LOG_LEVEL) or DEFAULT_LOG_LEVEL,
        )
        logger.debug(f"⚙️ Settings from environment: {settings}")
        return settings

    def with_overrides(self, **overrides) -> "Settings":
        """Return a copy with the non-None overrides applied"""
        changes = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **changes)
