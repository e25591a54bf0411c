"""
Shared utilities: rich logging setup and environment-backed settings.
"""

from .logging import setup_logging
from .config import Settings, DEFAULT_TERM_CAP, DEFAULT_MARGIN, DEFAULT_WORKERS

__all__ = [
    "setup_logging",
    "Settings",
    "DEFAULT_TERM_CAP",
    "DEFAULT_MARGIN",
    "DEFAULT_WORKERS",
]
