"""
Unit Tests for Runtime Settings
"""

from dataclasses import FrozenInstanceError

import pytest

import sys
from pathlib import Path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.util.config import DEFAULT_TERM_CAP, DEFAULT_WORKERS, Settings


class TestSettings:
    """Environment and override handling"""

    def test_defaults(self):
        """An empty environment gives the module defaults"""
        settings = Settings.from_env({})
        assert settings.term_cap == DEFAULT_TERM_CAP
        assert settings.workers == DEFAULT_WORKERS
        assert settings.log_level == "WARNING"

    def test_environment(self):
        """PLUMB_* variables are read, underscores allowed in numbers"""
        settings = Settings.from_env({"PLUMB_TERM_CAP": "1_000", "PLUMB_WORKERS": "4", "PLUMB_LOG_LEVEL": "DEBUG"})
        assert settings.term_cap == 1000
        assert settings.workers == 4
        assert settings.log_level == "DEBUG"

    def test_blank_values_fall_back(self):
        """Empty strings keep the defaults"""
        assert Settings.from_env({"PLUMB_WORKERS": " "}).workers == DEFAULT_WORKERS

    @pytest.mark.parametrize("value", ["0", "-3", "four"])
    def test_invalid_numbers(self, value):
        """Numeric variables must be positive integers"""
        with pytest.raises(ValueError, match="PLUMB_TERM_CAP"):
            Settings.from_env({"PLUMB_TERM_CAP": value})

    def test_overrides_skip_none(self):
        """None leaves a field untouched"""
        settings = Settings().with_overrides(workers=None, margin=3)
        assert settings.workers == DEFAULT_WORKERS
        assert settings.margin == 3

    def test_immutable(self):
        """Settings are frozen"""
        with pytest.raises(FrozenInstanceError):
            Settings().workers = 2
