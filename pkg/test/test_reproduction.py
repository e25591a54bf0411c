"""
Unit Tests for the Reproduction Runner
"""

from fractions import Fraction

import pytest

import sys
from pathlib import Path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from integration.runner import collect, display_reproductions
from integration.worked_examples_test import Reproduction, check_reproductions
from src.knots.surgery import FAIL, PASS, CheckReport, CheckResult, surgery_spec


class TestReproduction:
    """Expected against computed rows"""

    def test_compare_formats_fractions(self):
        """Fractions print as exact strings"""
        row = Reproduction.compare("case", "sw", Fraction(-1, 2), Fraction(-1, 2))
        assert (row.expected, row.computed, row.ok) == ("-1/2", "-1/2", True)

    def test_compare_mismatch(self):
        """Different values fail"""
        assert not Reproduction.compare("case", "sw_norm", 2, 3).ok

    def test_check_rows(self):
        """One row per structure check, failing only on a failed check"""
        report = CheckReport(
            spec=surgery_spec([[(2, 3)]], 1),
            results=[CheckResult("block_determinants", PASS), CheckResult("cyclic_homology", FAIL, "det = 2")],
        )
        rows = check_reproductions("case", report)
        assert [row.ok for row in rows] == [True, False]
        assert rows[1].computed == "fail: det = 2"


class TestRunner:
    """Collection and the summary table"""

    @pytest.mark.asyncio
    async def test_crashing_suite_is_one_failing_row(self):
        """An exception inside a suite is recorded, not raised"""
        async def crashes():
            raise ValueError("boom")

        async def reproduces():
            return [Reproduction.compare("E8", "det", 1, 1)]

        collected = await collect({"broken": crashes, "fine": reproduces})
        assert [row.ok for row in collected["broken"]] == [False]
        assert "ValueError: boom" in collected["broken"][0].computed
        assert collected["fine"][0].ok

    def test_summary_result(self):
        """The summary is True only when every row reproduced"""
        good = Reproduction.compare("E8", "det", 1, 1)
        bad = Reproduction.compare("E8", "sw", Fraction(-1), Fraction(0))
        assert display_reproductions({"suite": [good]})
        assert not display_reproductions({"suite": [good, bad]})
