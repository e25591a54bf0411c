"""
Scan Integration

Runs small scans of every generated family and expects no counterexample.
"""

import asyncio
import logging
from typing import List

from rich.console import Console
from rich.table import Table

import sys
from pathlib import Path

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from integration.worked_examples_test import Reproduction
from src.cli.scan import ScanSummary, load_scan_config, run_scan

logger = logging.getLogger(__name__)
console = Console()

SCANS = [
    {"family": "seifert", "central": {"start": -3, "stop": -1}, "leg_weight": {"start": 2, "stop": 4}},
    {"family": "bamboo-orbifold", "count": 20, "seed": 2024},
    {"family": "surgery", "knot_sets": [[[[2, 3]]], [[[2, 5]]], [[[2, 3]], [[2, 3]]]], "p": {"start": 1, "stop": 5}},
]


def display_summary(summary: ScanSummary):
    data = summary.to_dict()
    table = Table(title=f"Scan: {summary.family}", show_header=True, header_style="bold blue")
    for column in ("instances", "evaluated", "skipped", "invalid", "agreeing", "plus_equals_part"):
        table.add_column(column, justify="right")
    table.add_row(*(str(data[c]) for c in ("instances", "evaluated", "skipped", "invalid", "agreeing", "plus_equals_part")))
    console.print(table)
    for label in data["counterexamples"]:
        console.print(f"🚨 [red]{label}[/red]")


async def run_all_tests() -> List[Reproduction]:
    """Run every configured scan; each family must evaluate something and agree everywhere"""
    console.print("🧪 [bold magenta]Starting Scan Integration Suite[/bold magenta]")
    reproductions = []
    for raw in SCANS:
        summary = await run_scan(load_scan_config(raw))
        display_summary(summary)
        case = f"scan {summary.family}"
        evaluated = summary.count("ok")
        reproductions.append(Reproduction(case, "evaluated instances", "> 0", str(evaluated), evaluated > 0))
        reproductions.append(Reproduction.compare(case, "counterexamples", [], [o.label for o in summary.counterexamples]))
    if all(r.ok for r in reproductions):
        console.print("\n🎉 [bold green]No counterexamples found![/bold green]")
    return reproductions


if __name__ == "__main__":
    from src.util.logging import setup_logging
    setup_logging()
    asyncio.run(run_all_tests())
