#!/usr/bin/env python3
"""
Reproduction Runner

Recomputes the worked examples and scans the generated graph families, then
prints one table of every reproduced quantity (expected against computed,
structure check outcomes included) and the failing rows again at the end.

Usage:
    python -m integration

Exit codes:
- 0: Every quantity reproduced
- 1: Some quantity differs or a suite crashed
- 130: Interrupted by user
"""

import sys
import time
import traceback
from collections import Counter
from pathlib import Path
from typing import Dict, List

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from integration.scan_integration_test import run_all_tests as run_scans
from integration.worked_examples_test import Reproduction, run_all_tests as run_worked_examples
from src.util.logging import setup_logging

console = Console()

SUITES = {
    "Worked Examples": run_worked_examples,
    "Family Scans": run_scans,
}


async def collect(suites=SUITES) -> Dict[str, List[Reproduction]]:
    """Run each suite; a crash becomes a single failing row for that suite"""
    collected = {}
    for name, suite in suites.items():
        console.rule(f"🧪 [bold blue]{name}[/bold blue]")
        started = time.perf_counter()
        try:
            collected[name] = await suite()
        except Exception as e:
            console.print(f"💥 [red]{name} crashed: {type(e).__name__}: {e}[/red]")
            collected[name] = [Reproduction(name, "suite", "completes", f"{type(e).__name__}: {e}", False)]
        console.print(f"⏱️ {name}: {time.perf_counter() - started:.2f}s")
    return collected


def display_reproductions(collected: Dict[str, List[Reproduction]]) -> bool:
    """Table of every quantity by case; True when all reproduced"""
    table = Table(title="Reproduced quantities", show_header=True, header_style="bold blue")
    table.add_column("Suite", style="magenta")
    table.add_column("Case", style="cyan")
    table.add_column("Quantity")
    table.add_column("Expected", justify="right")
    table.add_column("Computed", justify="right")
    table.add_column("", justify="center")
    for suite, rows in collected.items():
        for row in rows:
            table.add_row(suite, row.case, row.quantity, row.expected, row.computed, "✅" if row.ok else "❌")
    console.print(table)

    rows = [row for rows in collected.values() for row in rows]
    failing = [row for row in rows if not row.ok]
    by_case = Counter(row.case for row in failing)
    console.print(f"\n🎯 [bold]Reproduced:[/bold] {len(rows) - len(failing)}/{len(rows)} quantities")
    if failing:
        for case, count in by_case.items():
            console.print(f"   ❌ [red]{case}[/red]: {count} mismatch(es)")
        for row in failing:
            console.print(f"   [red]{row.case} / {row.quantity}[/red]: expected {row.expected}, computed {row.computed}")
        return False
    console.print("🎉 [bold green]Every quantity reproduced.[/bold green]")
    return True


async def main():
    """Entry point of python -m integration"""
    setup_logging(logToStdout=True)
    console.print(Panel.fit(
        "[bold blue]🚀 Plumbing Zeta - Reproduction Suite[/bold blue]\n"
        "Worked examples with known invariants, then small family scans",
        border_style="blue",
    ))
    try:
        all_reproduced = display_reproductions(await collect())
    except KeyboardInterrupt:
        console.print("\n🛑 [yellow]Run interrupted by user[/yellow]")
        sys.exit(130)
    except Exception as e:
        console.print(f"\n💥 [red bold]Reproduction runner failed: {e}[/red bold]")
        console.print(f"[red]Traceback:[/red]\n{traceback.format_exc()}")
        sys.exit(1)
    sys.exit(0 if all_reproduced else 1)
