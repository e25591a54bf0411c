"""
plumb - Entry Point

Command-line interface for polynomial parts of zeta-functions and
Seiberg-Witten invariants of negative definite plumbed 3-manifolds.
Reports go to stdout as JSON, logs go to stderr.

Exit codes: 0 success, 1 invalid graph or no node, 2 IO, parse or input
data error, 3 enumeration budget exceeded.
"""

import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import List, Optional

# Add src to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.cli.handlers import CommandResult, handle_invariants, handle_knot, handle_surgery, handle_validate
from src.cli.scan import ScanConfigError, handle_scan
from src.graph.plumbing import GraphFormatError, GraphStructureError, GraphValidationError, UnknownVertexError
from src.knots.algebraic import KnotDataError
from src.knots.resolution import ResolutionGraphError
from src.knots.surgery import QRouteError, SurgeryDataError
from src.lattice.lattice import LatticeError
from src.laurent.division import TermBudgetExceeded
from src.util.config import Settings
from src.util.logging import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID_GRAPH = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plumb",
        description="Polynomial parts and Seiberg-Witten invariants of plumbed 3-manifolds",
        epilog="""
Examples:
  # Check a graph file
  plumb validate graphs/e8.json

  # Invariants of every class, with the counting-function oracle
  plumb invariants graphs/z7.json --oracle on

  # Surgery along three trefoils with p/q = 7/2
  plumb surgery --knot "2,3" --knot "2,3" --knot "2,3" --p 7 --q 2 --emit checks

  # Knot data and resolution graph
  plumb knot --newton "2,3;2,1"

  # Scan 50 random bamboo-orbifold graphs
  plumb scan --family bamboo-orbifold --count 50 --csv bamboo.csv
        """,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def common(sub: argparse.ArgumentParser):
        sub.add_argument("--verbose", action="store_true", help="Log progress to stderr")

    def computation(sub: argparse.ArgumentParser):
        sub.add_argument("--classes", default="all", help="'all' or comma-separated classes, components joined by ':'")
        sub.add_argument("--oracle", choices=["on", "off"], default="on", help="Run the counting and pairs oracles (default: on)")
        sub.add_argument("--box", type=int, default=None, help="Starting margin of the deep-point search")
        sub.add_argument("--root", default=None, help="Orbifold root node id")
        sub.add_argument("--workers", type=int, default=None, help="Worker processes (default: PLUMB_WORKERS or 1)")
        sub.add_argument("--timing", action="store_true", help="Include per-class timings")
        sub.add_argument("--out", default=None, help="Write the report to a file instead of stdout")

    validate = subparsers.add_parser("validate", help="Validate a graph file")
    validate.add_argument("path", help="Graph JSON file")
    common(validate)

    invariants = subparsers.add_parser("invariants", help="Per-class polynomial parts and invariants")
    invariants.add_argument("path", help="Graph JSON file")
    computation(invariants)
    common(invariants)

    surgery = subparsers.add_parser("surgery", help="Graphs and checks of surgeries along algebraic knots")
    surgery.add_argument("--knot", action="append", help="Newton pairs 'p,q;p,q' (repeatable)")
    surgery.add_argument("--p", type=int, default=None, help="Surgery numerator p > 0")
    surgery.add_argument("--q", type=int, default=1, help="Surgery denominator q > 0 (default: 1)")
    surgery.add_argument("--file", default=None, help="Surgery JSON {\"knots\": [...], \"p\": 7, \"q\": 2}")
    surgery.add_argument("--emit", choices=["graph", "invariants", "checks"], default="graph")
    computation(surgery)
    common(surgery)

    knot = subparsers.add_parser("knot", help="Invariants and resolution graph of an algebraic knot")
    knot.add_argument("--newton", default=None, help="Newton pairs 'p,q;p,q'")
    knot.add_argument("--file", default=None, help="Knot JSON {\"newton_pairs\": [[2, 3]]}")
    knot.add_argument("--out", default=None, help="Write the report to a file instead of stdout")
    common(knot)

    scan = subparsers.add_parser("scan", help="Compare P+_h(1) with the counting oracle over a family")
    scan.add_argument("--config", default=None, help="Scan configuration JSON")
    scan.add_argument("--family", choices=["seifert", "bamboo-orbifold", "surgery", "from-files"], default=None)
    scan.add_argument("--count", type=int, default=None, help="Number of bamboo-orbifold graphs")
    scan.add_argument("--seed", type=int, default=None, help="Seed of the bamboo-orbifold generator")
    scan.add_argument("--paths", nargs="*", default=None, help="Graph files or directories (from-files)")
    scan.add_argument("--workers", type=int, default=None, help="Worker processes")
    scan.add_argument("--out", default=None, help="Summary JSON path; counterexamples go to <out>.counterexamples/")
    scan.add_argument("--csv", default=None, help="CSV summary path")
    common(scan)

    return parser


async def dispatch(arguments: dict, settings: Settings) -> CommandResult:
    command = arguments["command"]
    if command == "validate":
        return await handle_validate(arguments)
    if command == "invariants":
        return await handle_invariants(arguments, settings)
    if command == "surgery":
        return await handle_surgery(arguments, settings)
    if command == "knot":
        return await handle_knot(arguments)
    return await handle_scan(arguments, settings)


def emit(result: CommandResult):
    if result.out_path:
        Path(result.out_path).write_text(result.output + "\n", encoding="utf-8")
        logger.info(f"💾 Report written to {result.out_path}")
    else:
        print(result.output)


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = Settings.from_env()
        settings = settings.with_overrides(workers=getattr(args, "workers", None))
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    setup_logging(logToStdout=False, level="INFO" if args.verbose else settings.log_level)

    try:
        result = asyncio.run(dispatch(vars(args), settings))
        emit(result)
        return result.exit_code
    except (GraphStructureError, GraphValidationError, ResolutionGraphError) as e:
        message = str(e)
    except (OSError, GraphFormatError, UnknownVertexError, KnotDataError, SurgeryDataError,
            ScanConfigError, LatticeError, QRouteError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except TermBudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INVALID_GRAPH


if __name__ == "__main__":
    sys.exit(main())
