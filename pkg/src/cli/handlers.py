"""
Command Handlers

One async handler per `plumb` subcommand. Handlers take the parsed arguments
as a dictionary and return a CommandResult holding the JSON report and the
exit code; domain errors propagate to the entry point, which maps them to
exit codes.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

from src.graph.parser import graph_to_dict, load_graph
from src.graph.plumbing import GraphStructureError, PlumbingGraph, require_valid, validate
from src.knots.algebraic import AlgebraicKnot, knot_from_document, parse_newton_pairs
from src.knots.resolution import knot_resolution_graph
from src.knots.surgery import (
    PLUS,
    SurgeryDataError,
    SurgerySpec,
    q_route,
    structure_checks,
    surgery_from_document,
    surgery_layout,
)
from src.lattice.discriminant import ClassKey
from src.lattice.lattice import LatticeData, lattice_data
from src.util.config import Settings
from src.zeta.invariants import InvariantReport, build_invariant_report

logger = logging.getLogger(__name__)


@dataclass
class CommandResult:
    """Report text for stdout (or --out) and the process exit code"""

    output: str
    exit_code: int = 0
    out_path: Optional[str] = None


def _dumps(value: Any) -> str:
    return json.dumps(value, indent=2, default=str)


def _read_json(path: str) -> Any:
    """Read a JSON document; IO errors propagate as OSError, bad JSON as ValueError"""
    return json.loads(Path(path).read_text(encoding="utf-8"))


def parse_classes(text: Optional[str], lattice: LatticeData) -> Optional[List[ClassKey]]:
    """
    Parse --classes: "all", or comma-separated classes whose components are
    separated by ":" (a single integer for cyclic groups).

    Raises:
        ValueError: On malformed class text
    """
    if text is None or text.strip() == "all":
        return None
    classes = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            components = tuple(int(c) for c in chunk.split(":"))
        except ValueError:
            raise ValueError(f"malformed class {chunk!r}, expected integers separated by ':'")
        if lattice.group.is_trivial:
            if any(components):
                raise ValueError(f"class {chunk!r} does not exist: H is trivial")
            components = ()
        classes.append(lattice.as_class(components))
    return classes


async def handle_validate(arguments: Dict[str, Any]) -> CommandResult:
    """
    Handle `plumb validate`: print the ValidationReport, exit 0 iff valid.
    """
    path = arguments["path"]
    try:
        graph = load_graph(path)
    except GraphStructureError as e:
        logger.warning(f"⚠️ {path}: [red]{e}[/red]")
        return CommandResult(_dumps({"valid": False, "failures": [str(e)]}), exit_code=1)

    report = validate(graph)
    logger.info(f"🔍 Validated {path}: valid={report.valid}, det={report.det}")
    return CommandResult(_dumps(report.to_dict()), exit_code=0 if report.valid else 1)


async def _invariant_report(
    graph: PlumbingGraph,
    arguments: Dict[str, Any],
    settings: Settings,
    root: Optional[str] = None,
) -> InvariantReport:
    require_valid(graph)
    lattice = lattice_data(graph)
    return await build_invariant_report(
        graph,
        classes=parse_classes(arguments.get("classes"), lattice),
        oracle=arguments.get("oracle", "on") == "on",
        margin=arguments.get("box") or settings.margin,
        root=arguments.get("root") or root,
        workers=settings.workers,
        term_cap=settings.term_cap,
        timing=bool(arguments.get("timing")),
    )


async def handle_invariants(arguments: Dict[str, Any], settings: Settings) -> CommandResult:
    """
    Handle `plumb invariants`: the InvariantReport of a graph file.
    """
    try:
        graph = load_graph(arguments["path"])
        report = await _invariant_report(graph, arguments, settings)
        logger.info(f"🎯 Invariants for {len(report.classes)} class(es), routes agree: {report.all_routes_agree}")
        return CommandResult(report.to_json(), out_path=arguments.get("out"))
    except Exception as e:
        logger.error(f"💥 Invariant computation failed: [red]{e}[/red]")
        raise


def surgery_spec_from_arguments(arguments: Dict[str, Any]) -> SurgerySpec:
    """
    A surgery from --file, or from repeated --knot with --p and --q.

    Raises:
        SurgeryDataError: On a missing or invalid p, q or knot list
        KnotDataError: On invalid Newton pairs
    """
    if arguments.get("file"):
        return surgery_from_document(_read_json(arguments["file"]))
    knots = tuple(AlgebraicKnot(tuple(parse_newton_pairs(text))) for text in arguments.get("knot") or [])
    p = arguments.get("p")
    if p is None:
        raise SurgeryDataError("surgery requires --p")
    q = arguments.get("q")
    return SurgerySpec(knots, p, 1 if q is None else q)


async def handle_surgery(arguments: Dict[str, Any], settings: Settings) -> CommandResult:
    """
    Handle `plumb surgery`: emit the surgery graph, its invariants, or the
    structure checks against the Alexander-polynomial route.
    """
    try:
        spec = surgery_spec_from_arguments(arguments)
        layout = surgery_layout(spec)
        emit = arguments.get("emit", "graph")
        logger.info(f"🔧 Surgery p/q = {spec.p}/{spec.q}, emitting {emit}")

        if emit == "graph":
            return CommandResult(_dumps(graph_to_dict(layout.graph)), out_path=arguments.get("out"))

        root = PLUS if PLUS in layout.graph.nodes else None
        report = await _invariant_report(layout.graph, arguments, settings, root=root)
        if emit == "invariants":
            return CommandResult(report.to_json(), out_path=arguments.get("out"))

        route = q_route(spec)
        checks = structure_checks(spec, report, route)
        result = {
            "surgery": spec.to_dict(),
            "layout": layout.to_dict(),
            "q_route": route.to_dict(),
            "structure": checks.to_dict(),
        }
        return CommandResult(_dumps(result), out_path=arguments.get("out"))
    except Exception as e:
        logger.error(f"💥 Surgery command failed: [red]{e}[/red]")
        raise


async def handle_knot(arguments: Dict[str, Any]) -> CommandResult:
    """
    Handle `plumb knot`: knot invariants and the resolution graph.
    """
    if arguments.get("file"):
        knot = knot_from_document(_read_json(arguments["file"]))
    else:
        knot = AlgebraicKnot(tuple(parse_newton_pairs(arguments.get("newton") or "")))
    knot_graph = knot_resolution_graph(knot)
    result = knot.to_dict()
    result["resolution"] = {"graph": graph_to_dict(knot_graph.graph), **knot_graph.to_dict()}
    logger.info(f"🪢 Knot {list(knot.newton_pairs)}: mu = {knot.mu}")
    return CommandResult(_dumps(result), out_path=arguments.get("out"))
