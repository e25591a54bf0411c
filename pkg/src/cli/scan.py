"""
Conjecture Scan

Runs the invariant pipeline over families of graphs and tabulates, per
instance and class, P+_h(1), P_h(1) and the counting-oracle value of
sw_h^norm. Instances where P+_h(1) differs from the oracle are dumped as
counterexamples next to the summary.

Families:
- seifert: one node with three or more single-vertex legs
- bamboo-orbifold: seeded random chains of 2-4 nodes with legs
- surgery: sets of algebraic knots crossed with ranges of p and q
- from-files: graph files
"""

import asyncio
import csv
import json
import logging
import random
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import gcd
from pathlib import Path
from typing import Any, Dict, Iterator, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, StrictInt, ValidationError, model_validator

from src.graph.parser import graph_to_dict, load_graph
from src.graph.plumbing import GraphFormatError, PlumbingGraph, validate
from src.knots.algebraic import KnotDataError
from src.knots.resolution import ResolutionGraphError
from src.knots.surgery import PLUS, SurgeryDataError, surgery_graph, surgery_spec
from src.laurent.division import TermBudgetExceeded
from src.lattice.rational import rational_string
from src.util.config import DEFAULT_TERM_CAP, Settings
from src.zeta.invariants import InvariantReport, sw_invariants
from src.zeta.reduced import estimate_expansion_terms
from .handlers import CommandResult

logger = logging.getLogger(__name__)

CSV_HEADER = ["det", "h", "p_plus_at_1", "p_at_1", "sw_oracle", "agree"]
DEFAULT_MAX_EXPANSION = 200_000
DEFAULT_BAMBOO_ATTEMPTS = 200


class ScanConfigError(Exception):
    """Raised when a scan configuration does not match the schema"""
    pass


class IntRange(BaseModel):
    """Inclusive integer range; start > stop is the empty range"""

    model_config = ConfigDict(extra="forbid")

    start: StrictInt
    stop: StrictInt

    def values(self) -> range:
        return range(self.start, self.stop + 1)


Pair = Tuple[StrictInt, StrictInt]


class ScanConfig(BaseModel):
    """
    Scan description, read from JSON.

    The family decides which parameters are used; the others keep their
    defaults.
    """

    model_config = ConfigDict(extra="forbid")

    family: Literal["seifert", "bamboo-orbifold", "surgery", "from-files"]

    # seifert
    central: IntRange = Field(default_factory=lambda: IntRange(start=-3, stop=-1))
    leg_count: IntRange = Field(default_factory=lambda: IntRange(start=3, stop=3))
    leg_weight: IntRange = Field(default_factory=lambda: IntRange(start=2, stop=5))

    # bamboo-orbifold
    count: int = Field(default=50, ge=0)
    seed: StrictInt = 0
    nodes: IntRange = Field(default_factory=lambda: IntRange(start=2, stop=4))
    chain_length: IntRange = Field(default_factory=lambda: IntRange(start=0, stop=1))

    # surgery
    knot_sets: List[List[List[Pair]]] = Field(default_factory=lambda: [[[(2, 3)]]])
    p: IntRange = Field(default_factory=lambda: IntRange(start=1, stop=5))
    q: IntRange = Field(default_factory=lambda: IntRange(start=1, stop=1))

    # from-files
    paths: List[str] = Field(default_factory=list)

    budget: PositiveInt = DEFAULT_TERM_CAP
    max_expansion: PositiveInt = DEFAULT_MAX_EXPANSION
    workers: Optional[PositiveInt] = None
    out: Optional[str] = None
    csv: Optional[str] = None

    @model_validator(mode="after")
    def _check_ranges(self) -> "ScanConfig":
        if self.leg_count.start < 3 and self.leg_count.start <= self.leg_count.stop:
            raise ValueError("leg_count must start at 3 or more")
        if self.leg_weight.start < 1 and self.leg_weight.start <= self.leg_weight.stop:
            raise ValueError("leg_weight holds absolute values and must start at 1 or more")
        if self.nodes.start < 1 and self.nodes.start <= self.nodes.stop:
            raise ValueError("nodes must start at 1 or more")
        if self.chain_length.start < 0:
            raise ValueError("chain_length must be nonnegative")
        return self


def load_scan_config(raw: Dict[str, Any]) -> ScanConfig:
    """
    Raises:
        ScanConfigError: On schema violations
    """
    try:
        return ScanConfig.model_validate(raw)
    except ValidationError as e:
        error = e.errors()[0]
        raise ScanConfigError(f"invalid scan config: {error['msg']} at {list(error['loc'])}")


# ----------------------------------------------------------------------
# Families


@dataclass
class ScanInstance:
    index: int
    label: str
    graph: Optional[PlumbingGraph]
    reason: str = ""


def seifert_graphs(config: ScanConfig) -> Iterator[ScanInstance]:
    """Star-shaped graphs with a central node and single-vertex legs"""
    index = 0
    for e0 in config.central.values():
        for k in config.leg_count.values():
            for legs in combinations_with_replacement(config.leg_weight.values(), k):
                vertices = [("c", e0)] + [(f"l{i}", -w) for i, w in enumerate(legs, start=1)]
                edges = [("c", f"l{i}") for i in range(1, k + 1)]
                graph = PlumbingGraph.from_lists(vertices, edges)
                label = f"seifert e0={e0} legs={list(legs)}"
                if validate(graph).valid:
                    yield ScanInstance(index, label, graph)
                else:
                    yield ScanInstance(index, label, None, "not negative definite")
                index += 1


def random_bamboo_graph(
    rng: random.Random,
    nodes: IntRange,
    chain_length: IntRange,
    leg_weight: IntRange,
) -> PlumbingGraph:
    """
    One random plumbing tree whose orbifold graph is a bamboo.

    Nodes n1..nk are joined by chains of (-2)/(-3)-vertices; end nodes carry two
    legs and inner nodes one, each leg one or two vertices.
    """
    k = rng.randint(nodes.start, nodes.stop)
    vertices: List[Tuple[str, int]] = []
    edges: List[Tuple[str, str]] = []

    for i in range(1, k + 1):
        legs = 3 if k == 1 else (2 if i in (1, k) else 1)
        node = f"n{i}"
        vertices.append((node, -rng.randint(1, legs + 2)))
        for leg in range(1, legs + 1):
            previous = node
            for step in range(1, rng.randint(1, 2) + 1):
                vertex_id = f"{node}.l{leg}.{step}"
                vertices.append((vertex_id, -rng.randint(leg_weight.start, leg_weight.stop)))
                edges.append((previous, vertex_id))
                previous = vertex_id
        if i > 1:
            previous = f"n{i - 1}"
            for step in range(1, rng.randint(chain_length.start, chain_length.stop) + 1):
                vertex_id = f"c{i - 1}.{step}"
                vertices.append((vertex_id, -rng.randint(2, 3)))
                edges.append((previous, vertex_id))
                previous = vertex_id
            edges.append((previous, node))
    return PlumbingGraph.from_lists(vertices, edges)


def bamboo_graphs(
    count: int,
    seed: int = 0,
    nodes: Optional[IntRange] = None,
    chain_length: Optional[IntRange] = None,
    leg_weight: Optional[IntRange] = None,
    max_expansion: int = DEFAULT_MAX_EXPANSION,
) -> List[PlumbingGraph]:
    """
    `count` negative definite bamboo-orbifold graphs, deterministic in the seed.

    Candidates that are not negative definite, or whose expansion estimate
    exceeds max_expansion, are redrawn.
    """
    nodes = nodes or IntRange(start=2, stop=4)
    chain_length = chain_length or IntRange(start=0, stop=1)
    leg_weight = leg_weight or IntRange(start=2, stop=4)
    rng = random.Random(seed)
    graphs = []
    attempts = 0
    while len(graphs) < count and attempts < DEFAULT_BAMBOO_ATTEMPTS * max(count, 1):
        attempts += 1
        graph = random_bamboo_graph(rng, nodes, chain_length, leg_weight)
        if not validate(graph).valid:
            continue
        if estimate_expansion_terms(graph) > max_expansion:
            continue
        graphs.append(graph)
    if len(graphs) < count:
        logger.warning(f"⚠️ Only {len(graphs)} of {count} bamboo graphs found after {attempts} attempts")
    return graphs


def surgery_instances(config: ScanConfig) -> Iterator[ScanInstance]:
    index = 0
    for knot_set in config.knot_sets:
        for p in config.p.values():
            for q in config.q.values():
                if p <= 0 or q <= 0 or gcd(p, q) != 1:
                    continue
                label = f"surgery knots={knot_set} p={p} q={q}"
                try:
                    yield ScanInstance(index, label, surgery_graph(surgery_spec(knot_set, p, q)))
                except (KnotDataError, SurgeryDataError, ResolutionGraphError) as e:
                    yield ScanInstance(index, label, None, str(e))
                index += 1


def file_instances(config: ScanConfig) -> Iterator[ScanInstance]:
    paths: List[Path] = []
    for raw in config.paths:
        path = Path(raw)
        paths.extend(sorted(path.glob("*.json")) if path.is_dir() else [path])
    for index, path in enumerate(paths):
        try:
            yield ScanInstance(index, str(path), load_graph(path))
        except (OSError, GraphFormatError) as e:
            yield ScanInstance(index, str(path), None, str(e))


def scan_instances(config: ScanConfig) -> List[ScanInstance]:
    if config.family == "seifert":
        return list(seifert_graphs(config))
    if config.family == "bamboo-orbifold":
        graphs = bamboo_graphs(
            config.count,
            config.seed,
            config.nodes,
            config.chain_length,
            config.leg_weight,
            config.max_expansion,
        )
        return [ScanInstance(i, f"bamboo seed={config.seed} #{i}", g) for i, g in enumerate(graphs)]
    if config.family == "surgery":
        return list(surgery_instances(config))
    return list(file_instances(config))


# ----------------------------------------------------------------------
# Evaluation


@dataclass
class ScanRow:
    det: int
    h: str
    p_plus_at_1: str
    p_at_1: str
    sw_oracle: str
    agree: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "det": self.det,
            "h": self.h,
            "p_plus_at_1": self.p_plus_at_1,
            "p_at_1": self.p_at_1,
            "sw_oracle": self.sw_oracle,
            "agree": self.agree,
        }


@dataclass
class InstanceOutcome:
    """
    Result of one scan instance.

    Attributes:
        status: "ok", "skipped" (budget) or "invalid"
        plus_equals_part: P_h = P+_h for every class
        report: Serialized invariant report, kept only for counterexamples
    """

    index: int
    label: str
    status: str
    reason: str = ""
    det: Optional[int] = None
    rows: List[ScanRow] = field(default_factory=list)
    plus_equals_part: Optional[bool] = None
    report: Optional[Dict[str, Any]] = None
    graph: Optional[Dict[str, Any]] = None

    @property
    def agrees(self) -> bool:
        return all(row.agree for row in self.rows)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "label": self.label,
            "status": self.status,
            "reason": self.reason,
            "det": self.det,
            "agree": self.agrees if self.status == "ok" else None,
            "plus_equals_part": self.plus_equals_part,
        }


def _class_label(h: Tuple[int, ...]) -> str:
    return ":".join(str(c) for c in h) if h else "0"


def _rows(report: InvariantReport) -> List[ScanRow]:
    rows = []
    for entry in report.classes:
        oracle = entry.counting[0] if entry.counting else entry.sw_norm
        rows.append(ScanRow(
            det=report.det,
            h=_class_label(entry.h),
            p_plus_at_1=rational_string(entry.p_plus_at_1),
            p_at_1=rational_string(entry.p_at_1),
            sw_oracle=rational_string(oracle),
            agree=entry.p_plus_at_1 == oracle,
        ))
    return rows


def evaluate_instance(instance: ScanInstance, budget: int, max_expansion: int) -> InstanceOutcome:
    """Invariants of one instance; budget overruns are skips, not failures"""
    if instance.graph is None:
        return InstanceOutcome(instance.index, instance.label, "invalid", instance.reason)
    graph = instance.graph
    report_of_validation = validate(graph)
    if not report_of_validation.zeta_pipeline_available:
        reason = "; ".join(report_of_validation.failures) or "reduction requires at least one node"
        return InstanceOutcome(instance.index, instance.label, "invalid", reason, det=report_of_validation.det)

    estimate = estimate_expansion_terms(graph)
    if estimate > max_expansion:
        return InstanceOutcome(
            instance.index, instance.label, "skipped",
            f"expansion estimate {estimate} exceeds {max_expansion}", det=report_of_validation.det,
        )
    root = PLUS if PLUS in graph.nodes else None
    try:
        report = sw_invariants(graph, oracle=True, root=root, term_cap=budget)
    except TermBudgetExceeded as e:
        return InstanceOutcome(instance.index, instance.label, "skipped", str(e), det=report_of_validation.det)

    outcome = InstanceOutcome(
        index=instance.index,
        label=instance.label,
        status="ok",
        det=report.det,
        rows=_rows(report),
        plus_equals_part=all(entry.part.weighted == entry.part.plus for entry in report.classes),
    )
    if not outcome.agrees:
        outcome.report = report.to_dict()
        outcome.graph = graph_to_dict(graph)
    return outcome


@dataclass
class ScanSummary:
    family: str
    outcomes: List[InstanceOutcome]

    def count(self, status: str) -> int:
        return sum(1 for o in self.outcomes if o.status == status)

    @property
    def counterexamples(self) -> List[InstanceOutcome]:
        return [o for o in self.outcomes if o.status == "ok" and not o.agrees]

    @property
    def rows(self) -> List[ScanRow]:
        return [row for o in self.outcomes for row in o.rows]

    def to_dict(self) -> Dict[str, Any]:
        evaluated = [o for o in self.outcomes if o.status == "ok"]
        return {
            "family": self.family,
            "instances": len(self.outcomes),
            "evaluated": len(evaluated),
            "skipped": self.count("skipped"),
            "invalid": self.count("invalid"),
            "agreeing": sum(1 for o in evaluated if o.agrees),
            "plus_equals_part": sum(1 for o in evaluated if o.plus_equals_part),
            "counterexamples": [o.label for o in self.counterexamples],
            "outcomes": [o.to_dict() for o in self.outcomes],
            "rows": [row.to_dict() for row in self.rows],
        }


async def run_scan(config: ScanConfig, workers: int = 1) -> ScanSummary:
    """Evaluate every instance of the configured family, ordered by instance index"""
    instances = scan_instances(config)
    logger.info(f"🔭 Scanning [bold]{len(instances)}[/bold] {config.family} instance(s) with {workers} worker(s)")

    executor: Executor = ProcessPoolExecutor(max_workers=workers) if workers > 1 else ThreadPoolExecutor(max_workers=1)
    loop = asyncio.get_running_loop()
    try:
        tasks = [
            loop.run_in_executor(executor, evaluate_instance, instance, config.budget, config.max_expansion)
            for instance in instances
        ]
        outcomes = await asyncio.gather(*tasks)
    finally:
        executor.shutdown()

    summary = ScanSummary(family=config.family, outcomes=sorted(outcomes, key=lambda o: o.index))
    for outcome in summary.counterexamples:
        logger.warning(f"🚨 Counterexample candidate: [red]{outcome.label}[/red]")
    logger.info(f"✅ Scan finished: {len(summary.counterexamples)} counterexample(s)")
    return summary


def write_csv(summary: ScanSummary, path: str):
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_HEADER)
        for row in summary.rows:
            writer.writerow([row.det, row.h, row.p_plus_at_1, row.p_at_1, row.sw_oracle, str(row.agree).lower()])


def dump_counterexamples(summary: ScanSummary, out: str) -> List[str]:
    """Write graph + report JSON of every counterexample under <out>.counterexamples/"""
    written = []
    if not summary.counterexamples:
        return written
    directory = Path(f"{out}.counterexamples")
    directory.mkdir(parents=True, exist_ok=True)
    for outcome in summary.counterexamples:
        path = directory / f"{outcome.index:04d}.json"
        path.write_text(
            json.dumps({"label": outcome.label, "graph": outcome.graph, "report": outcome.report}, indent=2, default=str),
            encoding="utf-8",
        )
        written.append(str(path))
    return written


def _config_from_arguments(arguments: Dict[str, Any]) -> ScanConfig:
    raw: Dict[str, Any] = {}
    if arguments.get("config"):
        raw = json.loads(Path(arguments["config"]).read_text(encoding="utf-8"))
        if not isinstance(raw, dict):
            raise ScanConfigError("scan config must be a JSON object")
    for key in ("family", "count", "seed", "out", "csv", "paths"):
        if arguments.get(key) is not None:
            raw[key] = arguments[key]
    if "family" not in raw:
        raise ScanConfigError("scan needs --family or a config file with a family")
    return load_scan_config(raw)


async def handle_scan(arguments: Dict[str, Any], settings: Settings) -> CommandResult:
    """
    Handle `plumb scan`: summary JSON, optional CSV and counterexample dumps.
    """
    try:
        config = _config_from_arguments(arguments)
        summary = await run_scan(config, workers=config.workers or settings.workers)
        if config.csv:
            write_csv(summary, config.csv)
        result = summary.to_dict()
        if config.out:
            result["counterexample_files"] = dump_counterexamples(summary, config.out)
        return CommandResult(json.dumps(result, indent=2, default=str), out_path=config.out)
    except Exception as e:
        logger.error(f"💥 Scan failed: [red]{e}[/red]")
        raise
