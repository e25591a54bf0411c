"""
Invariant Report

Assembles, for every class h of H, the polynomial parts P+_h and P_h, the
normalized Seiberg-Witten invariant from the counting function at two deep
points, the unnormalized invariant, and the cross-route consistency checks.
Per-class work runs through an asyncio executor so classes can be computed in
separate processes; results are ordered by class before emission.
"""

import asyncio
import json
import logging
import time
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Tuple

from src.graph.orbifold import orbifold_graph
from src.graph.plumbing import NoNodesError, PlumbingGraph
from src.lattice.discriminant import ClassKey
from src.lattice.lattice import lattice_data
from src.lattice.rational import RationalVector, rational_string
from src.laurent.poly import Coefficient, coefficient_string
from src.util.config import DEFAULT_MARGIN, DEFAULT_TERM_CAP, DEFAULT_WORKERS
from .counting import normalized_sw_from_counting
from .polynomial import PolynomialPart, polynomial_part, polynomial_part_via_pairs, polynomial_plus, root_invariance
from .reduced import ReducedZeta, build_reduced_zeta

logger = logging.getLogger(__name__)


@dataclass
class ClassInvariants:
    """
    Invariants of one class h.

    Attributes:
        h: Class in H
        r: The representative r_h
        part: P+_h and P_h with multiplicities
        sw_norm: Normalized invariant (counting route, or P_h(1) without the oracle)
        sw: Unnormalized invariant -sw_norm - ((K + 2 r_h)^2 + |V|) / 8
        counting: sw_norm from the counting function at each deep point
        pairs_equal: Whether the pairs oracle reproduced P_h
        root_invariant: Whether P_h is the same for every orbifold root
        timing_ms: Wall time of the per-class polynomial work
    """

    h: ClassKey
    r: RationalVector
    part: PolynomialPart
    sw_norm: Fraction
    sw: Fraction
    counting: List[Fraction] = field(default_factory=list)
    pairs_equal: Optional[bool] = None
    root_invariant: Optional[bool] = None
    timing_ms: Optional[float] = None

    @property
    def p_plus_at_1(self) -> Coefficient:
        return self.part.plus.evaluate_at_one()

    @property
    def p_at_1(self) -> Coefficient:
        return self.part.weighted.evaluate_at_one()

    @property
    def countf_consistent(self) -> Optional[bool]:
        """Counting route is deep-point independent and equals P_h(1)"""
        if not self.counting:
            return None
        return all(value == self.counting[0] for value in self.counting) and self.counting[0] == self.p_at_1

    @property
    def plus_agrees(self) -> bool:
        return self.p_plus_at_1 == self.sw_norm

    @property
    def checks(self) -> Dict[str, Optional[bool]]:
        return {
            "countf": self.countf_consistent,
            "pairs_oracle": self.pairs_equal,
            "root_invariance": self.root_invariant,
            "plus_agrees": self.plus_agrees,
        }

    @property
    def consistent(self) -> bool:
        return all(value is not False for value in self.checks.values())

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        result = {
            "h": list(self.h),
            "r_h": self.r.to_dict(),
            "sw_norm": rational_string(self.sw_norm),
            "sw": rational_string(self.sw),
            "P_plus": self.part.plus.to_dict(),
            "P": self.part.weighted.to_dict(),
            "routes": {
                "P_at_1": rational_string(self.p_at_1),
                "P_plus_at_1": rational_string(self.p_plus_at_1),
                "counting": [rational_string(v) for v in self.counting],
            },
            "multiplicity_two_or_more": [
                {"exp": {"num": list(b), "den": self.part.den}, "coeff": coefficient_string(p), "s": s}
                for b, p, s in self.part.with_multiplicity_at_least(2)
            ],
            "checks": self.checks,
        }
        if include_timing:
            result["timing_ms"] = self.timing_ms
        return result


@dataclass
class InvariantReport:
    """Per-class invariants of a plumbing graph with its lattice summary"""

    det: int
    invariant_factors: Tuple[int, ...]
    nodes: Tuple[str, ...]
    root: str
    deep_points: List[RationalVector]
    classes: List[ClassInvariants]
    include_timing: bool = False

    def class_for(self, h: ClassKey) -> ClassInvariants:
        for entry in self.classes:
            if entry.h == tuple(h):
                return entry
        raise KeyError(f"class {tuple(h)} is not part of the report")

    @property
    def all_routes_agree(self) -> bool:
        return all(entry.consistent for entry in self.classes)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "det": self.det,
            "invariant_factors": list(self.invariant_factors),
            "nodes": list(self.nodes),
            "root": self.root,
            "deep_points": [x.to_dict() for x in self.deep_points],
            "all_routes_agree": self.all_routes_agree,
            "classes": [entry.to_dict(self.include_timing) for entry in self.classes],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=str)


def _class_work(
    zeta: ReducedZeta,
    h: ClassKey,
    root: Optional[str],
    oracle: bool,
    term_cap: int,
) -> Tuple[PolynomialPart, Optional[bool], bool, float]:
    """P+_h, P_h, the pairs oracle and root invariance for one class"""
    started = time.perf_counter()
    orbifold = orbifold_graph(zeta.lattice.graph, root)
    plus = polynomial_plus(zeta, h, term_cap)
    part = polynomial_part(zeta, h, orbifold, plus)
    pairs_equal = None
    if oracle:
        pairs_equal = polynomial_part_via_pairs(zeta, h, orbifold, term_cap) == part.weighted
    invariant = root_invariance(zeta, h, plus)
    return part, pairs_equal, invariant, (time.perf_counter() - started) * 1000.0


def _counting_work(graph: PlumbingGraph, x: RationalVector, term_cap: int) -> Dict[ClassKey, Fraction]:
    return normalized_sw_from_counting(lattice_data(graph), x, term_cap)


async def _run(executor: Optional[Executor], func, *args):
    if executor is None:
        return func(*args)
    loop = asyncio.get_running_loop()
    return await loop.run_in_executor(executor, func, *args)


async def build_invariant_report(
    graph: PlumbingGraph,
    classes: Optional[Iterable[ClassKey]] = None,
    oracle: bool = True,
    margin: int = DEFAULT_MARGIN,
    root: Optional[str] = None,
    workers: int = DEFAULT_WORKERS,
    term_cap: int = DEFAULT_TERM_CAP,
    timing: bool = False,
) -> InvariantReport:
    """
    Compute the invariant report of a graph.

    Args:
        graph: A negative definite plumbing tree with at least one node
        classes: Classes to report (default: all of H)
        oracle: Run the counting function and the pairs oracle
        margin: Starting margin of the deep-point search
        root: Orbifold root (default: smallest node id)
        workers: Worker processes; 1 computes inline
        term_cap: Budget for every enumeration
        timing: Include per-class timings in the serialized report

    Raises:
        NoNodesError: If the graph has no node
        GraphValidationError: If the graph is not a negative definite tree or root is not a node
        TermBudgetExceeded: If an enumeration exceeds term_cap
    """
    if not graph.nodes:
        raise NoNodesError()
    lattice = lattice_data(graph)
    orbifold = orbifold_graph(graph, root)
    zeta = build_reduced_zeta(graph, term_cap)
    wanted = sorted({lattice.as_class(h) for h in classes}) if classes is not None else lattice.classes()

    deep_points = []
    if oracle:
        first = lattice.deep_point(margin)
        deep_points = [first, lattice.shifted_deep_point(first)]

    logger.info(f"🚀 Computing invariants for [bold]{len(wanted)}[/bold] classes with {workers} worker(s)")
    executor = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        class_tasks = [_run(executor, _class_work, zeta, h, orbifold.root, oracle, term_cap) for h in wanted]
        counting_tasks = [_run(executor, _counting_work, graph, x, term_cap) for x in deep_points]
        results = await asyncio.gather(*class_tasks, *counting_tasks)
    finally:
        if executor is not None:
            executor.shutdown()

    class_results = results[:len(wanted)]
    counting_results = results[len(wanted):]

    entries = []
    size = len(graph)
    for h, (part, pairs_equal, invariant, elapsed) in zip(wanted, class_results):
        r = lattice.representative_r(h)
        counting = [values[h] for values in counting_results]
        sw_norm = counting[0] if counting else Fraction(part.weighted.evaluate_at_one())
        k = lattice.canonical_class + r + r
        sw = -sw_norm - (lattice.self_pairing(k) + size) / 8
        entries.append(ClassInvariants(
            h=h,
            r=r,
            part=part,
            sw_norm=Fraction(sw_norm),
            sw=sw,
            counting=counting,
            pairs_equal=pairs_equal,
            root_invariant=invariant,
            timing_ms=elapsed,
        ))
        if not entries[-1].consistent:
            logger.warning(f"⚠️ Route disagreement for class {h}: {entries[-1].checks}")

    report = InvariantReport(
        det=lattice.det,
        invariant_factors=lattice.group.invariant_factors,
        nodes=graph.nodes,
        root=orbifold.root,
        deep_points=deep_points,
        classes=entries,
        include_timing=timing,
    )
    logger.info(f"✅ Invariant report ready: all routes agree = {report.all_routes_agree}")
    return report


def sw_invariants(graph: PlumbingGraph, **kwargs) -> InvariantReport:
    """Synchronous wrapper around build_invariant_report"""
    return asyncio.run(build_invariant_report(graph, **kwargs))
