"""
Command-Line Package

Async handlers behind the `plumb` subcommands and the scan families.

Main Components:
- handle_validate / handle_invariants / handle_surgery / handle_knot: per-command handlers
- ScanConfig / run_scan / handle_scan: the P+_h(1) versus oracle scan
- bamboo_graphs: seeded generator of bamboo-orbifold plumbing trees
"""

from .handlers import (
    CommandResult,
    handle_invariants,
    handle_knot,
    handle_surgery,
    handle_validate,
    parse_classes,
    surgery_spec_from_arguments,
)
from .scan import (
    CSV_HEADER,
    IntRange,
    ScanConfig,
    ScanConfigError,
    ScanSummary,
    bamboo_graphs,
    evaluate_instance,
    handle_scan,
    load_scan_config,
    run_scan,
    scan_instances,
)

__all__ = [
    "CommandResult",
    "handle_invariants",
    "handle_knot",
    "handle_surgery",
    "handle_validate",
    "parse_classes",
    "surgery_spec_from_arguments",
    "CSV_HEADER",
    "IntRange",
    "ScanConfig",
    "ScanConfigError",
    "ScanSummary",
    "bamboo_graphs",
    "evaluate_instance",
    "handle_scan",
    "load_scan_config",
    "run_scan",
    "scan_instances",
]
