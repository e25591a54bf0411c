"""
Shared fixtures: the E8 graph, the Z/7 surgery graph and its invariant report.

The Z/7 report is built once per session without the oracles: the counting
function over its eleven full coordinates does not finish within the default
term cap. The oracles run on the smaller graphs below.
"""

import pytest

import sys
from pathlib import Path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.graph.parser import load_graph
from src.graph.plumbing import PlumbingGraph
from src.knots.surgery import PLUS, surgery_spec
from src.zeta.invariants import sw_invariants

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def e8_graph():
    return load_graph(DATA / "e8.json")


@pytest.fixture(scope="session")
def z7_graph():
    return load_graph(DATA / "z7.json")


@pytest.fixture(scope="session")
def z7_spec():
    """(-7/2)-surgery along three trefoils"""
    return surgery_spec([[(2, 3)]] * 3, 7, 2)


@pytest.fixture(scope="session")
def z7_report(z7_graph):
    return sw_invariants(z7_graph, root=PLUS, oracle=False)


@pytest.fixture
def star_graph():
    """Seifert graph with central -2 and legs -2, -3, -3 (det 15)"""
    return PlumbingGraph.from_lists(
        [("c", -2), ("a", -2), ("b", -3), ("d", -3)],
        [("c", "a"), ("c", "b"), ("c", "d")],
    )


@pytest.fixture
def two_node_graph():
    """Two -2 nodes joined directly, each with legs -2 and -3 (det 13)"""
    return PlumbingGraph.from_lists(
        [("n1", -2), ("n1a", -2), ("n1b", -3), ("n2", -2), ("n2a", -2), ("n2b", -3)],
        [("n1", "n1a"), ("n1", "n1b"), ("n1", "n2"), ("n2", "n2a"), ("n2", "n2b")],
    )
