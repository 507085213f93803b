import logging
import sys

import numpy as np
import pytest

from betacuts.cuts import MINUS, PLUS, SignedClosedWalk
from betacuts.hypergraph import build_hypergraph

logging.getLogger("betacuts").setLevel(logging.ERROR)

# node ids for the five-edge example: v1..v5 -> 0..4, u1 -> 5, u4 -> 6
V1, V2, V3, V4, V5, U1, U4 = range(7)
EXAMPLE_EDGES = [{V1, U1, V2}, {V2, V3}, {V3, V4}, {V4, V5, U4}, {V5, V1, U1}]
EXAMPLE_WALK = SignedClosedWalk((V1, V2, V3, V4, V5), (0, 1, 2, 3, 4), (MINUS, PLUS, PLUS, MINUS, MINUS))


@pytest.fixture
def example_graph():
    return build_hypergraph(7, EXAMPLE_EDGES)


@pytest.fixture
def example_walk():
    return EXAMPLE_WALK


@pytest.fixture
def triangle():
    return build_hypergraph(3, [{0, 1}, {1, 2}, {2, 0}])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
