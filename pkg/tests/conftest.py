import sys
from pathlib import Path

import numpy as np
import pytest

from tscm.netio import AttributeKind, Kind, build_network

sys.path.insert(0, str(Path(__file__).parent))


def pytest_configure(config):
    config.acceptance_results = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "acceptance_results", [])
    if not results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number, ok, detail in sorted(results):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")


def make_net(n, edges, values, kinds="num", ids=None, categories=None):
    """Small network helper; ``kinds`` is a kind string or one per column."""
    values = np.asarray(values, dtype=float).reshape(n, -1)
    r = values.shape[1]
    if isinstance(kinds, str):
        kinds = [kinds] * r
    akinds = []
    for t, k in enumerate(kinds):
        kind = Kind(k)
        cats = ()
        if kind is Kind.CATEGORICAL:
            cats = tuple(categories[t]) if categories else tuple(f"c{i}" for i in range(int(values[:, t].max()) + 1))
        akinds.append(AttributeKind(f"a{t}", kind, cats))
    ids = ids or [str(i) for i in range(n)]
    return build_network(ids, edges, akinds, values)


def clique(nodes):
    nodes = list(nodes)
    return [(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1:]]


# Toy friendship network with three communities. Node labels 1..15 map to
# indices 0..14. Attributes: sport, music, work, location.
TOY_EDGES = (
    clique([1, 2, 3, 4])
    + [(5, 3), (5, 4)]
    + [(5, 6), (5, 7), (5, 8), (6, 7), (6, 8), (7, 8), (7, 9), (8, 9), (6, 9), (9, 10), (7, 10), (8, 10)]
    + [(10, 11), (10, 12)]
    + clique([11, 12, 13, 14, 15])
)


def toy_values():
    rng = np.random.default_rng(2024)
    vals = rng.random((15, 4))
    for v in (1, 2, 3, 4):  # music lovers
        vals[v - 1, 1] = 0.9 + 0.01 * v
    for v in range(5, 11):  # colleagues living together
        vals[v - 1, 2] = 0.5 + 0.01 * (v % 3)
        vals[v - 1, 3] = 0.2 + 0.01 * (v % 2)
    for v in range(11, 16):  # sports fans
        vals[v - 1, 0] = 0.1 + 0.01 * (v % 2)
    return vals


@pytest.fixture
def toy():
    edges = [(a - 1, b - 1) for a, b in TOY_EDGES]
    return make_net(15, edges, toy_values(), ids=[str(i) for i in range(1, 16)])


@pytest.fixture
def two_cliques():
    """Two 4-cliques joined by the bridge 3-4."""
    edges = clique(range(4)) + clique(range(4, 8)) + [(3, 4)]
    return edges
