import itertools
import random
import sys

import pytest

from divsol.graph import UGraph
from divsol.interval import IntervalSet
from divsol.matroid import Graphic, Partition, Uniform


def rand_graph(rng, n, p=0.5, wmax=5, connected=False):
    while True:
        edges = [(u, v, rng.randint(1, wmax)) for u, v in itertools.combinations(range(n), 2)
                 if rng.random() < p]
        g = UGraph(n, edges)
        if not connected or (g.m and g.is_connected()):
            return g


def graph_with_m_edges(rng, m):
    """Random simple graph with exactly m edges on as few vertices as needed (plus slack)."""
    v = 2
    while v * (v - 1) // 2 < m:
        v += 1
    v += rng.randint(0, 2)
    pairs = rng.sample(list(itertools.combinations(range(v), 2)), m)
    return UGraph(v, [(a, b, 1) for a, b in pairs])


def rand_matroid(rng, n):
    kind = rng.choice(["uniform", "partition", "graphic"])
    if kind == "uniform":
        return Uniform(n, rng.randint(0, n))
    if kind == "partition":
        nb = rng.randint(1, 3)
        label = [rng.randint(0, nb) for _ in range(n)]  # label nb leaves an element uncovered
        blocks = [[e for e in range(n) if label[e] == b] for b in range(nb)]
        return Partition(n, blocks, [rng.randint(0, 2) for _ in range(nb)])
    return Graphic(graph_with_m_edges(rng, n))


def rand_intervals(rng, n, span=10, maxlen=3, wmax=5):
    ivs = []
    for _ in range(n):
        a = rng.randint(0, span)
        ivs.append((a, a + rng.randint(0, maxlen), rng.randint(1, wmax)))
    return IntervalSet(ivs)


@pytest.fixture
def rng():
    return random.Random(20261015)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
