import itertools
import random

import pytest

from rpartite.graph import Graph, build_graph

_ACCEPTANCE_LINES = []


@pytest.fixture
def record_criterion():
    def record(number: int, name: str, passed: bool, detail: str = ""):
        status = "PASS" if passed else "FAIL"
        _ACCEPTANCE_LINES.append(f"[{status}] criterion {number}: {name} {detail}".rstrip())

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def brute_min_internal(G: Graph, r: int) -> int:
    """Test-side oracle: every assignment, no pinning, no bit tricks."""
    edges = G.edges()
    return min(
        sum(1 for u, v in edges if assign[u] == assign[v])
        for assign in itertools.product(range(r), repeat=G.n)
    )


def gnp(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return build_graph(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])
