import random

import pytest

from clat.graph import (
    Graph,
    build_graph,
    complete_bipartite_graph,
    complete_graph,
    is_connected,
    mobius_kantor_graph,
    petersen_graph,
)
from clat.lattice import build_hex_lattice


def random_cubic_graph(n: int, rng: random.Random, connected: bool = True) -> Graph:
    """Pairing-model cubic graph, rejecting loops, multi-edges and (optionally) disconnection."""
    if n % 2 or n < 4:
        raise ValueError("cubic graphs need an even order >= 4")
    while True:
        points = [v for v in range(n) for _ in range(3)]
        rng.shuffle(points)
        pairs = list(zip(points[::2], points[1::2]))
        norm = {(min(a, b), max(a, b)) for a, b in pairs}
        if any(a == b for a, b in pairs) or len(norm) != len(pairs):
            continue
        g = build_graph(n, norm)
        if not connected or is_connected(g):
            return g


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def named_cubic_graphs() -> dict[str, Graph]:
    return {
        "K4": complete_graph(4),
        "K3,3": complete_bipartite_graph(3, 3),
        "Petersen": petersen_graph(),
        "Mobius-Kantor": mobius_kantor_graph(),
        "H^t(2,2)": build_hex_lattice(2, 2).graph,
    }


@pytest.fixture(scope="session")
def cubic_corpus() -> dict[str, Graph]:
    return named_cubic_graphs()


@pytest.fixture(scope="session")
def random_cubics() -> list[Graph]:
    rng = random.Random(20260101)
    return [random_cubic_graph(rng.choice(range(4, 21, 2)), rng) for _ in range(20)]


# Acceptance lines collected by tests/test_acceptance.py, printed after the run.
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
