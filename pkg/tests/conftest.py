import random

import pytest

from maximals.graphs import BitGraph


def er_graph(rng: random.Random, n: int, p: float) -> BitGraph:
    """Seeded Erdos-Renyi graph used as oracle-check fodder."""
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return BitGraph.from_edges(n, edges)


def quadratic_is_mis(G: BitGraph, members) -> bool:
    """Definition check written the slow way: explicit double loops."""
    S = set(members)
    for u in S:
        for v in S:
            if u != v and G.has_edge(u, v):
                return False
    for v in range(G.n):
        if v in S:
            continue
        if not any(G.has_edge(v, u) for u in S):
            return False
    return True


def triangles_graph(k: int) -> BitGraph:
    edges = []
    for t in range(k):
        a = 3 * t
        edges += [(a, a + 1), (a, a + 2), (a + 1, a + 2)]
    return BitGraph.from_edges(3 * k, edges)


def matching_graph(n: int) -> BitGraph:
    assert n % 2 == 0
    return BitGraph.from_edges(n, [(2 * i, 2 * i + 1) for i in range(n // 2)])


def disjoint_union(G: BitGraph, H: BitGraph) -> BitGraph:
    rows = list(G.rows) + [r << G.n for r in H.rows]
    return BitGraph(rows)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
