import random

import pytest

from maximals.enumeration import (
    CountResult,
    EnumerationConfig,
    count_maximal_antichains,
    count_maximal_antichains_of,
    count_mis,
    count_mis_naive,
    enumerate_mis,
    ma_bound_convex,
)
from maximals.errors import BudgetExceeded, CapacityError, PreconditionViolation
from maximals.graphs import (
    BitGraph,
    comparability_graph,
    hypercube,
    h_n_graph,
    is_maximal_independent,
)
from maximals.posets import BooleanLattice, ConvexSubposet, random_convex_subposet

from conftest import disjoint_union, er_graph, matching_graph, triangles_graph


def collect_mis(G, workers=1):
    got = []
    res = enumerate_mis(G, EnumerationConfig(workers=workers), got.append)
    return res, got


# ---------------------------------------------------------------------------
# Enumeration basics


def test_enumerate_square():
    res, got = collect_mis(hypercube(2))
    assert res.count == 2
    assert sorted(tuple(s) for s in got) == [(0, 3), (1, 2)]


def test_enumerate_cube_structure():
    res, got = collect_mis(hypercube(3))
    assert res.count == 6 == len(got)
    sets = {frozenset(s) for s in got}
    assert frozenset([0, 3, 5, 6]) in sets  # even parity class
    assert frozenset([1, 2, 4, 7]) in sets  # odd parity class
    antipodal = {s for s in sets if len(s) == 2}
    assert antipodal == {frozenset([v, v ^ 7]) for v in range(4)}


def test_triangle_singletons():
    res, got = collect_mis(triangles_graph(1))
    assert res.count == 3
    assert sorted(tuple(s) for s in got) == [(0,), (1,), (2,)]


def test_empty_graph_counts_empty_set_once():
    res, got = collect_mis(BitGraph([]))
    assert res.count == 1 and len(got) == 1 and list(got[0]) == []


def test_single_vertex():
    assert count_mis_naive(BitGraph([0])).count == 1
    assert count_mis(BitGraph([0])).count == 1


def test_visitor_exactly_once_and_maximal():
    G = er_graph(random.Random(3), 12, 0.3)
    res, got = collect_mis(G)
    assert len(got) == res.count == len({frozenset(s) for s in got})
    assert all(is_maximal_independent(G, S) for S in got)


# ---------------------------------------------------------------------------
# Oracle agreement and invariances


def test_naive_examples():
    assert count_mis_naive(hypercube(1)).count == 2
    assert count_mis_naive(hypercube(2)).count == 2
    with pytest.raises(CapacityError):
        count_mis_naive(BitGraph([0] * 25))


def test_oracle_equivalence_random(rng):
    for i in range(60):
        n = rng.randint(1, 12)
        p = (0.1, 0.3, 0.5)[i % 3]
        G = er_graph(rng, n, p)
        assert count_mis(G).count == count_mis_naive(G).count


def test_oracle_equivalence_families():
    for G in (hypercube(3), hypercube(4), comparability_graph(3),
              triangles_graph(3), matching_graph(8), h_n_graph(5, 1)):
        assert count_mis(G).count == count_mis_naive(G).count


def test_permutation_invariance(rng):
    G = hypercube(4)
    want = count_mis(G).count
    for _ in range(20):
        perm = list(range(16))
        rng.shuffle(perm)
        assert count_mis(G.permuted(perm)).count == want


def test_disjoint_union_multiplicativity(rng):
    G = er_graph(rng, 8, 0.3)
    H = er_graph(rng, 7, 0.5)
    assert (
        count_mis(disjoint_union(G, H)).count
        == count_mis(G).count * count_mis(H).count
    )


# ---------------------------------------------------------------------------
# Equality families


def test_triangles_exact():
    for k in range(1, 5):
        assert count_mis(triangles_graph(k)).count == 3 ** k


def test_matching_exact():
    assert count_mis(matching_graph(6)).count == 8


def test_h_family_exact():
    assert count_mis(h_n_graph(5, 1)).count == 6


# ---------------------------------------------------------------------------
# Antichain counting


def test_antichain_counts_small():
    assert count_maximal_antichains(0).count == 1
    assert count_maximal_antichains(1).count == 2
    assert count_maximal_antichains(2).count == 3
    assert count_maximal_antichains(3).count == 7
    assert count_maximal_antichains(4).count == 29


def test_antichain_count_matches_naive():
    assert (
        count_maximal_antichains(4).count
        == count_mis_naive(comparability_graph(4)).count
    )


# ---------------------------------------------------------------------------
# Budgets, workers, determinism


def test_node_budget_aborts():
    with pytest.raises(BudgetExceeded) as info:
        count_mis(hypercube(4), EnumerationConfig(max_nodes=5))
    assert info.value.reason == "nodes"
    assert info.value.nodes_visited >= 5
    assert not hasattr(info.value, "count")


def test_time_budget_aborts():
    with pytest.raises(BudgetExceeded) as info:
        count_mis(hypercube(5), EnumerationConfig(max_seconds=0.0))
    assert info.value.reason == "time"


def test_budget_not_triggered_when_large():
    res = count_mis(hypercube(3), EnumerationConfig(max_nodes=10**6))
    assert res.count == 6


def test_worker_counts_agree():
    G = hypercube(4)
    base = count_mis(G)
    for w in (2, 4):
        par = count_mis(G, EnumerationConfig(workers=w, emit=False))
        assert par.count == base.count
        assert par.nodes_visited == base.nodes_visited


def test_workers_enumerate_exactly_once():
    G = comparability_graph(4)
    res, got = collect_mis(G, workers=4)
    assert res.count == 29 and len({frozenset(s) for s in got}) == 29


def test_budget_with_workers():
    with pytest.raises(BudgetExceeded):
        count_mis(hypercube(5), EnumerationConfig(max_nodes=10, workers=4))


def test_count_result_json():
    d = CountResult(6, 17, 0.0123).to_json_dict()
    assert d == {"count": "6", "nodes": 17, "elapsed_ms": 12}


# ---------------------------------------------------------------------------
# Convex-zone antichain bound


def test_ma_bound_b2():
    L = BooleanLattice(2)
    Z = ConvexSubposet(L, frozenset(range(4)))
    assert ma_bound_convex(Z) == 3
    assert count_maximal_antichains_of(Z).count == 3


def test_ma_bound_bipartite_base():
    L = BooleanLattice(2)
    Z = ConvexSubposet(L, frozenset({0b00, 0b01, 0b10}))
    assert ma_bound_convex(Z) == 2
    assert count_maximal_antichains_of(Z).count == 2


def test_ma_bound_single_level():
    L = BooleanLattice(4)
    Z = ConvexSubposet(L, frozenset(L.level_elements(2)))
    assert ma_bound_convex(Z) == 1


def test_ma_bound_empty():
    L = BooleanLattice(3)
    assert ma_bound_convex(ConvexSubposet(L, frozenset())) == 1


def test_ma_bound_dominates_exact(rng):
    for _ in range(50):
        n = rng.randint(0, 5)
        L = BooleanLattice(n)
        Z = random_convex_subposet(L, rng)
        bound = ma_bound_convex(Z)
        exact = count_maximal_antichains_of(Z).count
        assert exact <= bound
        assert bound * bound <= 1 << len(Z)
