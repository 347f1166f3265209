import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import naive_all_mwis, path_graph, random_graph
from mwisolve.errors import CapExceeded
from mwisolve.graph import GraphData, load_graph
from mwisolve.subsolve import (
    SubsolveBudget,
    enumerate_all_mwis,
    mwis_exact,
    mwis_weight,
)

K3 = load_graph(GraphData(3, [(0, 1), (0, 2), (1, 2)], [5, 2, 9]))


def test_empty_set():
    assert mwis_exact(K3, []) == (0, frozenset())
    assert enumerate_all_mwis(K3, []) == [frozenset()]


def test_clique_picks_heaviest():
    assert mwis_exact(K3, [0, 1, 2]) == (9, frozenset({2}))


def test_p3_optimum():
    g = path_graph([1, 3, 1])
    assert mwis_exact(g, g.alive_vertices()) == (3, frozenset({1}))


def test_p4_all_optima():
    g = path_graph([2, 3, 2, 1])
    assert enumerate_all_mwis(g, g.alive_vertices()) == [
        frozenset({0, 2}),
        frozenset({1, 3}),
    ]


def test_single_vertex():
    g = load_graph(GraphData(1, [], [4]))
    assert enumerate_all_mwis(g, [0]) == [frozenset({0})]


def test_p3_ties():
    g = path_graph([1, 3, 2])
    assert set(enumerate_all_mwis(g, g.alive_vertices())) == {
        frozenset({1}),
        frozenset({0, 2}),
    }
    # deterministic witness: lexicographically smallest optimum
    assert mwis_exact(g, g.alive_vertices()) == (3, frozenset({0, 2}))


def test_vertex_cap():
    g = load_graph(GraphData(5, [], [1] * 5))
    with pytest.raises(CapExceeded):
        mwis_exact(g, g.alive_vertices(), SubsolveBudget(max_vertices=4))


def test_node_cap():
    rng = random.Random(5)
    g = random_graph(rng, 16, 0.2)
    with pytest.raises(CapExceeded):
        mwis_weight(g, g.alive_vertices(), SubsolveBudget(max_vertices=16, max_subsets=2))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000), st.integers(1, 10), st.sampled_from([0.2, 0.5, 0.8]))
def test_matches_exhaustive_enumeration(seed, n, p):
    rng = random.Random(seed)
    g = random_graph(rng, n, p, 1, 30)
    best, sets = naive_all_mwis(g)
    w, witness = mwis_exact(g, g.alive_vertices())
    assert w == best
    assert witness in set(sets)
    assert witness == min(sets, key=lambda s: tuple(sorted(s)))
    assert set(enumerate_all_mwis(g, g.alive_vertices())) == set(sets)
    assert mwis_weight(g, g.alive_vertices()) == best


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_complement_duality(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(2, 10), 0.4, 1, 20)
    best, sets = naive_all_mwis(g)
    total = g.total_weight()
    cover_weights = [total - g.set_weight(s) for s in sets]
    # complements of optima are exactly the minimum weight vertex covers
    assert all(cw == total - best for cw in cover_weights)
    w, _ = mwis_exact(g, g.alive_vertices())
    assert total - w == min(cover_weights)


def test_restricted_subset_only_sees_induced_edges():
    g = path_graph([4, 10, 4])
    # without the middle vertex the endpoints are independent
    assert mwis_exact(g, [0, 2]) == (8, frozenset({0, 2}))
