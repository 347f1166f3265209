import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ORACLE_BUDGET, naive_alpha, path_graph, random_graph
from mwisolve.errors import (
    AdjacentMembers,
    DeadVertex,
    InvalidKernelSolution,
    MalformedInput,
    ZeroWeight,
)
from mwisolve.graph import (
    GraphData,
    ReductionTrace,
    check_graph,
    contract_set,
    exclude_vertex,
    fold_pendant,
    include_vertex,
    load_graph,
    reconstruct_solution,
    revert_to,
    second_neighborhood,
)
from mwisolve.subsolve import mwis_weight


def test_load_p3():
    g = path_graph([1, 3, 1])
    assert g.alive_count == 3
    assert g.edge_count == 2
    assert g.neighbors(1) == [0, 2]
    check_graph(g)


def test_load_deduplicates_edges():
    g = load_graph(GraphData(2, [(0, 1), (0, 1), (1, 0)], [1, 1]))
    assert g.edge_count == 1


def test_load_rejects_self_loop():
    with pytest.raises(MalformedInput):
        load_graph(GraphData(2, [(0, 0)], [1, 1]))


def test_load_rejects_bad_endpoint():
    with pytest.raises(MalformedInput):
        load_graph(GraphData(2, [(0, 2)], [1, 1]))


def test_load_rejects_nonpositive_weight():
    with pytest.raises(ZeroWeight):
        load_graph(GraphData(1, [], [0]))
    with pytest.raises(ZeroWeight):
        load_graph(GraphData(1, [], [-3]))


def test_include_middle_of_p3_kills_everything():
    g = path_graph([1, 3, 1])
    trace = ReductionTrace(g)
    include_vertex(g, trace, 1)
    assert g.alive_count == 0
    assert trace.offset == 3


def test_include_isolated():
    g = load_graph(GraphData(1, [], [7]))
    trace = ReductionTrace(g)
    include_vertex(g, trace, 0)
    assert trace.offset == 7
    assert not g.is_alive(0)


def test_include_dead_vertex_raises():
    g = path_graph([1, 3, 1])
    trace = ReductionTrace(g)
    include_vertex(g, trace, 1)
    with pytest.raises(DeadVertex):
        include_vertex(g, trace, 0)


def test_exclude_keeps_neighbors():
    g = path_graph([1, 3, 1])
    trace = ReductionTrace(g)
    exclude_vertex(g, trace, 0)
    assert g.alive_vertices() == [1, 2]
    assert g.adjacent(1, 2)
    assert trace.offset == 0
    with pytest.raises(DeadVertex):
        exclude_vertex(g, trace, 0)


def test_contract_p3_endpoints():
    g = path_graph([1, 3, 2])
    trace = ReductionTrace(g)
    merged = contract_set(g, trace, [0, 2])
    assert g.weights[merged] == 3
    assert g.neighbors(merged) == [1]
    assert g.alive_vertices() == [1, merged]
    # the merge preserves the optimum
    assert mwis_weight(g, g.alive_vertices(), ORACLE_BUDGET) == 3
    check_graph(g)


def test_contract_p4_preserves_optimum():
    g = path_graph([2, 3, 2, 1])
    before = naive_alpha(g)
    trace = ReductionTrace(g)
    merged = contract_set(g, trace, [0, 2])
    assert g.weights[merged] == 4
    assert g.neighbors(merged) == [1, 3]
    assert naive_alpha(g) == before == 4


def test_contract_rejects_adjacent_members():
    g = path_graph([1, 1, 1])
    trace = ReductionTrace(g)
    with pytest.raises(AdjacentMembers):
        contract_set(g, trace, [0, 1])


def test_reconstruct_single_include():
    g = load_graph(GraphData(1, [], [7]))
    trace = ReductionTrace(g)
    include_vertex(g, trace, 0)
    assert reconstruct_solution(trace, set()) == {0}


def test_reconstruct_through_contraction():
    g = path_graph([2, 3, 2, 1])
    trace = ReductionTrace(g)
    merged = contract_set(g, trace, [0, 2])
    sol = reconstruct_solution(trace, {merged})
    assert sol == {0, 2}


def test_reconstruct_rejects_dependent_pair():
    g = path_graph([1, 3, 1])
    trace = ReductionTrace(g)
    with pytest.raises(InvalidKernelSolution):
        reconstruct_solution(trace, {0, 1})
    with pytest.raises(InvalidKernelSolution):
        reconstruct_solution(trace, {99})


def test_fold_reconstruction_both_ways():
    # pendant 3 (w=1) on 2 (w=2): kernel keeps 2 at reduced weight
    g = path_graph([2, 3, 2, 1])
    trace = ReductionTrace(g)
    fold_pendant(g, trace, kept=2, folded=3)
    assert g.weights[2] == 1
    assert trace.offset == 1
    assert reconstruct_solution(trace, {2}) == {2}
    assert reconstruct_solution(trace, {0}) == {0, 3}


def test_second_neighborhood_examples():
    g = path_graph([1, 1, 1, 1])
    assert second_neighborhood(g, 0) == {2}
    assert second_neighborhood(g, 1) == {3}
    star = load_graph(GraphData(4, [(0, 1), (0, 2), (0, 3)], [1, 1, 1, 1]))
    assert second_neighborhood(star, 0) == set()


def test_second_neighborhood_skips_dead():
    g = path_graph([1, 1, 1, 1])
    trace = ReductionTrace(g)
    exclude_vertex(g, trace, 1)
    assert second_neighborhood(g, 0) == set()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 12))
def test_random_mutations_roll_back_exactly(seed, n):
    rng = random.Random(seed)
    g = random_graph(rng, n, 0.4, 1, 50)
    snapshot = g.copy()
    trace = ReductionTrace(g)
    mark = trace.checkpoint()
    for _ in range(rng.randint(1, 8)):
        alive = g.alive_vertices()
        if not alive:
            break
        op = rng.randrange(3)
        if op == 0:
            include_vertex(g, trace, rng.choice(alive))
        elif op == 1:
            exclude_vertex(g, trace, rng.choice(alive))
        else:
            v = rng.choice(alive)
            spare = [u for u in alive if u != v and not g.adjacent(u, v)]
            if spare:
                contract_set(g, trace, [v, rng.choice(spare)])
        check_graph(g)
    revert_to(g, trace, mark)
    check_graph(g)
    assert g.alive_vertices() == snapshot.alive_vertices()
    assert g.weights == snapshot.weights
    assert [sorted(a) for a in g.adj] == [sorted(a) for a in snapshot.adj]
    assert trace.offset == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_reconstruction_weight_identity(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(3, 12), 0.35, 1, 40)
    original = g.copy()
    trace = ReductionTrace(g)
    for _ in range(rng.randint(1, 5)):
        alive = g.alive_vertices()
        if not alive:
            break
        v = rng.choice(alive)
        if rng.random() < 0.5:
            include_vertex(g, trace, v)
        else:
            exclude_vertex(g, trace, v)
    # any kernel independent set maps to an original one of offset-adjusted weight
    kernel_sol = []
    for v in g.alive_vertices():
        if not any(u in g.adj_set[v] for u in kernel_sol):
            kernel_sol.append(v)
    kw = sum(g.weights[v] for v in kernel_sol)
    sol = reconstruct_solution(trace, kernel_sol)
    assert original.is_independent(sol)
    assert original.set_weight(sol) == trace.offset + kw
