"""Minimum weight vertex cover local search with bulk removals.

Iterated remove/re-add search over a static graph (typically a kernel):
each round removes a few cover vertices chosen by two scores, re-covers the
exposed edges greedily, strips redundant vertices, and keeps the best cover
seen. The enhancement: when the dynamically-chosen removal vertex v has a
negative valid score (a certified improving swap, so v likely sits in an
optimal independent set), the whole inferred confining set of v leaves the
cover with it, widening the search basin in one move.

The complement of the best cover is the independent set answer.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .cit import CitBudget, DEFAULT_BUDGET, inferred_confining
from .errors import EmptyCover, NotInCover
from .graph import WeightedGraph

BMS_SAMPLES = 50

# Re-adding a vertex within this many iterations of its removal is barred
# (the add phase draws from the removed set's neighborhood, not the removed
# set itself); the walk probability takes a uniform add step instead of the
# greedy one; after a stretch of iterations without a new best, a kick evicts
# a batch of random cover vertices. All three break the deterministic
# remove/add cycles that otherwise trap the search on small dense instances.
TABU_TENURE = 3
WALK_PROBABILITY = 0.15
KICK_AFTER = 500


class SearchState:
    """Cover bookkeeping with incremental scores over a frozen graph."""

    def __init__(self, g: WeightedGraph, rng: random.Random):
        self.g = g
        self.rng = rng
        self.verts = g.alive_vertices()
        self.w = g.weights
        self.nbrs = {v: tuple(g.neighbors(v)) for v in self.verts}
        self.static_deg = {v: len(self.nbrs[v]) for v in self.verts}
        self.edges: list[tuple[int, int]] = []
        self.incident: dict[int, list[int]] = {v: [] for v in self.verts}
        for v in self.verts:
            for u in self.nbrs[v]:
                if v < u:
                    eid = len(self.edges)
                    self.edges.append((v, u))
                    self.incident[v].append(eid)
                    self.incident[u].append(eid)
        self.m = len(self.edges)
        self.n = len(self.verts)

        self.cover: set[int] = set()
        self.cover_weight = 0
        self.cover_cnt = [0] * self.m
        self.uncovered: set[int] = set(range(self.m))
        # sole[v]: edges covered by v alone; ucnt[v]: uncovered incident edges
        self.sole = {v: 0 for v in self.verts}
        self.ucnt = {v: len(self.incident[v]) for v in self.verts}
        # total weight of neighbors currently outside the cover
        self.out_nbr_w = {v: sum(self.w[u] for u in self.nbrs[v]) for v in self.verts}

        self.best_cover: set[int] = set()
        self.best_weight = 0
        self.iterations = 0
        self.cit_bulk_removals = 0

    def other(self, eid: int, v: int) -> int:
        a, b = self.edges[eid]
        return b if a == v else a

    def add(self, v: int) -> None:
        self.cover.add(v)
        self.cover_weight += self.w[v]
        for eid in self.incident[v]:
            self.cover_cnt[eid] += 1
            cnt = self.cover_cnt[eid]
            u = self.other(eid, v)
            if cnt == 1:
                self.uncovered.discard(eid)
                self.sole[v] += 1
                self.ucnt[v] -= 1
                self.ucnt[u] -= 1
            elif cnt == 2:
                self.sole[u] -= 1
        for u in self.nbrs[v]:
            self.out_nbr_w[u] -= self.w[v]

    def remove(self, v: int) -> None:
        self.cover.discard(v)
        self.cover_weight -= self.w[v]
        for eid in self.incident[v]:
            self.cover_cnt[eid] -= 1
            cnt = self.cover_cnt[eid]
            u = self.other(eid, v)
            if cnt == 0:
                self.uncovered.add(eid)
                self.sole[v] -= 1
                self.ucnt[v] += 1
                self.ucnt[u] += 1
            elif cnt == 1:
                self.sole[u] += 1
        for u in self.nbrs[v]:
            self.out_nbr_w[u] += self.w[v]

    def is_valid_cover(self) -> bool:
        return not self.uncovered

    def snapshot_best(self) -> None:
        if not self.uncovered and self.cover_weight < self.best_weight:
            self.best_cover = set(self.cover)
            self.best_weight = self.cover_weight


def loss(state: SearchState, v: int) -> Fraction:
    """Damage of removing v: solely-covered edges per unit weight; 0 iff redundant."""
    if v not in state.cover:
        raise NotInCover(f"vertex {v} is not in the cover")
    return Fraction(state.sole[v], state.w[v])


def valid_score(state: SearchState, v: int) -> int:
    """Weight delta of swapping v for its outside neighbors; negative means improving."""
    if v not in state.cover:
        raise NotInCover(f"vertex {v} is not in the cover")
    return state.out_nbr_w[v] - state.w[v]


def _argmin_loss(state: SearchState, candidates) -> int | None:
    best = None
    bs = bw = 0
    for v in candidates:
        s, w = state.sole[v], state.w[v]
        if best is None or s * bw < bs * w or (s * bw == bs * w and (w > bw or (w == bw and v < best))):
            best, bs, bw = v, s, w
    return best

def _argmin_valid_score(state: SearchState) -> int | None:
    best = None
    bscore = bw = 0
    for v in sorted(state.cover):
        score, w = state.out_nbr_w[v] - state.w[v], state.w[v]
        if best is None or score < bscore or (score == bscore and w > bw):
            best, bscore, bw = v, score, w
    return best


def construct_cover(g: WeightedGraph, rng: random.Random) -> set[int]:
    """Greedy cover by covered-edges-per-weight, then strip redundancy."""
    state = SearchState(g, rng)
    _construct_into(state)
    return set(state.cover)


def _construct_into(state: SearchState) -> None:
    while state.uncovered:
        best = None
        bg = bw = 0
        for v in state.verts:
            if v in state.cover or state.ucnt[v] == 0:
                continue
            gain, w = state.ucnt[v], state.w[v]
            if best is None or gain * bw > bg * w:
                best, bg, bw = v, gain, w
        state.add(best)
    _drop_redundant(state)


def _drop_redundant(state: SearchState) -> None:
    for v in sorted(state.cover, key=lambda x: (-state.w[x], x)):
        if state.sole[v] == 0:
            state.remove(v)


def remove_vertices(state: SearchState, g: WeightedGraph, budget: CitBudget = DEFAULT_BUDGET,
                    cit: bool = True, is_cache: dict | None = None) -> set[int]:
    """One removal phase; returns everything taken out of the cover.

    First the cheapest-damage vertex by loss. Then the dynamic pick: the
    minimum valid-score vertex if that score is negative (with its inferred
    confining set, when enabled), else a second loss pick. Finally, while the
    removed vertices' total degree stays under twice the average degree,
    one best-of-50-samples loss pick widens the hole.
    """
    if not state.cover:
        raise EmptyCover("removal phase needs a non-empty cover")
    removed: set[int] = set()

    r1 = _argmin_loss(state, sorted(state.cover))
    state.remove(r1)
    removed.add(r1)

    if state.cover:
        v = _argmin_valid_score(state)
        if valid_score_raw(state, v) < 0:
            state.remove(v)
            removed.add(v)
            if cit:
                if is_cache is None:
                    is_cache = {}
                bulk = is_cache.get(v)
                if bulk is None:
                    bulk = inferred_confining(g, v, budget)
                    is_cache[v] = bulk
                extra = [u for u in sorted(bulk) if u in state.cover]
                for u in extra:
                    state.remove(u)
                    removed.add(u)
                if extra:
                    state.cit_bulk_removals += 1
        else:
            r2 = _argmin_loss(state, sorted(state.cover))
            state.remove(r2)
            removed.add(r2)

    if state.cover:
        total_deg = sum(state.static_deg[r] for r in removed)
        if total_deg * state.n < 4 * state.m:
            pool = sorted(state.cover)
            samples = [pool[state.rng.randrange(len(pool))] for _ in range(BMS_SAMPLES)]
            r3 = _argmin_loss(state, samples)
            state.remove(r3)
            removed.add(r3)
    return removed


def valid_score_raw(state: SearchState, v: int) -> int:
    return state.out_nbr_w[v] - state.w[v]


@dataclass
class SearchResult:
    cover: frozenset[int]
    weight: int
    is_weight: int
    iterations: int
    cit_bulk_removals: int
    elapsed: float
    seed: int

    def independent_set(self, g: WeightedGraph) -> frozenset[int]:
        return frozenset(v for v in g.alive_vertices() if v not in self.cover)


def causal_search(
    g: WeightedGraph,
    cutoff_secs: float | None = None,
    seed: int = 0,
    cit: bool = True,
    budget: CitBudget = DEFAULT_BUDGET,
    max_iterations: int | None = None,
    validate: bool = False,
    target_cover_weight: int | None = None,
    tabu_tenure: int = TABU_TENURE,
    walk_probability: float = WALK_PROBABILITY,
    kick_after: int = KICK_AFTER,
) -> SearchResult:
    """Run the search until the wall-clock or iteration cutoff.

    ``target_cover_weight`` stops early once the best cover is at least that
    good (useful when the optimum is known). ``validate`` re-checks cover
    validity every iteration. All randomness comes from ``seed``.
    """
    if cutoff_secs is None and max_iterations is None:
        raise ValueError("need a cutoff: seconds, iterations, or both")
    start = time.perf_counter()
    rng = random.Random(seed)
    state = SearchState(g, rng)
    if state.m == 0:
        return SearchResult(frozenset(), 0, g.total_weight(), 0, 0, 0.0, seed)

    _construct_into(state)
    state.best_cover = set(state.cover)
    state.best_weight = state.cover_weight
    is_cache: dict = {}
    tabu_until = {v: -1 for v in state.verts}

    def done() -> bool:
        if max_iterations is not None and state.iterations >= max_iterations:
            return True
        if cutoff_secs is not None and time.perf_counter() - start >= cutoff_secs:
            return True
        if target_cover_weight is not None and state.best_weight <= target_cover_weight:
            return True
        return False

    stale = 0
    while not done():
        it = state.iterations = state.iterations + 1
        last_best = state.best_weight
        removed = remove_vertices(state, g, budget, cit=cit, is_cache=is_cache)
        if kick_after and stale >= kick_after and state.cover:
            kicks = max(6, len(state.cover) // 4)
            for _ in range(kicks):
                pool = sorted(state.cover)
                if not pool:
                    break
                v = pool[rng.randrange(len(pool))]
                state.remove(v)
                removed.add(v)
            stale = 0
        for r in removed:
            tabu_until[r] = it + tabu_tenure
        while state.uncovered:
            cands = set()
            for eid in state.uncovered:
                a, b = state.edges[eid]
                cands.add(a)
                cands.add(b)
            pool = sorted(v for v in cands if tabu_until[v] < it) or sorted(cands)
            if walk_probability and rng.random() < walk_probability:
                state.add(rng.choice(pool))
                continue
            best = []
            bg = bw = 0
            for v in pool:
                gain, w = state.ucnt[v], state.w[v]
                if not best or gain * bw > bg * w:
                    best, bg, bw = [v], gain, w
                elif gain * bw == bg * w:
                    best.append(v)
            state.add(rng.choice(best))
        _drop_redundant(state)
        if validate:
            assert state.is_valid_cover()
            assert state.cover_weight == sum(state.w[v] for v in state.cover)
        state.snapshot_best()
        stale = 0 if state.best_weight < last_best else stale + 1

    elapsed = time.perf_counter() - start
    total = g.total_weight()
    return SearchResult(
        cover=frozenset(state.best_cover),
        weight=state.best_weight,
        is_weight=total - state.best_weight,
        iterations=state.iterations,
        cit_bulk_removals=state.cit_bulk_removals,
        elapsed=elapsed,
        seed=seed,
    )
