"""Exact branch and reduce search with weight packing constraints.

Each node reduces its graph, settles the constraint store, bounds, and then
branches on a maximum-degree vertex v: either v joins the solution together
with its whole confining set, or v stays out together with its inferred
covering set. Both branch assumptions are recorded as linear inequalities over
0-1 exclusion indicators (x_z = 1 means z is kept out of the independent set);
violated inequalities prune, tight ones force vertices in or out.

Constraints are scoped to the search path: every branch works on a clone of
its parent's store, kept in sync with the shared event trace.
"""

from __future__ import annotations

import enum
import sys
import time
from dataclasses import dataclass, field

from .cit import CitBudget, DEFAULT_BUDGET, compute_confining, inferred_covering
from .errors import DegenerateConstraint
from .graph import (
    ContractSet,
    ExcludeVertex,
    Fold,
    IncludeVertex,
    ReductionTrace,
    WeightedGraph,
    exclude_vertex,
    include_vertex,
    reconstruct_solution,
    revert_to,
)
from .reduce import causal_reduce


@dataclass
class PackingConstraint:
    """sum of coeff[z] * x_z < rhs, coefficients frozen at creation time."""

    terms: dict[int, int]
    rhs: int

    def clone(self) -> PackingConstraint:
        return PackingConstraint(dict(self.terms), self.rhs)


class ConstraintStore:
    """Indexed collection of packing constraints, synced against a trace."""

    __slots__ = ("constraints", "index", "synced")

    def __init__(self):
        self.constraints: list[PackingConstraint | None] = []
        self.index: dict[int, set[int]] = {}
        self.synced = 0

    def clone(self) -> ConstraintStore:
        out = ConstraintStore.__new__(ConstraintStore)
        out.constraints = [c.clone() if c else None for c in self.constraints]
        out.index = {v: set(ids) for v, ids in self.index.items()}
        out.synced = self.synced
        return out

    def add(self, c: PackingConstraint) -> None:
        ci = len(self.constraints)
        self.constraints.append(c)
        for z in c.terms:
            self.index.setdefault(z, set()).add(ci)

    def active(self):
        return [c for c in self.constraints if c is not None]

    def _drop(self, ci: int) -> None:
        c = self.constraints[ci]
        if c is None:
            return
        for z in c.terms:
            ids = self.index.get(z)
            if ids:
                ids.discard(ci)
                if not ids:
                    del self.index[z]
        self.constraints[ci] = None


def update_on_include(store: ConstraintStore, z: int) -> None:
    """z joined the independent set: its variable disappears, bounds stand."""
    for ci in store.index.pop(z, ()):
        c = store.constraints[ci]
        if c is not None:
            c.terms.pop(z, None)


def update_on_exclude(store: ConstraintStore, z: int) -> None:
    """z was kept out: its variable is fixed at 1, tightening the bound."""
    for ci in store.index.pop(z, ()):
        c = store.constraints[ci]
        if c is not None:
            coeff = c.terms.pop(z, None)
            if coeff is not None:
                c.rhs -= coeff


def _merge_terms(store: ConstraintStore, members, merged: int) -> None:
    """A contraction ties the members' fates together: one shared variable."""
    hit: set[int] = set()
    for z in members:
        hit |= store.index.pop(z, set())
    for ci in hit:
        c = store.constraints[ci]
        if c is None:
            continue
        moved = 0
        for z in members:
            coeff = c.terms.pop(z, None)
            if coeff is not None:
                moved += coeff
        if moved:
            c.terms[merged] = c.terms.get(merged, 0) + moved
            store.index.setdefault(merged, set()).add(ci)


def _drop_mentioning(store: ConstraintStore, z: int) -> None:
    for ci in list(store.index.get(z, ())):
        store._drop(ci)


def sync_store(store: ConstraintStore, trace: ReductionTrace) -> None:
    """Replay trace events the store has not seen yet."""
    events = trace.events
    while store.synced < len(events):
        ev = events[store.synced]
        store.synced += 1
        if isinstance(ev, IncludeVertex):
            update_on_include(store, ev.v)
            for u in ev.removed:
                update_on_exclude(store, u)
        elif isinstance(ev, ExcludeVertex):
            update_on_exclude(store, ev.v)
        elif isinstance(ev, ContractSet):
            _merge_terms(store, ev.members, ev.merged)
        elif isinstance(ev, Fold):
            # The folded vertex's state is anti-correlated with the kept one;
            # that is outside the representable form, so drop those constraints.
            _drop_mentioning(store, ev.folded)


def make_include_constraints(g: WeightedGraph, v: int, s_v) -> list[PackingConstraint]:
    """Branch assumption "v is in the solution": no heavier neighbor swap.

    For every neighbor u at least as heavy as v, the vertices of N(u) outside
    N[v] must retain enough weight in the solution to beat trading v for u.
    """
    out = []
    closed_v = set(g.neighbors(v))
    closed_v.add(v)
    wv = g.weights[v]
    for u in g.neighbors(v):
        wu = g.weights[u]
        if wu < wv:
            continue
        ground = [z for z in g.neighbors(u) if z not in closed_v]
        if not ground:
            continue
        total = sum(g.weights[z] for z in ground)
        out.append(PackingConstraint({z: g.weights[z] for z in ground}, total - (wu - wv)))
    return out


def make_exclude_constraint(g: WeightedGraph, v: int) -> PackingConstraint:
    """Branch assumption "v stays out": its neighborhood must out-earn it."""
    nbrs = g.neighbors(v)
    if not nbrs:
        raise DegenerateConstraint(f"vertex {v} is isolated; it is never excluded")
    total = sum(g.weights[z] for z in nbrs)
    return PackingConstraint({z: g.weights[z] for z in nbrs}, total - g.weights[v])


class CheckResult(enum.Enum):
    PRUNED = "pruned"
    SIMPLIFIED = "simplified"
    CLEAN = "clean"


def _forced_inclusion_constraints(g: WeightedGraph, members) -> list[PackingConstraint]:
    """Constraints guarding a freshly forced-in set, like the branch ones."""
    s = set(members)
    closed = g.closed_neighborhood(s)
    out = []
    for p in sorted(g.open_neighborhood(s)):
        w_ns = sum(g.weights[x] for x in g.adj_set[p] & s)
        if g.weights[p] < w_ns:
            continue
        ground = [z for z in g.neighbors(p) if z not in closed]
        if not ground:
            continue
        total = sum(g.weights[z] for z in ground)
        out.append(PackingConstraint({z: g.weights[z] for z in ground}, total - (g.weights[p] - w_ns)))
    return out


def check_constraints(g: WeightedGraph, store: ConstraintStore, trace: ReductionTrace) -> CheckResult:
    """Scan the store until a violation, or no rule fires on a full pass.

    (a) a non-positive bound kills the branch. (b) a bound no term can pay
    forces every term vertex into the solution, if they are independent, else
    kills the branch. (c) a vertex whose in-constraint neighbors already cover
    the bound is forced out. Forced moves cascade through the store.
    """
    changed = False
    restart = True
    while restart:
        restart = False
        for ci, c in enumerate(store.constraints):
            if c is None:
                continue
            if c.rhs <= 0:
                return CheckResult.PRUNED
            if not c.terms:
                store._drop(ci)
                continue
            if c.rhs <= min(c.terms.values()):
                members = sorted(c.terms)
                if not g.is_independent(members):
                    return CheckResult.PRUNED
                new_cs = _forced_inclusion_constraints(g, members)
                for z in members:
                    include_vertex(g, trace, z)
                sync_store(store, trace)
                for nc in new_cs:
                    store.add(nc)
                changed = True
                restart = True
                break
            sums: dict[int, int] = {}
            for z, coeff in c.terms.items():
                for u in g.neighbors(z):
                    if u not in c.terms:
                        sums[u] = sums.get(u, 0) + coeff
            forced = sorted(u for u, s in sums.items() if s >= c.rhs)
            if forced:
                u = forced[0]
                nc = make_exclude_constraint(g, u)
                exclude_vertex(g, trace, u)
                sync_store(store, trace)
                store.add(nc)
                changed = True
                restart = True
                break
    return CheckResult.SIMPLIFIED if changed else CheckResult.CLEAN


# -- bounds ---------------------------------------------------------------------


def greedy_lower_bound(g: WeightedGraph) -> tuple[int, frozenset[int]]:
    """Take vertices by best weight-per-blocked-vertex ratio; exact arithmetic."""
    alive = list(g.alive)
    deg = list(g.deg)
    chosen = []
    total = 0
    live = [v for v in range(len(alive)) if alive[v]]
    while live:
        best = -1
        bw = bd = 0
        for v in live:
            wv, dv = g.weights[v], deg[v]
            if best < 0 or wv * (bd + 1) > bw * (dv + 1) or (
                wv * (bd + 1) == bw * (dv + 1) and wv > bw
            ):
                best, bw, bd = v, wv, dv
        chosen.append(best)
        total += bw
        dead = [best] + [u for u in g.adj[best] if alive[u]]
        for x in dead:
            alive[x] = False
        for x in dead:
            for y in g.adj[x]:
                if alive[y]:
                    deg[y] -= 1
        live = [v for v in live if alive[v]]
    return total, frozenset(chosen)


def clique_cover_upper_bound(g: WeightedGraph) -> int:
    """Greedy clique partition; one vertex per clique bounds any solution."""
    order = sorted(g.alive_vertices(), key=lambda v: (-g.weights[v], v))
    cliques: list[list[int]] = []
    bound = 0
    for v in order:
        nb = g.adj_set[v]
        for cl in cliques:
            if all(u in nb for u in cl):
                cl.append(v)
                break
        else:
            cliques.append([v])
            bound += g.weights[v]
    return bound


# -- search ----------------------------------------------------------------------


@dataclass
class SolverReport:
    best_weight: int
    solution: frozenset[int]
    optimal: bool
    nodes: int = 0
    prunes_bound: int = 0
    prunes_constraint: int = 0
    simplifications: int = 0
    elapsed: float = 0.0

    def stats_dict(self) -> dict:
        return {
            "best_weight": self.best_weight,
            "optimal": self.optimal,
            "nodes": self.nodes,
            "prunes_bound": self.prunes_bound,
            "prunes_constraint": self.prunes_constraint,
            "simplifications": self.simplifications,
            "elapsed_secs": round(self.elapsed, 4),
        }


class _Timeout(Exception):
    pass


class _Search:
    def __init__(self, g, trace, budget, use_constraints, branching, deadline):
        self.g = g
        self.trace = trace
        self.budget = budget
        self.use_constraints = use_constraints
        self.branching = branching
        self.deadline = deadline
        self.best_weight = 0
        self.best_solution: frozenset[int] = frozenset()
        self.nodes = 0
        self.prunes_bound = 0
        self.prunes_constraint = 0
        self.simplifications = 0

    def _offer(self, weight: int, kernel_set) -> None:
        if weight > self.best_weight:
            self.best_weight = weight
            self.best_solution = frozenset(reconstruct_solution(self.trace, kernel_set))

    def _branch_vertex(self) -> int:
        g = self.g
        best = -1
        bd = bw = -1
        for v in g.alive_vertices():
            d, w = g.deg[v], g.weights[v]
            if d > bd or (d == bd and w > bw):
                best, bd, bw = v, d, w
        return best

    def node(self, store: ConstraintStore | None) -> None:
        g, trace = self.g, self.trace
        self.nodes += 1
        if time.perf_counter() > self.deadline:
            raise _Timeout
        mark = trace.checkpoint()
        try:
            while True:
                causal_reduce(g, self.budget, trace=trace)
                if store is not None:
                    sync_store(store, trace)
                    res = check_constraints(g, store, trace)
                    if res is CheckResult.PRUNED:
                        self.prunes_constraint += 1
                        return
                    if res is CheckResult.SIMPLIFIED:
                        self.simplifications += 1
                        continue
                if g.alive_count == 0:
                    self._offer(trace.offset, ())
                    return
                lb_w, lb_set = greedy_lower_bound(g)
                self._offer(trace.offset + lb_w, lb_set)
                if trace.offset + clique_cover_upper_bound(g) <= self.best_weight:
                    self.prunes_bound += 1
                    return
                v = self._branch_vertex()
                if self.branching == "confining":
                    conf = compute_confining(g, v, self.budget)
                    if conf.unconfined:
                        exclude_vertex(g, trace, v)
                        self.simplifications += 1
                        continue
                    s_v = sorted(conf.confining_set)
                    ic_v = sorted(inferred_covering(g, v, self.budget))
                else:
                    s_v = [v]
                    ic_v = [v]
                break

            inc_store = None
            exc_eq = None
            if store is not None:
                inc_store = store.clone()
                for c in make_include_constraints(g, v, s_v):
                    inc_store.add(c)
                exc_eq = make_exclude_constraint(g, v)
            branch_mark = trace.checkpoint()
            for z in s_v:
                include_vertex(g, trace, z)
            self.node(inc_store)
            revert_to(g, trace, branch_mark)

            exc_store = None
            if store is not None:
                exc_store = store.clone()
                exc_store.add(exc_eq)
            for z in ic_v:
                exclude_vertex(g, trace, z)
            self.node(exc_store)
            revert_to(g, trace, branch_mark)
        finally:
            revert_to(g, trace, mark)


def solve(
    g: WeightedGraph,
    time_limit: float = 1000.0,
    constraints: bool = True,
    branching: str = "confining",
    budget: CitBudget = DEFAULT_BUDGET,
) -> SolverReport:
    """Find a maximum weight independent set of g, or the best within the limit.

    The graph is restored to its input state before returning; the reported
    solution lives in the input graph's ids.
    """
    if time_limit <= 0:
        raise ValueError("time limit must be positive")
    if branching not in ("confining", "plain"):
        raise ValueError(f"unknown branching mode {branching!r}")
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10 * len(g) + 10000))
    trace = ReductionTrace(g)
    start = time.perf_counter()
    search = _Search(g, trace, budget, constraints, branching, start + time_limit)
    optimal = True
    try:
        search.node(ConstraintStore() if constraints else None)
    except _Timeout:
        optimal = False
    finally:
        revert_to(g, trace, 0)
    elapsed = time.perf_counter() - start

    sol = search.best_solution
    if not g.is_independent(sol) or g.set_weight(sol) != search.best_weight:
        raise AssertionError("internal error: reported solution fails validation")
    return SolverReport(
        best_weight=search.best_weight,
        solution=sol,
        optimal=optimal,
        nodes=search.nodes,
        prunes_bound=search.prunes_bound,
        prunes_constraint=search.prunes_constraint,
        simplifications=search.simplifications,
        elapsed=elapsed,
    )
