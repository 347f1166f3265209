"""Vertex-weighted undirected graph with an event log for undo and solution rebuild.

Vertices are dense non-negative integers. Removal marks a vertex dead instead
of deleting it, so a branch-and-reduce search can kill and revive vertices in
O(1) amortized. Contractions append fresh ids past the original range; ids are
never reused. Every mutation appends an event to a :class:`ReductionTrace`,
which is enough to (a) roll the graph back to any checkpoint and (b) map an
independent set of the reduced graph to one of the original graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    AdjacentMembers,
    DeadVertex,
    InvalidKernelSolution,
    MalformedInput,
    ZeroWeight,
)

MAX_VERTICES = 2**31
MAX_WEIGHT = 2**20


@dataclass(frozen=True)
class GraphData:
    """Parsed graph description: n vertices, undirected edges, optional weights.

    ``index_base`` records the external numbering of the source file so that
    solutions can be written back in the same convention.
    """

    n: int
    edges: list[tuple[int, int]]
    weights: list[int] | None = None
    index_base: int = 0


@dataclass(frozen=True)
class IncludeVertex:
    """Vertex committed to the independent set; its then-alive neighbors died with it."""

    v: int
    removed: tuple[int, ...]
    gained: int


@dataclass(frozen=True)
class ExcludeVertex:
    v: int


@dataclass(frozen=True)
class ContractSet:
    """Pairwise non-adjacent members replaced by a merged vertex."""

    members: tuple[int, ...]
    merged: int


@dataclass(frozen=True)
class Fold:
    """Pendant ``folded`` absorbed into neighbor ``kept``; w(kept) dropped by ``moved``."""

    kept: int
    folded: int
    moved: int


ReductionEvent = IncludeVertex | ExcludeVertex | ContractSet | Fold


class ReductionTrace:
    """Ordered event log plus the weight already committed to the solution."""

    __slots__ = ("graph", "events", "offset")

    def __init__(self, graph: WeightedGraph):
        self.graph = graph
        self.events: list[ReductionEvent] = []
        self.offset: int = 0

    def checkpoint(self) -> int:
        return len(self.events)


class WeightedGraph:
    """Adjacency lists stay sorted because fresh ids only grow; dead ids are
    kept in the lists and filtered on iteration."""

    __slots__ = (
        "adj", "adj_set", "weights", "alive", "deg", "alive_count", "edge_count", "version",
    )

    def __init__(self, weights: list[int], edges: list[tuple[int, int]]):
        n = len(weights)
        self.version = 0
        self.weights = list(weights)
        self.alive = [True] * n
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.adj_set: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if v not in self.adj_set[u]:
                self.adj_set[u].add(v)
                self.adj_set[v].add(u)
        for u in range(n):
            self.adj[u] = sorted(self.adj_set[u])
        self.deg = [len(self.adj[u]) for u in range(n)]
        self.alive_count = n
        self.edge_count = sum(self.deg) // 2

    # -- queries -------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.weights)

    def is_alive(self, v: int) -> bool:
        return 0 <= v < len(self.alive) and self.alive[v]

    def weight(self, v: int) -> int:
        return self.weights[v]

    def degree(self, v: int) -> int:
        return self.deg[v]

    def neighbors(self, v: int) -> list[int]:
        """Alive neighbors of ``v`` in ascending order."""
        alive = self.alive
        return [u for u in self.adj[v] if alive[u]]

    def adjacent(self, u: int, v: int) -> bool:
        a, b = self.adj_set[u], self.adj_set[v]
        return v in a if len(a) <= len(b) else u in b

    def alive_vertices(self) -> list[int]:
        alive = self.alive
        return [v for v in range(len(alive)) if alive[v]]

    def set_weight(self, s) -> int:
        return sum(self.weights[v] for v in s)

    def total_weight(self) -> int:
        return sum(self.weights[v] for v in range(len(self.alive)) if self.alive[v])

    def closed_neighborhood(self, s) -> set[int]:
        out = set(s)
        for v in s:
            out.update(self.neighbors(v))
        return out

    def open_neighborhood(self, s) -> set[int]:
        out: set[int] = set()
        for v in s:
            out.update(self.neighbors(v))
        return out - set(s)

    def is_independent(self, s) -> bool:
        members = list(s)
        mset = set(members)
        for v in members:
            if self.adj_set[v] & mset:
                return False
        return True

    def copy(self) -> WeightedGraph:
        g = WeightedGraph.__new__(WeightedGraph)
        g.version = self.version
        g.weights = list(self.weights)
        g.alive = list(self.alive)
        g.adj = [list(a) for a in self.adj]
        g.adj_set = [set(a) for a in self.adj_set]
        g.deg = list(self.deg)
        g.alive_count = self.alive_count
        g.edge_count = self.edge_count
        return g

    # -- low-level mutation (no trace) ----------------------------------------

    def _kill(self, v: int) -> None:
        self.version += 1
        self.alive[v] = False
        self.alive_count -= 1
        self.edge_count -= self.deg[v]
        alive, deg = self.alive, self.deg
        for u in self.adj[v]:
            if alive[u]:
                deg[u] -= 1

    def _revive(self, v: int) -> None:
        self.version += 1
        self.alive[v] = True
        self.alive_count += 1
        alive, deg = self.alive, self.deg
        d = 0
        for u in self.adj[v]:
            if alive[u]:
                deg[u] += 1
                d += 1
        self.deg[v] = d
        self.edge_count += d

    def _append_vertex(self, weight: int, nbrs: list[int]) -> int:
        self.version += 1
        v = len(self.weights)
        self.weights.append(weight)
        self.alive.append(True)
        self.adj.append(list(nbrs))
        self.adj_set.append(set(nbrs))
        for u in nbrs:
            self.adj[u].append(v)
            self.adj_set[u].add(v)
            self.deg[u] += 1
        self.deg.append(len(nbrs))
        self.alive_count += 1
        self.edge_count += len(nbrs)

        return v

    def _pop_vertex(self) -> None:
        self.version += 1
        v = len(self.weights) - 1
        for u in self.adj[v]:
            popped = self.adj[u].pop()
            assert popped == v, "undo out of order"
            self.adj_set[u].discard(v)
            self.deg[u] -= 1
        self.edge_count -= self.deg[v]
        self.alive_count -= 1
        self.weights.pop()
        self.alive.pop()
        self.adj.pop()
        self.adj_set.pop()
        self.deg.pop()


# -- construction -------------------------------------------------------------


def load_graph(data: GraphData) -> WeightedGraph:
    """Build a graph from a parsed description, deduplicating edges.

    Raises MalformedInput for bad counts, out-of-range endpoints or self-loops,
    and ZeroWeight for non-positive weights.
    """
    n = data.n
    if n < 0 or n > MAX_VERTICES:
        raise MalformedInput(f"vertex count {n} out of range")
    weights = data.weights if data.weights is not None else [1] * n
    if len(weights) != n:
        raise MalformedInput(f"expected {n} weights, got {len(weights)}")
    for i, w in enumerate(weights):
        if w <= 0:
            raise ZeroWeight(f"vertex {i} has weight {w}")
        if w > MAX_WEIGHT:
            raise MalformedInput(f"vertex {i} weight {w} exceeds {MAX_WEIGHT}")
    for u, v in data.edges:
        if not (0 <= u < n and 0 <= v < n):
            raise MalformedInput(f"edge ({u},{v}) endpoint out of range")
        if u == v:
            raise MalformedInput(f"self-loop at vertex {u}")
    return WeightedGraph(weights, data.edges)


# -- traced operations ---------------------------------------------------------


def _require_alive(g: WeightedGraph, v: int) -> None:
    if not g.is_alive(v):
        raise DeadVertex(f"vertex {v} is not alive")


def include_vertex(g: WeightedGraph, trace: ReductionTrace, v: int) -> None:
    """Commit ``v`` to the independent set: kill N[v], credit w(v) to the offset."""
    _require_alive(g, v)
    removed = tuple(g.neighbors(v))
    gained = g.weights[v]
    g._kill(v)
    for u in removed:
        g._kill(u)
    trace.events.append(IncludeVertex(v, removed, gained))
    trace.offset += gained


def exclude_vertex(g: WeightedGraph, trace: ReductionTrace, v: int) -> None:
    """Drop ``v`` from the graph; neighbors and offset are untouched."""
    _require_alive(g, v)
    g._kill(v)
    trace.events.append(ExcludeVertex(v))


def contract_set(g: WeightedGraph, trace: ReductionTrace, members) -> int:
    """Replace a pairwise non-adjacent alive set by one merged vertex.

    The merged vertex carries the summed weight and the union neighborhood.
    Returns its fresh id.
    """
    ms = sorted(set(members))
    if len(ms) < 2:
        raise ValueError("contraction needs at least two members")
    for v in ms:
        _require_alive(g, v)
    mset = set(ms)
    for v in ms:
        if g.adj_set[v] & mset:
            u = min(g.adj_set[v] & mset)
            raise AdjacentMembers(f"members {v} and {u} are adjacent")
    nbrs = sorted(g.open_neighborhood(ms))
    weight = sum(g.weights[v] for v in ms)
    for v in ms:
        g._kill(v)
    merged = g._append_vertex(weight, nbrs)
    trace.events.append(ContractSet(tuple(ms), merged))
    return merged


def fold_pendant(g: WeightedGraph, trace: ReductionTrace, kept: int, folded: int) -> None:
    """Absorb pendant ``folded`` into its neighbor ``kept``.

    Defers the choice between the two: take ``kept`` in the rebuilt solution if
    it is in the kernel solution, else take ``folded``.
    """
    _require_alive(g, kept)
    _require_alive(g, folded)
    moved = g.weights[folded]
    if g.weights[kept] <= moved:
        raise ValueError("fold requires w(folded) < w(kept)")
    g._kill(folded)
    g.weights[kept] -= moved
    trace.events.append(Fold(kept, folded, moved))
    trace.offset += moved


def revert_to(g: WeightedGraph, trace: ReductionTrace, mark: int) -> None:
    """Roll graph and trace back to a checkpoint taken earlier on this trace."""
    events = trace.events
    while len(events) > mark:
        ev = events.pop()
        if isinstance(ev, IncludeVertex):
            for u in reversed(ev.removed):
                g._revive(u)
            g._revive(ev.v)
            trace.offset -= ev.gained
        elif isinstance(ev, ExcludeVertex):
            g._revive(ev.v)
        elif isinstance(ev, ContractSet):
            g._pop_vertex()
            for v in reversed(ev.members):
                g._revive(v)
        else:
            g.weights[ev.kept] += ev.moved
            g._revive(ev.folded)
            trace.offset -= ev.moved


def reconstruct_solution(trace: ReductionTrace, kernel_solution) -> set[int]:
    """Map an independent set of the current (kernel) graph to the original graph.

    Replays events newest-first. The result weighs exactly
    ``trace.offset + w(kernel_solution)`` in the original graph.
    """
    g = trace.graph
    sol = set(kernel_solution)
    for v in sol:
        if not (0 <= v < len(g)):
            raise InvalidKernelSolution(f"unknown vertex {v}")
        if not g.alive[v]:
            raise InvalidKernelSolution(f"vertex {v} is not in the kernel")
    for v in sol:
        clash = g.adj_set[v] & sol
        if clash:
            raise InvalidKernelSolution(f"vertices {v} and {min(clash)} are adjacent")
    for ev in reversed(trace.events):
        if isinstance(ev, IncludeVertex):
            sol.add(ev.v)
        elif isinstance(ev, ContractSet):
            if ev.merged in sol:
                sol.discard(ev.merged)
                sol.update(ev.members)
        elif isinstance(ev, Fold):
            if ev.kept not in sol:
                sol.add(ev.folded)
    return sol


def second_neighborhood(g: WeightedGraph, v: int) -> set[int]:
    """Alive vertices at distance exactly two from ``v``."""
    _require_alive(g, v)
    first = set(g.neighbors(v))
    out: set[int] = set()
    for u in first:
        out.update(g.neighbors(u))
    out -= first
    out.discard(v)
    return out


def check_graph(g: WeightedGraph) -> None:
    """Assert structural invariants; used by tests after mutation sequences."""
    n = len(g)
    alive_count = 0
    edge_count = 0
    for v in range(n):
        assert sorted(g.adj[v]) == g.adj[v]
        assert set(g.adj[v]) == g.adj_set[v]
        assert v not in g.adj_set[v]
        for u in g.adj[v]:
            assert v in g.adj_set[u], f"asymmetric edge ({v},{u})"
        if g.alive[v]:
            alive_count += 1
            d = sum(1 for u in g.adj[v] if g.alive[u])
            assert d == g.deg[v], f"degree cache wrong at {v}"
            edge_count += d
            assert g.weights[v] > 0
    assert alive_count == g.alive_count
    assert edge_count == 2 * g.edge_count
