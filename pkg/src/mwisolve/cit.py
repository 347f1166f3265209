"""Conflict analysis on vertex states: confining and covering sets.

Two families of checks drive all reductions and branching decisions:

* Starting from "v is in every optimal independent set", grow an independent
  set around v by repeatedly absorbing the unique satellite of an extending
  child. A child that can never be compensated is a conflict: v is unconfined
  and can be deleted. Otherwise the grown set (the confining set) shares v's
  state.
* Dually, starting from "v is in every optimal cover", grow a cover-side set
  by absorbing mirror vertices of extending fathers. A member whose own weight
  already matches its outside options is a conflict: v is uncovered and can be
  committed to the independent set.

The inferred variants relax "every" to "some": the same fixed-point machinery
with the strict and non-strict inequalities swapped, and no conflict test.
All exact subproblems go through :mod:`mwisolve.subsolve`; a budget overrun
always degrades to the conservative answer (skip the conflict, skip the
extension), never the reverse.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import AdjacentPair, BudgetExceeded, CapExceeded, DeadVertex
from .graph import WeightedGraph, second_neighborhood
from .subsolve import SubsolveBudget, mwis_weight


@dataclass(frozen=True)
class CitBudget:
    """Termination and efficiency guards for the fixed-point computations."""

    subsolve: SubsolveBudget = field(default_factory=SubsolveBudget)
    max_satellite_ground: int = 12
    max_set_growth: int = 64

    def __post_init__(self):
        if self.max_satellite_ground <= 0 or self.max_set_growth <= 0:
            raise ValueError("budget caps must be positive")


DEFAULT_BUDGET = CitBudget()


@dataclass(frozen=True)
class ConfiningOutcome:
    """Either a conflict (unconfined) or the independent confining set around v."""

    confining_set: frozenset[int] | None

    @property
    def unconfined(self) -> bool:
        return self.confining_set is None


@dataclass(frozen=True)
class CoveringOutcome:
    """Either a conflict (uncovered) or the covering set around v."""

    covering_set: frozenset[int] | None

    @property
    def uncovered(self) -> bool:
        return self.covering_set is None


UNCONFINED = ConfiningOutcome(None)
UNCOVERED = CoveringOutcome(None)


class SatelliteStatus(enum.Enum):
    UNIQUE = "unique"
    NOT_UNIQUE = "not_unique"
    NONE_SATISFIES = "none_satisfies"


@dataclass(frozen=True)
class SatelliteOutcome:
    status: SatelliteStatus
    satellite: frozenset[int] | None = None


NOT_UNIQUE = SatelliteOutcome(SatelliteStatus.NOT_UNIQUE)
NONE_SATISFIES = SatelliteOutcome(SatelliteStatus.NONE_SATISFIES)


def _alpha(g: WeightedGraph, vertices, budget: CitBudget) -> int | None:
    """Exact optimum of the induced subgraph, or None when over budget."""
    try:
        return mwis_weight(g, vertices, budget.subsolve)
    except CapExceeded:
        return None


class AlphaOracle:
    """Answers "does w reach the subgraph optimum" with cheap bounds first.

    Most conflict-analysis tests only compare a weight against an optimum, so
    the exact subsolver is a last resort: the total weight bounds the optimum
    from above and a greedy independent set bounds it from below. Exact values
    are memoized per graph version; any mutation invalidates the table.
    """

    __slots__ = ("g", "budget", "table", "version")

    def __init__(self, g: WeightedGraph, budget: CitBudget):
        self.g = g
        self.budget = budget
        self.table: dict[frozenset[int], int | None] = {}
        self.version = g.version

    def _fresh(self) -> None:
        if self.version != self.g.version:
            self.table.clear()
            self.version = self.g.version

    def alpha(self, vertices) -> int | None:
        self._fresh()
        key = frozenset(vertices)
        try:
            return self.table[key]
        except KeyError:
            pass
        value = _alpha(self.g, key, self.budget)
        self.table[key] = value
        return value

    def reaches(self, vertices, w: int) -> bool | None:
        """w >= alpha(induced subgraph)? None when only the exact value would
        tell and the budget rules it out."""
        weights = self.g.weights
        total = 0
        heaviest = 0
        for v in vertices:
            wv = weights[v]
            total += wv
            if wv > heaviest:
                heaviest = wv
        if w >= total:
            return True
        if w < heaviest:
            return False
        order = sorted(vertices, key=lambda v: (-weights[v], v))
        adj = self.g.adj_set
        lb = 0
        taken: list[int] = []
        for v in order:
            av = adj[v]
            if not any(u in av for u in taken):
                taken.append(v)
                lb += weights[v]
        if w < lb:
            return False
        if len(taken) == len(order):
            return True  # the set is independent, so lb is exact
        a = self.alpha(vertices)
        return None if a is None else w >= a


def satellite_of(
    g: WeightedGraph,
    s,
    u: int,
    strict: bool,
    budget: CitBudget = DEFAULT_BUDGET,
) -> SatelliteOutcome:
    """Search N(u) \\ N[S] for the unique set that compensates child u.

    With ``strict`` the compensation must exceed w(u) - w(S cap N(u)); without
    it, matching is enough. Exactly one satisfying independent subset makes u
    extending, and that subset is the satellite.

    Satisfying subsets are upward closed in weight, so when the ground set is
    itself independent the answer follows from two weight comparisons. The
    general case enumerates independent subsets, and raises BudgetExceeded on
    ground sets too large to enumerate; callers treat that as not-unique.
    """
    sset = set(s)
    nbrs_u = g.adj_set[u]
    t = g.weights[u] - sum(g.weights[x] for x in nbrs_u & sset)
    if strict and t < 0:
        raise ValueError("not a child: w(u) < w(S cap N(u))")
    if not strict and t <= 0:
        raise ValueError("not an inferred child: w(u) <= w(S cap N(u))")

    def satisfies(wt: int) -> bool:
        return wt > t if strict else wt >= t

    closed = g.closed_neighborhood(sset)
    ground = sorted(x for x in g.neighbors(u) if x not in closed)
    total = sum(g.weights[x] for x in ground)
    gset = set(ground)
    independent = all(not (g.adj_set[x] & gset) for x in ground)

    if independent:
        if not ground or not satisfies(total):
            return NONE_SATISFIES
        if satisfies(total - min(g.weights[x] for x in ground)):
            return NOT_UNIQUE
        return SatelliteOutcome(SatelliteStatus.UNIQUE, frozenset(ground))

    k = len(ground)
    if k > budget.max_satellite_ground:
        raise BudgetExceeded(f"ground set of size {k} is not independent")
    local = [0] * k
    pos = {v: i for i, v in enumerate(ground)}
    wts = [g.weights[v] for v in ground]
    for i, v in enumerate(ground):
        for x in g.adj_set[v] & gset:
            local[i] |= 1 << pos[x]

    # count independent subsets past the threshold, stopping at the second hit;
    # subtrees that cannot reach the threshold are cut
    found: list[int] = []
    nodes_left = [budget.subsolve.max_subsets]

    def walk(mask: int, cur: int, rem: int, chosen: int) -> None:
        if len(found) >= 2:
            return
        if not mask:
            if satisfies(cur):
                found.append(chosen)
            return
        if (cur + rem <= t) if strict else (cur + rem < t):
            return
        nodes_left[0] -= 1
        if nodes_left[0] < 0:
            raise BudgetExceeded("satellite search node cap exhausted")
        low = mask & -mask
        i = low.bit_length() - 1
        drop = (local[i] & mask) | low
        removed = sum(wts[j] for j in range(k) if drop >> j & 1)
        walk(mask & ~drop, cur + wts[i], rem - removed, chosen | low)
        walk(mask ^ low, cur, rem - wts[i], chosen)

    walk((1 << k) - 1, 0, sum(wts), 0)
    if not found:
        return NONE_SATISFIES
    if len(found) > 1:
        return NOT_UNIQUE
    sat = frozenset(ground[i] for i in range(k) if found[0] >> i & 1)
    return SatelliteOutcome(SatelliteStatus.UNIQUE, sat)


def compute_confining(
    g: WeightedGraph,
    v: int,
    budget: CitBudget = DEFAULT_BUDGET,
    oracle: AlphaOracle | None = None,
) -> ConfiningOutcome:
    """Grow an independent set from v until a conflict or a fixed point.

    Each round first runs the conflict test on every child of the current set
    (a child whose weight reaches its in-set neighbors plus the best outside
    compensation proves v unconfined), then extends by the satellite of the
    first extending child in ascending id order. Budget exhaustion stops the
    growth and reports the set built so far, which is still sound.
    """
    if not g.is_alive(v):
        raise DeadVertex(f"vertex {v} is not alive")
    oracle = oracle if oracle is not None else AlphaOracle(g, budget)
    s = {v}
    while True:
        if len(s) > budget.max_set_growth:
            return ConfiningOutcome(frozenset(s))
        closed = g.closed_neighborhood(s)
        children = []
        for u in sorted(g.open_neighborhood(s)):
            w_sn = sum(g.weights[x] for x in g.adj_set[u] & s)
            if g.weights[u] >= w_sn:
                children.append((u, w_sn))
        for u, w_sn in children:
            ground = [x for x in g.neighbors(u) if x not in closed]
            if oracle.reaches(ground, g.weights[u] - w_sn):
                return UNCONFINED
        extended = False
        for u, _ in children:
            try:
                out = satellite_of(g, s, u, strict=True, budget=budget)
            except BudgetExceeded:
                continue
            if out.status is SatelliteStatus.UNIQUE:
                s |= out.satellite
                extended = True
                break
        if not extended:
            return ConfiningOutcome(frozenset(s))


def mirrors_of(
    g: WeightedGraph,
    c,
    v: int,
    strict: bool,
    budget: CitBudget = DEFAULT_BUDGET,
    oracle: AlphaOracle | None = None,
) -> frozenset[int]:
    """Distance-two vertices whose neighborhood removal starves father v.

    A mirror u satisfies w(v) >= best weight achievable in N(v) \\ (C u N(u))
    (strict mode; the inferred mode needs strict excess). Candidates already in
    C are skipped, and a candidate whose subproblem overruns the budget is
    conservatively not a mirror.
    """
    oracle = oracle if oracle is not None else AlphaOracle(g, budget)
    cset = set(c)
    base = [x for x in g.neighbors(v) if x not in cset]
    threshold = g.weights[v] if strict else g.weights[v] - 1
    out = []
    for u in sorted(second_neighborhood(g, v) - cset):
        rest = [x for x in base if x not in g.adj_set[u]]
        if oracle.reaches(rest, threshold):
            out.append(u)
    return frozenset(out)


def compute_covering(
    g: WeightedGraph,
    v: int,
    budget: CitBudget = DEFAULT_BUDGET,
    oracle: AlphaOracle | None = None,
) -> CoveringOutcome:
    """Grow a cover-side set from v until a conflict or a fixed point.

    Each round tests every member u: if w(u) already reaches the best weight
    of N(u) outside the set, v is uncovered. Otherwise the set extends by the
    full mirror set of the first member that has one, ascending ids. Budget
    exhaustion reports the set built so far.
    """
    if not g.is_alive(v):
        raise DeadVertex(f"vertex {v} is not alive")
    oracle = oracle if oracle is not None else AlphaOracle(g, budget)
    c = {v}
    while True:
        if len(c) > budget.max_set_growth:
            return CoveringOutcome(frozenset(c))
        fathers: list[int] = []
        for u in sorted(c):
            rest = [x for x in g.neighbors(u) if x not in c]
            r = oracle.reaches(rest, g.weights[u])
            if r:
                return UNCOVERED
            if r is False:
                fathers.append(u)
        extended = False
        for u in fathers:
            mirrors = mirrors_of(g, c, u, strict=True, budget=budget, oracle=oracle)
            if mirrors:
                c |= mirrors
                extended = True
                break
        if not extended:
            return CoveringOutcome(frozenset(c))


def inferred_confining(
    g: WeightedGraph, v: int, budget: CitBudget = DEFAULT_BUDGET
) -> frozenset[int]:
    """Fixed point of inferred-satellite extension from {v}.

    Valid when no vertex of the graph is unconfined; under the weaker premise
    that some optimal independent set contains v, the whole returned set sits
    in that same optimum. Always independent, always contains v.
    """
    if not g.is_alive(v):
        raise DeadVertex(f"vertex {v} is not alive")
    iset = {v}
    while len(iset) <= budget.max_set_growth:
        extended = False
        for u in sorted(g.open_neighborhood(iset)):
            w_sn = sum(g.weights[x] for x in g.adj_set[u] & iset)
            if g.weights[u] <= w_sn:
                continue
            try:
                out = satellite_of(g, iset, u, strict=False, budget=budget)
            except BudgetExceeded:
                continue
            if out.status is SatelliteStatus.UNIQUE:
                iset |= out.satellite
                extended = True
                break
        if not extended:
            break
    return frozenset(iset)


def inferred_covering(
    g: WeightedGraph,
    v: int,
    budget: CitBudget = DEFAULT_BUDGET,
    oracle: AlphaOracle | None = None,
) -> frozenset[int]:
    """Fixed point of inferred-mirror extension from {v}.

    Valid when no vertex of the graph is uncovered; if some optimal cover
    contains v, it contains the whole returned set. Always contains v.
    """
    if not g.is_alive(v):
        raise DeadVertex(f"vertex {v} is not alive")
    oracle = oracle if oracle is not None else AlphaOracle(g, budget)
    c = {v}
    while len(c) <= budget.max_set_growth:
        extended = False
        for u in sorted(c):
            rest = [x for x in g.neighbors(u) if x not in c]
            # an inferred father is one whose weight does not exceed the optimum
            if oracle.reaches(rest, g.weights[u] - 1) is not False:
                continue
            mirrors = mirrors_of(g, c, u, strict=False, budget=budget, oracle=oracle)
            if mirrors:
                c |= mirrors
                extended = True
                break
        if not extended:
            break
    return frozenset(c)


def confining_simultaneous(
    g: WeightedGraph, u: int, v: int, budget: CitBudget = DEFAULT_BUDGET
) -> bool:
    """True when u and v are mutually members of each other's confining sets.

    Such a pair is safe to contract. Adjacent pairs can never qualify because
    confining sets are independent.
    """
    if u == v:
        raise ValueError("need two distinct vertices")
    if g.adjacent(u, v):
        return False
    ov = compute_confining(g, v, budget)
    if ov.unconfined or u not in ov.confining_set:
        return False
    ou = compute_confining(g, u, budget)
    return not ou.unconfined and v in ou.confining_set


def covering_simultaneous(
    g: WeightedGraph, u: int, v: int, budget: CitBudget = DEFAULT_BUDGET
) -> bool:
    """True when non-adjacent u and v sit in each other's covering sets."""
    if u == v:
        raise ValueError("need two distinct vertices")
    if g.adjacent(u, v):
        raise AdjacentPair(f"vertices {u} and {v} are adjacent")
    ov = compute_covering(g, v, budget)
    if ov.uncovered or u not in ov.covering_set:
        return False
    ou = compute_covering(g, u, budget)
    return not ou.uncovered and v in ou.covering_set
