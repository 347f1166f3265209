"""Exact maximum weight independent set on small vertex subsets.

Bitmask branch and bound: branch on a maximum-degree vertex of the remaining
subgraph, either taking it (drop its closed neighborhood) or dropping it, and
prune with the total remaining weight. Memo-free by design; inputs stay tiny
because conflict analysis only ever asks about neighborhoods.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceeded
from .graph import WeightedGraph


@dataclass(frozen=True)
class SubsolveBudget:
    """Caps on subgraph size and on explored branch nodes."""

    max_vertices: int = 16
    max_subsets: int = 4096

    def __post_init__(self):
        if self.max_vertices <= 0 or self.max_subsets <= 0:
            raise ValueError("budget caps must be positive")


DEFAULT_BUDGET = SubsolveBudget()


def _local_view(g: WeightedGraph, vertices) -> tuple[list[int], list[int], list[int]]:
    """Dense local ids, weights, and intra-subset neighbor masks."""
    ids = sorted(vertices)
    pos = {v: i for i, v in enumerate(ids)}
    wts = [g.weights[v] for v in ids]
    masks = [0] * len(ids)
    for i, v in enumerate(ids):
        m = 0
        for u in g.adj_set[v]:
            j = pos.get(u)
            if j is not None:
                m |= 1 << j
        masks[i] = m
    return ids, wts, masks


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _max_degree_bit(mask: int, masks: list[int]) -> int:
    best, best_deg = -1, -1
    for i in _bits(mask):
        d = (masks[i] & mask).bit_count()
        if d > best_deg:
            best, best_deg = i, d
    return best


def mwis_weight(g: WeightedGraph, vertices, budget: SubsolveBudget = DEFAULT_BUDGET) -> int:
    """Weight of a maximum weight independent set of the induced subgraph."""
    ids, wts, masks = _local_view(g, vertices)
    n = len(ids)
    if n > budget.max_vertices:
        raise CapExceeded(f"{n} vertices exceeds cap {budget.max_vertices}")
    nodes_left = [budget.max_subsets]
    best = [0]

    def walk(mask: int, cur: int, rem: int) -> None:
        if cur > best[0]:
            best[0] = cur
        if not mask or cur + rem <= best[0]:
            return
        nodes_left[0] -= 1
        if nodes_left[0] < 0:
            raise CapExceeded("branch node cap exhausted")
        i = _max_degree_bit(mask, masks)
        drop = masks[i] & mask
        removed = wts[i] + sum(wts[j] for j in _bits(drop))
        walk(mask & ~(drop | (1 << i)), cur + wts[i], rem - removed)
        walk(mask ^ (1 << i), cur, rem - wts[i])

    walk((1 << n) - 1, 0, sum(wts))
    return best[0]


def mwis_exact(
    g: WeightedGraph, vertices, budget: SubsolveBudget = DEFAULT_BUDGET
) -> tuple[int, frozenset[int]]:
    """Exact optimum and one witness for the induced subgraph.

    The witness is deterministic: the lexicographically smallest of the
    maximum-weight sets under ascending id order.
    """
    ids, wts, masks = _local_view(g, vertices)
    n = len(ids)
    if n > budget.max_vertices:
        raise CapExceeded(f"{n} vertices exceeds cap {budget.max_vertices}")
    nodes_left = [budget.max_subsets]
    best_w = [0]
    best_set = [()]

    def consider(cur: int, chosen: tuple[int, ...]) -> None:
        key = tuple(sorted(chosen))
        if cur > best_w[0] or (cur == best_w[0] and key < best_set[0]):
            best_w[0] = cur
            best_set[0] = key

    def walk(mask: int, cur: int, rem: int, chosen: tuple[int, ...]) -> None:
        if not mask:
            consider(cur, chosen)
            return
        if cur + rem < best_w[0]:
            return
        nodes_left[0] -= 1
        if nodes_left[0] < 0:
            raise CapExceeded("branch node cap exhausted")
        i = _max_degree_bit(mask, masks)
        drop = masks[i] & mask
        removed = wts[i] + sum(wts[j] for j in _bits(drop))
        walk(mask & ~(drop | (1 << i)), cur + wts[i], rem - removed, chosen + (i,))
        walk(mask ^ (1 << i), cur, rem - wts[i], chosen)

    walk((1 << n) - 1, 0, sum(wts), ())
    return best_w[0], frozenset(ids[i] for i in best_set[0])


def enumerate_all_mwis(
    g: WeightedGraph, vertices, budget: SubsolveBudget = DEFAULT_BUDGET
) -> list[frozenset[int]]:
    """Every maximum-weight independent set of the induced subgraph."""
    ids, wts, masks = _local_view(g, vertices)
    n = len(ids)
    if n > budget.max_vertices:
        raise CapExceeded(f"{n} vertices exceeds cap {budget.max_vertices}")
    nodes_left = [budget.max_subsets]
    best_w = [0]
    found: list[int] = []  # chosen-bit masks at the current best weight

    def walk(mask: int, cur: int, rem: int, chosen: int) -> None:
        if not mask:
            if cur > best_w[0]:
                best_w[0] = cur
                found.clear()
            if cur == best_w[0]:
                found.append(chosen)
                if len(found) > budget.max_subsets:
                    raise CapExceeded("too many co-optimal sets")
            return
        if cur + rem < best_w[0]:
            return
        nodes_left[0] -= 1
        if nodes_left[0] < 0:
            raise CapExceeded("branch node cap exhausted")
        i = _max_degree_bit(mask, masks)
        drop = masks[i] & mask
        removed = wts[i] + sum(wts[j] for j in _bits(drop))
        walk(mask & ~(drop | (1 << i)), cur + wts[i], rem - removed, chosen | (1 << i))
        walk(mask ^ (1 << i), cur, rem - wts[i], chosen)

    walk((1 << n) - 1, 0, sum(wts), 0)
    sets = [frozenset(ids[i] for i in _bits(ch)) for ch in found]
    return sorted(sets, key=lambda s: tuple(sorted(s)))
