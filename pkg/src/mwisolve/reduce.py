"""Kernelization pipeline: fast basic rules plus the two conflict-analysis passes.

Steps run in order and any change sends control back to the first step, so a
later step only ever sees a graph on which all earlier steps are exhausted.
Each sweep walks the vertices alive at its start in ascending id order; merged
vertices get fresh ids past that range and are picked up by the next sweep.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .cit import (
    AlphaOracle,
    CitBudget,
    DEFAULT_BUDGET,
    compute_confining,
    compute_covering,
)
from .graph import (
    ReductionTrace,
    WeightedGraph,
    contract_set,
    exclude_vertex,
    fold_pendant,
    include_vertex,
)

STEP_NAMES = ("basic", "confining", "covering")


@dataclass
class RuleStats:
    removed: int = 0
    included: int = 0
    contracted: int = 0
    millis: float = 0.0

    def as_dict(self) -> dict:
        return {
            "removed": self.removed,
            "included": self.included,
            "contracted": self.contracted,
            "millis": round(self.millis, 3),
        }


@dataclass
class KernelResult:
    """Reduced graph, the weight already committed, and how to undo it all."""

    kernel: WeightedGraph
    offset: int
    trace: ReductionTrace
    stats: dict[str, RuleStats] = field(default_factory=dict)


def _include(g, trace, v, stats: RuleStats) -> None:
    before = g.alive_count
    include_vertex(g, trace, v)
    stats.included += 1
    stats.removed += before - g.alive_count - 1


def apply_basic_rules(g: WeightedGraph, trace: ReductionTrace, stats: RuleStats | None = None) -> bool:
    """Cheap weight reductions, run to a fixed point.

    B1 isolated vertices are taken. B2 a vertex outweighing its whole
    neighborhood is taken. B3 a pendant lighter than its neighbor is folded
    into it, deferring the choice to reconstruction. B4 of two adjacent
    vertices where one's closed neighborhood contains the other's and its
    weight does not exceed it, the dominated one is dropped.
    """
    stats = stats if stats is not None else RuleStats()
    changed = False
    again = True
    while again:
        again = False
        for v in range(len(g)):
            if not g.is_alive(v):
                continue
            nbrs = g.neighbors(v)
            if not nbrs:
                _include(g, trace, v, stats)
                again = changed = True
                continue
            wv = g.weights[v]
            if wv >= sum(g.weights[u] for u in nbrs):
                _include(g, trace, v, stats)
                again = changed = True
                continue
            if len(nbrs) == 1:
                fold_pendant(g, trace, kept=nbrs[0], folded=v)
                stats.removed += 1
                again = changed = True
                continue
            closed_v = set(nbrs)
            closed_v.add(v)
            for u in nbrs:
                if g.weights[u] <= wv and g.deg[u] >= len(nbrs):
                    closed_u = set(g.neighbors(u))
                    closed_u.add(u)
                    if closed_v <= closed_u:
                        exclude_vertex(g, trace, u)
                        stats.removed += 1
                        again = changed = True
                        break
    return changed


def remove_unconfined_contract_confining(
    g: WeightedGraph,
    trace: ReductionTrace,
    budget: CitBudget = DEFAULT_BUDGET,
    stats: RuleStats | None = None,
) -> bool:
    """One sweep: drop unconfined vertices, merge mutually-confining pairs."""
    stats = stats if stats is not None else RuleStats()
    changed = False
    oracle = AlphaOracle(g, budget)
    for v in range(len(g)):
        if not g.is_alive(v):
            continue
        out = compute_confining(g, v, budget, oracle=oracle)
        if out.unconfined:
            exclude_vertex(g, trace, v)
            stats.removed += 1
            changed = True
            continue
        for u in sorted(out.confining_set - {v}):
            other = compute_confining(g, u, budget, oracle=oracle)
            if not other.unconfined and v in other.confining_set:
                contract_set(g, trace, [v, u])
                stats.contracted += 1
                changed = True
                break
    return changed


def remove_uncovered_contract_covering(
    g: WeightedGraph,
    trace: ReductionTrace,
    budget: CitBudget = DEFAULT_BUDGET,
    stats: RuleStats | None = None,
) -> bool:
    """One sweep: take uncovered vertices, merge mutually-covering pairs."""
    stats = stats if stats is not None else RuleStats()
    changed = False
    oracle = AlphaOracle(g, budget)
    for v in range(len(g)):
        if not g.is_alive(v):
            continue
        out = compute_covering(g, v, budget, oracle=oracle)
        if out.uncovered:
            _include(g, trace, v, stats)
            changed = True
            continue
        for u in sorted(out.covering_set - {v}):
            if g.adjacent(u, v):
                continue
            other = compute_covering(g, u, budget, oracle=oracle)
            if not other.uncovered and v in other.covering_set:
                contract_set(g, trace, [v, u])
                stats.contracted += 1
                changed = True
                break
    return changed


def causal_reduce(
    g: WeightedGraph,
    budget: CitBudget = DEFAULT_BUDGET,
    trace: ReductionTrace | None = None,
    disable: tuple[str, ...] = (),
) -> KernelResult:
    """Run the pipeline to a fixed point and return the kernel.

    ``disable`` names steps to skip (for ablation). The trace argument lets a
    search reuse its own event log so the whole path stays undoable.
    """
    for name in disable:
        if name not in STEP_NAMES:
            raise ValueError(f"unknown step {name!r}")
    trace = trace if trace is not None else ReductionTrace(g)
    start_offset = trace.offset
    stats = {name: RuleStats() for name in STEP_NAMES}

    steps: list[tuple[str, object]] = []
    if "basic" not in disable:
        steps.append(("basic", lambda gg, tt, st: apply_basic_rules(gg, tt, st)))
    if "confining" not in disable:
        steps.append(("confining", lambda gg, tt, st: remove_unconfined_contract_confining(gg, tt, budget, st)))
    if "covering" not in disable:
        steps.append(("covering", lambda gg, tt, st: remove_uncovered_contract_covering(gg, tt, budget, st)))

    i = 0
    while i < len(steps):
        name, fn = steps[i]
        t0 = time.perf_counter()
        changed = fn(g, trace, stats[name])
        stats[name].millis += (time.perf_counter() - t0) * 1000.0
        if changed and i > 0:
            i = 0
        else:
            i += 1

    return KernelResult(kernel=g, offset=trace.offset - start_offset, trace=trace, stats=stats)
