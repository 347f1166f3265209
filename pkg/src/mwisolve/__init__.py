"""Vertex-weighted independent set toolkit: kernelization, exact search, local search."""

from .cit import (
    CitBudget,
    ConfiningOutcome,
    CoveringOutcome,
    compute_confining,
    compute_covering,
    confining_simultaneous,
    covering_simultaneous,
    inferred_confining,
    inferred_covering,
    mirrors_of,
    satellite_of,
)
from .graph import (
    GraphData,
    ReductionTrace,
    WeightedGraph,
    contract_set,
    exclude_vertex,
    include_vertex,
    load_graph,
    reconstruct_solution,
    revert_to,
    second_neighborhood,
)
from .localsearch import SearchResult, causal_search
from .reduce import KernelResult, causal_reduce
from .solver import SolverReport, solve
from .subsolve import SubsolveBudget, enumerate_all_mwis, mwis_exact
from .weights import WeightGenSpec, gen_weights

__all__ = [
    "CitBudget",
    "ConfiningOutcome",
    "CoveringOutcome",
    "GraphData",
    "KernelResult",
    "ReductionTrace",
    "SearchResult",
    "SolverReport",
    "SubsolveBudget",
    "WeightGenSpec",
    "WeightedGraph",
    "causal_reduce",
    "causal_search",
    "compute_confining",
    "compute_covering",
    "confining_simultaneous",
    "contract_set",
    "covering_simultaneous",
    "enumerate_all_mwis",
    "exclude_vertex",
    "gen_weights",
    "include_vertex",
    "inferred_confining",
    "inferred_covering",
    "load_graph",
    "mirrors_of",
    "mwis_exact",
    "reconstruct_solution",
    "revert_to",
    "satellite_of",
    "second_neighborhood",
    "solve",
]
