import itertools
import random

from mwisolve.graph import GraphData, WeightedGraph, load_graph
from mwisolve.subsolve import SubsolveBudget

# roomy caps for oracle use in tests
ORACLE_BUDGET = SubsolveBudget(max_vertices=24, max_subsets=10**7)


def path_graph(weights) -> WeightedGraph:
    n = len(weights)
    return load_graph(GraphData(n, [(i, i + 1) for i in range(n - 1)], list(weights)))


def random_graph(rng: random.Random, n: int, p: float, lo: int = 1, hi: int = 200) -> WeightedGraph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    weights = [rng.randint(lo, hi) for _ in range(n)]
    return load_graph(GraphData(n, edges, weights))


def naive_all_mwis(g: WeightedGraph):
    """Exhaustive subset enumeration; independent of the package's subsolver."""
    verts = g.alive_vertices()
    best = 0
    sets: list[frozenset] = [frozenset()]
    for r in range(1, len(verts) + 1):
        for combo in itertools.combinations(verts, r):
            ok = True
            for i, u in enumerate(combo):
                if g.adj_set[u].intersection(combo[i + 1:]):
                    ok = False
                    break
            if not ok:
                continue
            w = sum(g.weights[v] for v in combo)
            if w > best:
                best = w
                sets = [frozenset(combo)]
            elif w == best:
                sets.append(frozenset(combo))
    return best, sets


def naive_alpha(g: WeightedGraph) -> int:
    return naive_all_mwis(g)[0]
