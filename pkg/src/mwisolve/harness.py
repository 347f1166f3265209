"""Solution verification and the benchmark harness."""

from __future__ import annotations

import csv
import json
import os
import time
from dataclasses import dataclass, field

from . import io as gio
from .errors import MalformedInput, NotIndependent, UnknownVertex
from .graph import GraphData, WeightedGraph, load_graph
from .localsearch import causal_search
from .reduce import causal_reduce
from .solver import solve
from .weights import WeightGenSpec, gen_weights, parse_weight_source


@dataclass(frozen=True)
class VerifyReport:
    size: int
    weight: int
    cover_size: int
    cover_weight: int
    cover_valid: bool

    def as_dict(self) -> dict:
        return {
            "independent": True,
            "size": self.size,
            "weight": self.weight,
            "cover_size": self.cover_size,
            "cover_weight": self.cover_weight,
            "cover_valid": self.cover_valid,
        }


def verify(g: WeightedGraph, solution) -> VerifyReport:
    """Check pairwise independence; report weights of the set and its complement."""
    sol = set(solution)
    for v in sol:
        if not (0 <= v < len(g)) or not g.is_alive(v):
            raise UnknownVertex(f"vertex {v} is not in the graph")
    for v in sorted(sol):
        clash = g.adj_set[v] & sol
        if clash:
            raise NotIndependent(v, min(clash))
    cover = [v for v in g.alive_vertices() if v not in sol]
    cover_set = set(cover)
    # the complement of an independent set always covers; check it explicitly anyway
    cover_valid = True
    for v in g.alive_vertices():
        if v in cover_set:
            continue
        for u in g.neighbors(v):
            if u not in cover_set:
                cover_valid = False
    return VerifyReport(
        size=len(sol),
        weight=g.set_weight(sol),
        cover_size=len(cover),
        cover_weight=g.set_weight(cover),
        cover_valid=cover_valid,
    )


# -- benchmark harness -----------------------------------------------------------

ALGORITHMS = ("reduce", "reduce-ablation", "solve", "search")

ABLATION_VARIANTS = (
    ("basic-only", ("confining", "covering")),
    ("basic+confining", ("covering",)),
    ("basic+covering", ("confining",)),
    ("full", ()),
)


@dataclass(frozen=True)
class BenchInstance:
    graph: str
    format: str | None = None
    weights: str | None = None
    index_base: int = 0


@dataclass
class BenchConfig:
    instances: list[BenchInstance]
    algorithms: list[str] = field(default_factory=lambda: ["reduce"])
    time_limit: float = 1000.0
    search_cutoff: float = 10.0
    seed: int = 0
    constraints: bool = True

    def __post_init__(self):
        if not self.instances:
            raise MalformedInput("bench config needs at least one instance")
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise MalformedInput(f"unknown algorithm {a!r}")

    @classmethod
    def from_json(cls, path: str) -> BenchConfig:
        with open(path) as fh:
            raw = json.load(fh)
        instances = [BenchInstance(**inst) for inst in raw.get("instances", [])]
        return cls(
            instances=instances,
            algorithms=raw.get("algorithms", ["reduce"]),
            time_limit=raw.get("time_limit", 1000.0),
            search_cutoff=raw.get("search_cutoff", 10.0),
            seed=raw.get("seed", 0),
            constraints=raw.get("constraints", True),
        )


CSV_COLUMNS = [
    "instance", "algorithm", "variant", "parse_secs", "time_secs",
    "kernel_n", "kernel_m", "ratio_percent", "result", "optimal", "error",
]


def load_instance(inst: BenchInstance) -> tuple[GraphData, WeightedGraph, float]:
    t0 = time.perf_counter()
    data = gio.read_graph(inst.graph, inst.format, index_base=inst.index_base)
    weights = data.weights
    if inst.weights is not None:
        src = parse_weight_source(inst.weights)
        if isinstance(src, WeightGenSpec):
            weights = gen_weights(data.n, src)
        else:
            with open(src) as fh:
                weights = gio.parse_weight_file(fh.read())
    data = GraphData(n=data.n, edges=data.edges, weights=weights, index_base=data.index_base)
    g = load_graph(data)
    return data, g, time.perf_counter() - t0


def _reduce_cell(g: WeightedGraph, disable: tuple[str, ...]) -> dict:
    n = g.alive_count
    t0 = time.perf_counter()
    causal_reduce(g, disable=disable)
    secs = time.perf_counter() - t0
    return {
        "time_secs": round(secs, 4),
        "kernel_n": g.alive_count,
        "kernel_m": g.edge_count,
        "ratio_percent": round(100.0 * g.alive_count / n, 4) if n else 0.0,
    }


def bench(config: BenchConfig, out_dir: str) -> list[dict]:
    """Run every (instance, algorithm) cell; one failure never stops the run."""
    os.makedirs(out_dir, exist_ok=True)
    rows: list[dict] = []
    for inst in config.instances:
        name = os.path.basename(inst.graph)
        try:
            _, base_graph, parse_secs = load_instance(inst)
        except Exception as exc:  # noqa: BLE001 - per-cell failures are recorded
            for algo in config.algorithms:
                rows.append({"instance": name, "algorithm": algo, "error": repr(exc)})
            continue
        for algo in config.algorithms:
            variants = ABLATION_VARIANTS if algo == "reduce-ablation" else ((algo, ()),)
            for variant, disable in variants:
                row = {
                    "instance": name,
                    "algorithm": algo,
                    "variant": variant if algo == "reduce-ablation" else "",
                    "parse_secs": round(parse_secs, 4),
                }
                g = base_graph.copy()
                try:
                    if algo in ("reduce", "reduce-ablation"):
                        row.update(_reduce_cell(g, disable))
                    elif algo == "solve":
                        report = solve(g, time_limit=config.time_limit, constraints=config.constraints)
                        row.update(
                            time_secs=round(report.elapsed, 4),
                            result=report.best_weight,
                            optimal=report.optimal,
                        )
                    else:
                        t0 = time.perf_counter()
                        kr = causal_reduce(g)
                        res = causal_search(g, cutoff_secs=config.search_cutoff, seed=config.seed)
                        row.update(
                            time_secs=round(time.perf_counter() - t0, 4),
                            result=kr.offset + res.is_weight,
                            optimal="",
                        )
                except Exception as exc:  # noqa: BLE001
                    row["error"] = repr(exc)
                rows.append(row)

    with open(os.path.join(out_dir, "bench.json"), "w") as fh:
        json.dump(rows, fh, indent=2)
    with open(os.path.join(out_dir, "bench.csv"), "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    return rows
