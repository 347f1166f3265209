"""Command line front end.

Subcommands: reduce, solve, search, verify, explain, gen-weights, bench.
Exit codes: 0 success, 2 input error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import io as gio
from .cit import (
    CitBudget,
    compute_confining,
    compute_covering,
    inferred_confining,
    inferred_covering,
)
from .errors import MwisError, NotIndependent, UnknownVertex
from .graph import reconstruct_solution
from .harness import BenchConfig, BenchInstance, bench, load_instance, verify
from .localsearch import causal_search
from .reduce import STEP_NAMES, causal_reduce
from .solver import solve
from .weights import WeightGenSpec, gen_weights


def _common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--in", dest="path", required=True, help="graph file")
    sub.add_argument("--format", choices=gio.FORMATS, help="override format autodetection")
    sub.add_argument("--weights", help="weight file path or gen:uniform:LO:HI:SEED")
    sub.add_argument("--index-base", type=int, default=0, choices=(0, 1),
                     help="vertex numbering of plain edge lists")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--json", action="store_true", help="print the stats JSON to stdout")


def _load(args) -> tuple:
    inst = BenchInstance(graph=args.path, format=args.format, weights=args.weights,
                         index_base=args.index_base)
    return load_instance(inst)


def _emit_stats(stats: dict, path: str | None, to_stdout: bool) -> None:
    text = json.dumps(stats, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    if to_stdout or not path:
        print(text)


def _trace_json(trace, base: int) -> dict:
    events = []
    for ev in trace.events:
        kind = type(ev).__name__
        if kind == "IncludeVertex":
            events.append({"kind": "include", "v": ev.v, "removed": list(ev.removed), "gained": ev.gained})
        elif kind == "ExcludeVertex":
            events.append({"kind": "exclude", "v": ev.v})
        elif kind == "ContractSet":
            events.append({"kind": "contract", "members": list(ev.members), "merged": ev.merged})
        else:
            events.append({"kind": "fold", "kept": ev.kept, "folded": ev.folded, "moved": ev.moved})
    return {"offset": trace.offset, "index_base": base, "events": events}


def cmd_reduce(args) -> int:
    data, g, parse_secs = _load(args)
    n, m = g.alive_count, g.edge_count
    t0 = time.perf_counter()
    result = causal_reduce(g, disable=tuple(args.disable_step or ()))
    total_ms = (time.perf_counter() - t0) * 1000.0
    if args.out_kernel:
        alive = g.alive_vertices()
        remap = {v: i for i, v in enumerate(alive)}
        kdata = gio.GraphData(
            n=len(alive),
            edges=[(remap[u], remap[v]) for u in alive for v in g.neighbors(u) if u < v],
            index_base=1,
        )
        gio.write_metis(kdata, [g.weights[v] for v in alive], args.out_kernel)
    if args.out_trace:
        payload = _trace_json(result.trace, data.index_base)
        payload["kernel_vertices"] = g.alive_vertices()
        with open(args.out_trace, "w") as fh:
            json.dump(payload, fh)
    stats = {
        "n": n,
        "m": m,
        "kernel_n": g.alive_count,
        "kernel_m": g.edge_count,
        "offset": result.offset,
        "ratio_percent": round(100.0 * g.alive_count / n, 4) if n else 0.0,
        "per_rule": {name: rs.as_dict() for name, rs in result.stats.items()},
        "total_millis": round(total_ms, 3),
        "parse_secs": round(parse_secs, 4),
    }
    _emit_stats(stats, args.stats, args.json)
    return 0


def cmd_solve(args) -> int:
    data, g, parse_secs = _load(args)
    report = solve(
        g,
        time_limit=args.time_limit,
        constraints=args.constraints == "on",
        branching=args.branching,
    )
    if args.out_solution:
        gio.write_solution(args.out_solution, report.solution, data.index_base)
    stats = report.stats_dict()
    stats["parse_secs"] = round(parse_secs, 4)
    _emit_stats(stats, args.stats, args.json)
    return 0


def cmd_search(args) -> int:
    data, g, parse_secs = _load(args)
    total = g.total_weight()
    if args.cutoff.startswith("iters:"):
        cutoff_kw = {"max_iterations": int(args.cutoff.split(":", 1)[1])}
    else:
        cutoff_kw = {"cutoff_secs": float(args.cutoff)}
    t0 = time.perf_counter()
    if args.no_reduce:
        kernel_offset = 0
        trace = None
    else:
        kr = causal_reduce(g)
        kernel_offset = kr.offset
        trace = kr.trace
    res = causal_search(g, seed=args.seed, cit=args.cit == "on", **cutoff_kw)
    elapsed = time.perf_counter() - t0
    kernel_is = [v for v in g.alive_vertices() if v not in res.cover]
    full = set(kernel_is) if trace is None else reconstruct_solution(trace, kernel_is)
    if args.out_solution:
        gio.write_solution(args.out_solution, full, data.index_base)
    best_is = kernel_offset + res.is_weight
    stats = {
        "best_is_weight": best_is,
        "best_cover_weight": total - best_is,
        "iterations": res.iterations,
        "cit_bulk_removals": res.cit_bulk_removals,
        "elapsed_secs": round(elapsed, 4),
        "seed": args.seed,
    }
    _emit_stats(stats, args.stats, args.json)
    return 0


def cmd_verify(args) -> int:
    data, g, _ = _load(args)
    sol = gio.read_solution(args.solution, data.index_base)
    report = verify(g, sol)
    _emit_stats(report.as_dict(), None, True)
    return 0


def cmd_explain(args) -> int:
    data, g, _ = _load(args)
    base = data.index_base
    v = args.vertex - base
    if not g.is_alive(v):
        raise UnknownVertex(f"vertex {args.vertex} is not in the graph")
    budget = CitBudget()
    conf = compute_confining(g, v, budget)
    cov = compute_covering(g, v, budget)

    def ext(s):
        return sorted(x + base for x in s)

    out = {
        "vertex": args.vertex,
        "confining": {
            "unconfined": conf.unconfined,
            "set": None if conf.unconfined else ext(conf.confining_set),
        },
        "covering": {
            "uncovered": cov.uncovered,
            "set": None if cov.uncovered else ext(cov.covering_set),
        },
        "inferred_confining": ext(inferred_confining(g, v, budget)),
        "inferred_covering": ext(inferred_covering(g, v, budget)),
    }
    print(json.dumps(out, indent=2))
    return 0


def cmd_gen_weights(args) -> int:
    spec = WeightGenSpec(lo=args.lo, hi=args.hi, seed=args.seed)
    vec = gen_weights(args.n, spec)
    if args.out:
        with open(args.out, "w") as fh:
            fh.writelines(f"{w}\n" for w in vec)
    else:
        for w in vec:
            print(w)
    return 0


def cmd_bench(args) -> int:
    config = BenchConfig.from_json(args.config)
    rows = bench(config, args.out_dir)
    failures = [r for r in rows if r.get("error")]
    print(f"bench: {len(rows)} cells, {len(failures)} failed, outputs in {args.out_dir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mwisolve",
                                     description="Maximum weight independent set toolkit")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("reduce", help="kernelize a graph")
    _common(p)
    p.add_argument("--out-kernel", help="write the kernel graph (METIS, weighted)")
    p.add_argument("--out-trace", help="write the reduction event log (JSON)")
    p.add_argument("--stats", help="write stats JSON here")
    p.add_argument("--disable-step", action="append", choices=STEP_NAMES)
    p.set_defaults(fn=cmd_reduce)

    p = subs.add_parser("solve", help="exact branch and reduce")
    _common(p)
    p.add_argument("--time-limit", type=float, default=1000.0)
    p.add_argument("--constraints", choices=("on", "off"), default="on")
    p.add_argument("--branching", choices=("confining", "plain"), default="confining")
    p.add_argument("--out-solution")
    p.add_argument("--stats")
    p.set_defaults(fn=cmd_solve)

    p = subs.add_parser("search", help="kernelize then run local search")
    _common(p)
    p.add_argument("--cutoff", default="10", help="seconds, or iters:N")
    p.add_argument("--cit", choices=("on", "off"), default="on")
    p.add_argument("--no-reduce", action="store_true", help="search the raw graph")
    p.add_argument("--out-solution")
    p.add_argument("--stats")
    p.set_defaults(fn=cmd_search)

    p = subs.add_parser("verify", help="check an independent set file")
    _common(p)
    p.add_argument("solution", help="solution file, one vertex id per line")
    p.set_defaults(fn=cmd_verify)

    p = subs.add_parser("explain", help="print a vertex's conflict-analysis sets")
    _common(p)
    p.add_argument("--vertex", type=int, required=True)
    p.set_defaults(fn=cmd_explain)

    p = subs.add_parser("gen-weights", help="emit a reproducible weight vector")
    p.add_argument("n", type=int)
    p.add_argument("--lo", type=int, default=1)
    p.add_argument("--hi", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_gen_weights)

    p = subs.add_parser("bench", help="run a benchmark config")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(fn=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except NotIndependent as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 3
    except (MwisError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
