"""Readers and writers for graph, weight, and solution files.

Supported graph formats:

* METIS: header ``n m fmt``; with fmt=10 line i+1 starts with w(i) followed by
  the 1-indexed neighbors of vertex i. ``%`` lines are comments.
* DIMACS-like: ``p edge n m`` header, ``v <id> <weight>`` weight lines,
  ``e <u> <v>`` edge lines, 1-indexed. ``c`` lines are comments.
* Plain edge list: one ``u v`` pair per line (0- or 1-indexed), weights in a
  separate file with one integer per line.
"""

from __future__ import annotations

import os

from .errors import MalformedInput
from .graph import GraphData

FORMATS = ("metis", "dimacs", "edges")

_EXTENSIONS = {
    ".graph": "metis",
    ".metis": "metis",
    ".dimacs": "dimacs",
    ".clq": "dimacs",
    ".col": "dimacs",
    ".edges": "edges",
    ".el": "edges",
    ".txt": "edges",
}


def detect_format(path: str) -> str:
    ext = os.path.splitext(path)[1].lower()
    try:
        return _EXTENSIONS[ext]
    except KeyError:
        raise MalformedInput(f"cannot infer format from {path!r}; pass --format")


def _int(tok: str, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise MalformedInput(f"bad {what}: {tok!r}")


def parse_metis(text: str) -> GraphData:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("%")]
    if not lines:
        raise MalformedInput("empty METIS file")
    header = lines[0].split()
    if len(header) < 2:
        raise MalformedInput("METIS header needs at least n and m")
    n = _int(header[0], "vertex count")
    m = _int(header[1], "edge count")
    fmt = header[2] if len(header) > 2 else "0"
    weighted = fmt.endswith("10") or fmt == "10"
    if fmt not in ("0", "00", "10", "010"):
        raise MalformedInput(f"unsupported METIS fmt {fmt!r}")
    if len(lines) - 1 != n:
        raise MalformedInput(f"expected {n} vertex lines, got {len(lines) - 1}")
    weights: list[int] | None = [] if weighted else None
    edges: list[tuple[int, int]] = []
    for i in range(n):
        toks = lines[1 + i].split()
        if weighted:
            if not toks:
                raise MalformedInput(f"vertex {i + 1}: missing weight")
            weights.append(_int(toks[0], "weight"))
            toks = toks[1:]
        for t in toks:
            j = _int(t, "neighbor id")
            if not (1 <= j <= n):
                raise MalformedInput(f"vertex {i + 1}: neighbor {j} out of range")
            if j - 1 != i and i < j - 1:
                edges.append((i, j - 1))
            elif j - 1 == i:
                raise MalformedInput(f"self-loop at vertex {i + 1}")
    if len(edges) != m:
        # Tolerate files whose adjacency lists are one-sided.
        seen = {tuple(sorted(e)) for e in edges}
        if len(seen) != m:
            raise MalformedInput(f"header claims {m} edges, found {len(seen)}")
    return GraphData(n=n, edges=edges, weights=weights, index_base=1)


def parse_dimacs(text: str) -> GraphData:
    n = None
    edges: list[tuple[int, int]] = []
    weights: list[int] | None = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        if toks[0] == "p":
            if len(toks) < 4 or toks[1] not in ("edge", "edges", "col"):
                raise MalformedInput(f"bad problem line: {line!r}")
            n = _int(toks[2], "vertex count")
            weights = None
        elif toks[0] == "v":
            if n is None:
                raise MalformedInput("v line before p line")
            if weights is None:
                weights = [1] * n
            vid = _int(toks[1], "vertex id")
            if not (1 <= vid <= n):
                raise MalformedInput(f"vertex {vid} out of range")
            weights[vid - 1] = _int(toks[2], "weight")
        elif toks[0] == "e":
            if n is None:
                raise MalformedInput("e line before p line")
            u = _int(toks[1], "endpoint")
            v = _int(toks[2], "endpoint")
            if not (1 <= u <= n and 1 <= v <= n):
                raise MalformedInput(f"edge ({u},{v}) out of range")
            edges.append((u - 1, v - 1))
        else:
            raise MalformedInput(f"unrecognized line: {line!r}")
    if n is None:
        raise MalformedInput("missing p line")
    return GraphData(n=n, edges=edges, weights=weights, index_base=1)


def parse_edge_list(text: str, index_base: int = 0) -> GraphData:
    edges: list[tuple[int, int]] = []
    top = -1
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("%"):
            continue
        toks = line.split()
        if len(toks) < 2:
            raise MalformedInput(f"edge line needs two endpoints: {line!r}")
        u = _int(toks[0], "endpoint") - index_base
        v = _int(toks[1], "endpoint") - index_base
        if u < 0 or v < 0:
            raise MalformedInput(f"endpoint below index base in line {line!r}")
        edges.append((u, v))
        top = max(top, u, v)
    return GraphData(n=top + 1, edges=edges, weights=None, index_base=index_base)


def parse_weight_file(text: str) -> list[int]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("%"):
            continue
        out.append(_int(line.split()[0], "weight"))
    return out


def read_graph(path: str, fmt: str | None = None, index_base: int = 0) -> GraphData:
    fmt = fmt or detect_format(path)
    with open(path) as fh:
        text = fh.read()
    if fmt == "metis":
        return parse_metis(text)
    if fmt == "dimacs":
        return parse_dimacs(text)
    if fmt == "edges":
        return parse_edge_list(text, index_base=index_base)
    raise MalformedInput(f"unknown format {fmt!r}")


def write_metis(data: GraphData, weights: list[int], path: str) -> None:
    adj: list[list[int]] = [[] for _ in range(data.n)]
    seen = set()
    for u, v in data.edges:
        key = (min(u, v), max(u, v))
        if key in seen or u == v:
            continue
        seen.add(key)
        adj[u].append(v)
        adj[v].append(u)
    with open(path, "w") as fh:
        fh.write(f"{data.n} {len(seen)} 10\n")
        for i in range(data.n):
            row = [str(weights[i])] + [str(j + 1) for j in sorted(adj[i])]
            fh.write(" ".join(row) + "\n")


def write_solution(path: str, vertices, index_base: int = 0) -> None:
    """One original-graph vertex id per line, ascending, in the input's numbering."""
    with open(path, "w") as fh:
        for v in sorted(vertices):
            fh.write(f"{v + index_base}\n")


def read_solution(path: str, index_base: int = 0) -> list[int]:
    with open(path) as fh:
        return [_int(ln.split()[0], "vertex id") - index_base for ln in fh if ln.strip()]
