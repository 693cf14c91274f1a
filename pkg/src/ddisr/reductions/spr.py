"""Shortest path reconfiguration: brute-force oracle and the layered reduction to DdISR.

Pipeline: prune to vertices/edges on shortest ``u-v`` paths, split into
distance layers ``D_0 .. D_k``, turn layers into cliques and complement the
edges between consecutive layers, then (for ``d >= 3``) subdivide every
inter-layer edge into a path of length ``d - 1`` and turn each cell ``D_i^j``
(the ``j``-th interior vertices of paths between ``D_i`` and ``D_{i+1}``)
into a clique.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from ..graph import Graph, distances_from
from ..instance import DdisInstance, FormatError, Rule, _data_lines, _ints, format_graph_lines, parse_graph_lines
from .base import ReductionOutput


@dataclass(frozen=True)
class SprInstance:
    graph: Graph
    u: int
    v: int
    p: tuple[int, ...]
    q: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(self.p))
        object.__setattr__(self, "q", tuple(self.q))
        k = distances_from(self.graph, self.u)[self.v]
        if k == float("inf"):
            raise ValueError("u and v are disconnected")
        for name, path in (("P", self.p), ("Q", self.q)):
            if not is_shortest_path(self.graph, self.u, self.v, path):
                raise ValueError(f"{name} is not a shortest {self.u}-{self.v} path")

    @property
    def k(self) -> int:
        return len(self.p) - 1


def is_shortest_path(g: Graph, u: int, v: int, path) -> bool:
    path = list(path)
    if not path or path[0] != u or path[-1] != v:
        return False
    if len(path) - 1 != distances_from(g, u)[v]:
        return False
    return all(g.has_edge(a, b) for a, b in zip(path, path[1:]))


def shortest_paths(g: Graph, u: int, v: int) -> list[tuple[int, ...]]:
    """Every shortest ``u-v`` path, lexicographically."""
    du, dv = distances_from(g, u), distances_from(g, v)
    k = du[v]
    if k == float("inf"):
        return []
    out = []

    def walk(path):
        x = path[-1]
        if x == v:
            out.append(tuple(path))
            return
        for y in g.adj[x]:
            if du[y] == du[x] + 1 and du[y] + dv[y] == k:
                path.append(y)
                walk(path)
                path.pop()

    walk([u])
    return out


def spr_bruteforce(inst: SprInstance) -> bool:
    """BFS over shortest ``u-v`` paths, adjacent when they differ in exactly one vertex."""
    paths = shortest_paths(inst.graph, inst.u, inst.v)
    by_mask: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    # index by "path with position i wildcarded" so neighbours are found in O(k)
    for path in paths:
        for i in range(len(path)):
            by_mask.setdefault(path[:i] + (-1,) + path[i + 1:], []).append(path)
    seen = {inst.p}
    queue = deque([inst.p])
    while queue:
        cur = queue.popleft()
        if cur == inst.q:
            return True
        for i in range(len(cur)):
            for nxt in by_mask[cur[:i] + (-1,) + cur[i + 1:]]:
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return False


def prune_layers(g: Graph, u: int, v: int) -> tuple[list[list[int]], set[tuple[int, int]]]:
    """Layers ``D_i`` of the shortest-path subgraph and its (layer-ordered) edges."""
    du, dv = distances_from(g, u), distances_from(g, v)
    k = du[v]
    if k == float("inf"):
        raise ValueError("u and v are disconnected")
    k = int(k)
    layers: list[list[int]] = [[] for _ in range(k + 1)]
    for x in range(g.n):
        if du[x] + dv[x] == k:
            layers[int(du[x])].append(x)
    kept = set()
    for x in range(g.n):
        for y in g.adj[x]:
            if du[x] + 1 + dv[y] == k:
                kept.add((x, y))
    return layers, kept


def reduce_spr_to_perfect(inst: SprInstance, d: int) -> ReductionOutput:
    if d < 2:
        raise ValueError("d must be at least 2")
    layers, kept = prune_layers(inst.graph, inst.u, inst.v)
    vmap: dict = {}
    layer_of = {}
    nxt = 0
    for i, layer in enumerate(layers):
        for x in layer:
            vmap[("v", x)] = nxt
            layer_of[x] = i
            nxt += 1
    edges = []
    for layer in layers:
        edges += [(vmap[("v", a)], vmap[("v", b)]) for a, b in combinations(layer, 2)]
    cross = []  # complemented inter-layer pairs, oriented D_i -> D_{i+1}
    for i in range(len(layers) - 1):
        for a in layers[i]:
            for b in layers[i + 1]:
                if (a, b) not in kept:
                    cross.append((a, b, i))
    cells: dict[tuple[int, int], list[int]] = {}
    for a, b, i in cross:
        prev = vmap[("v", a)]
        for j in range(1, d - 1):
            vmap[("s", a, b, j)] = nxt
            cells.setdefault((i, j), []).append(nxt)
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, vmap[("v", b)]))
    for members in cells.values():
        edges += list(combinations(members, 2))
    g2 = Graph.from_edges(nxt, edges)
    src = [vmap[("v", x)] for x in inst.p]
    tgt = [vmap[("v", x)] for x in inst.q]
    out_inst = DdisInstance(g2, d, Rule.TS, src, tgt)
    notes = {
        "layers": [[vmap[("v", x)] for x in layer] for layer in layers],
        "cells": {f"{i},{j}": members for (i, j), members in sorted(cells.items())},
        "cross_pairs": [(vmap[("v", a)], vmap[("v", b)]) for a, b, _ in cross],
        "kept_edges": sorted((vmap[("v", a)], vmap[("v", b)]) for a, b in kept),
        "new_vertices": list(range(sum(map(len, layers)), nxt)),
    }
    return ReductionOutput(out_inst, vmap, notes)


def parse_spr(text: str) -> SprInstance:
    lines = list(_data_lines(text))
    if not lines or lines[0][1] != ["spr", "1"]:
        raise FormatError("expected 'spr 1' header", lines[0][0] if lines else 0)
    g, rest = parse_graph_lines(lines[1:], None)
    paths = {}
    for lineno, words in rest:
        if words[0] not in ("path_p", "path_q"):
            raise FormatError(f"unknown key {words[0]!r}", lineno)
        paths[words[0]] = _ints(words[1:], lineno)
    if set(paths) != {"path_p", "path_q"}:
        raise FormatError("need both 'path_p' and 'path_q'")
    p, q = paths["path_p"], paths["path_q"]
    if not p or not q or p[0] != q[0] or p[-1] != q[-1]:
        raise FormatError("paths must share both endpoints")
    try:
        return SprInstance(g, p[0], p[-1], tuple(p), tuple(q))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_spr(inst: SprInstance) -> str:
    lines = ["spr 1", *format_graph_lines(inst.graph)]
    lines.append(" ".join(["path_p", *map(str, inst.p)]))
    lines.append(" ".join(["path_q", *map(str, inst.q)]))
    return "\n".join(lines) + "\n"
