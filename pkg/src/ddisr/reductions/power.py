"""Instances where TS on ``G`` and TS on ``G^(d-1)`` disagree."""

from __future__ import annotations

from ..graph import Graph
from ..instance import TokenSet


def ts_power_vertex_count(d: int, k: int) -> int:
    return k * d + 2 * k * (k - 1) * (d - 2)


def build_ts_power_counterexample(d: int, k: int) -> tuple[Graph, TokenSet, TokenSet]:
    """``k`` parallel paths ``v_i .. w_i`` of length ``d - 1`` cross-linked by connector paths.

    Each ``v*_i`` (neighbour of ``v_i`` on its path) is joined to every other
    ``v_j`` by a fresh path of length ``d - 1``; the same on the ``w`` side.
    No token of ``I = {v_i}`` can slide in ``G``, while in ``G^(d-1)`` each
    ``v_i`` is adjacent to ``w_i`` only.

    Layout: path ``i`` holds ids ``i*d .. i*d + d - 1`` with ``v_i = i*d`` and
    ``w_i = i*d + d - 1``; connector interiors follow, ``v`` side first, in
    ``(i, j)`` order.
    """
    if d < 3:
        raise ValueError("d must be at least 3")
    if k < 2:
        raise ValueError("k must be at least 2")
    edges = []
    for i in range(k):
        base = i * d
        edges += [(base + j, base + j + 1) for j in range(d - 1)]
    nxt = k * d

    def connect(a: int, b: int) -> None:
        nonlocal nxt
        prev = a
        for _ in range(d - 2):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, b))

    for side in ("v", "w"):
        for i in range(k):
            star = i * d + 1 if side == "v" else i * d + d - 2
            for j in range(k):
                if j != i:
                    end = j * d if side == "v" else j * d + d - 1
                    connect(star, end)
    g = Graph.from_edges(nxt, edges)
    assert g.n == ts_power_vertex_count(d, k)
    source = tuple(i * d for i in range(k))
    target = tuple(i * d + d - 1 for i in range(k))
    return g, source, target
