"""ISR under TJ to DdISR under TJ on general graphs by edge subdivision.

Every edge ``uv`` becomes a path ``x_0 .. x_{d-1}`` (``x_0 = u``).  For odd
``d`` the middle vertices ``x_p`` (``p = (d-1)/2``) form one clique; for even
``d`` a hub ``x*`` is joined to both middle vertices ``x_p, x_{p+1}``
(``p = (d-2)/2``) of every path.  Token sets are unchanged.
"""

from __future__ import annotations

from ..graph import Graph
from ..instance import DdisInstance, InstanceError, Rule, is_independent
from .base import ReductionOutput


def reduce_isr_to_general_tj(g: Graph, source, target, d: int) -> ReductionOutput:
    if d < 3:
        raise ValueError("d must be at least 3")
    for name, s in (("source", source), ("target", target)):
        if not is_independent(g, s):
            raise InstanceError(f"{name} is not an independent set of the input graph")
    n = g.n
    vmap: dict = {("v", v): v for v in range(n)}
    edges = []
    nxt = n
    hubs = []
    p = (d - 1) // 2 if d % 2 else (d - 2) // 2
    for u, v in g.edges():
        path = [u]
        for i in range(1, d - 1):
            vmap[("x", u, v, i)] = nxt
            path.append(nxt)
            nxt += 1
        path.append(v)
        edges += list(zip(path, path[1:]))
        hubs.append(path[p] if d % 2 else (path[p], path[p + 1]))
    star = None
    if d % 2:
        edges += [(a, b) for i, a in enumerate(hubs) for b in hubs[i + 1:]]
    elif hubs:
        star = nxt
        vmap[("star",)] = star
        nxt += 1
        for a, b in hubs:
            edges += [(star, a), (star, b)]
    gp = Graph.from_edges(nxt, edges)
    inst = DdisInstance(gp, d, Rule.TJ, source, target)
    notes = {"new_vertices": list(range(n, nxt)), "hub_vertices": hubs, "star": star, "p": p}
    return ReductionOutput(inst, vmap, notes)
