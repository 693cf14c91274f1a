"""ISR under TJ to DdISR under TJ on chordal graphs, for odd ``d``.

Each edge ``uv`` gets a vertex ``x_uv`` adjacent to ``u`` and ``v``; the
``x`` vertices form a clique; each original vertex grows a pendant path of
``(d-3)/2`` vertices whose far end ``f(v)`` carries the token.
"""

from __future__ import annotations

from ..graph import Graph
from ..instance import DdisInstance, InstanceError, ReconfSequence, Rule, is_independent, replay
from .base import ReductionOutput


def reduce_isr_to_chordal_odd(g: Graph, source, target, d: int) -> ReductionOutput:
    if d < 3 or d % 2 == 0:
        raise ValueError("d must be odd and at least 3")
    source, target = tuple(sorted(source)), tuple(sorted(target))
    for name, s in (("source", source), ("target", target)):
        if not is_independent(g, s):
            raise InstanceError(f"{name} is not an independent set of the input graph")
    if len(source) != len(target):
        raise InstanceError("source and target differ in size")

    n = g.n
    vmap: dict = {("v", v): v for v in range(n)}
    graph_edges = g.edges()
    edges = []
    xs = []
    for idx, (u, v) in enumerate(graph_edges):
        x = n + idx
        vmap[("x", u, v)] = x
        xs.append(x)
        edges += [(x, u), (x, v)]
    edges += [(a, b) for i, a in enumerate(xs) for b in xs[i + 1:]]
    nxt = n + len(xs)
    tail = (d - 3) // 2
    f = list(range(n))
    for v in range(n):
        prev = v
        for i in range(tail):
            vmap[("p", v, i)] = nxt
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        f[v] = prev
    gp = Graph.from_edges(nxt, edges)
    inst = DdisInstance(gp, d, Rule.TJ, [f[v] for v in source], [f[v] for v in target])
    notes = {
        "f": f,
        "edge_vertices": xs,
        "new_vertices": list(range(n, nxt)),
        "paths": {v: [vmap[("p", v, i)] for i in range(tail)] for v in range(n)},
    }
    return ReductionOutput(inst, vmap, notes)


def lift_isr_witness(out: ReductionOutput, seq: ReconfSequence) -> ReconfSequence:
    """Map a TJ-sequence of the source graph through ``f``."""
    f = out.notes["f"]
    return ReconfSequence.of(Rule.TJ, [(f[x], f[y]) for x, y in seq.pairs()])


def normalize_witness(out: ReductionOutput, seq: ReconfSequence) -> ReconfSequence:
    """Rewrite a TJ-sequence so tokens only ever sit on path ends ``f(v)``.

    Repeatedly takes the first jump ``x -> y`` from a path end into the rest of
    some ``P_u + u``, retargets it to ``f(u)``, and rewrites the token's next
    jump ``y -> z`` to start from ``f(u)`` (dropping it if ``z = f(u)``).
    Requires at least two tokens: with one token the move may pass through
    edge vertices, and the trivial direct jump is used instead.
    """
    inst = out.instance
    f = out.notes["f"]
    ends = set(f)
    owner = {}
    for v, path in out.notes["paths"].items():
        for p in [v, *path]:
            owner[p] = v
    moves = seq.pairs()
    if len(inst.source) <= 1:
        if inst.source == inst.target:
            return ReconfSequence(Rule.TJ)
        return ReconfSequence.of(Rule.TJ, [(inst.source[0], inst.target[0])])
    while True:
        hit = None
        for i, (x, y) in enumerate(moves):
            if x in ends and y not in ends and y in owner:
                hit = i
                break
        if hit is None:
            break
        x, y = moves[hit]
        fu = f[owner[y]]
        if x == fu:
            # a token stepping into its own pendant path just stays put
            del moves[hit]
            start = hit
        else:
            moves[hit] = (x, fu)
            start = hit + 1
        for j in range(start, len(moves)):
            if moves[j][0] == y:
                z = moves[j][1]
                if z == fu:
                    del moves[j]
                else:
                    moves[j] = (fu, z)
                break
        else:
            raise ValueError("token parked inside a pendant path at the end of the sequence")
    return ReconfSequence.of(Rule.TJ, moves)


def pull_back_witness(out: ReductionOutput, seq: ReconfSequence) -> ReconfSequence:
    """Normalise a TJ-sequence of the constructed graph and map it back through ``f^-1``."""
    norm = normalize_witness(out, seq)
    final, bad = replay(out.instance.graph, out.instance.d, Rule.TJ, out.instance.source, norm.pairs())
    if bad is not None or final != out.instance.target:
        raise ValueError(f"normalisation produced an invalid sequence: {bad}")
    inv = {fv: v for v, fv in enumerate(out.notes["f"])}
    return ReconfSequence.of(Rule.TJ, [(inv[x], inv[y]) for x, y in norm.pairs()])
