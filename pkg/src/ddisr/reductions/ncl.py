"""Nondeterministic constraint logic: machines, brute-force oracle, vertex gadgets and the compiler.

Gadget vertex labels follow the usual drawing (1-based, top to bottom).
Solid edges are edges; dotted edges are paths of length ``d - 2``, which for
``d = 2`` collapse to a single vertex.  Each gadget has three port edges
``(outer, inner)`` named ``top``, ``left`` and ``right``; a token on the outer
vertex means the NCL edge points into the gadget.

Compiled graphs share port edges: a gadget's outer port vertex is the inner
port vertex of the gadget across the machine edge.  Pendant machine edges
(one free end) get a fresh leaf as the outer vertex.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product

from ..engine import Kernel, bits, mask_of
from ..graph import Graph
from ..instance import DdisInstance, FormatError, Rule, _data_lines, _ints, token_set
from .base import ReductionOutput

AND, OR = "AND", "OR"
PORTS = ("top", "left", "right")


class NclError(ValueError):
    pass


@dataclass(frozen=True)
class NclEdge:
    id: int
    u: int
    v: int | None  # None: pendant edge with a free end
    weight: int


@dataclass(frozen=True)
class NclMachine:
    vertices: dict  # id -> AND | OR
    edges: tuple[NclEdge, ...]
    ports: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.id)))
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise NclError("duplicate edge id")
        incident: dict[int, list[NclEdge]] = {v: [] for v in self.vertices}
        for v, kind in self.vertices.items():
            if kind not in (AND, OR):
                raise NclError(f"vertex {v} has unknown type {kind!r}")
        for e in self.edges:
            if e.weight not in (1, 2):
                raise NclError(f"edge {e.id} has weight {e.weight}")
            if e.u == e.v:
                raise NclError(f"edge {e.id} is a loop")
            for x in (e.u, e.v):
                if x is None:
                    continue
                if x not in incident:
                    raise NclError(f"edge {e.id} uses unknown vertex {x}")
                incident[x].append(e)
        ports = {}
        for v, es in incident.items():
            if len(es) != 3:
                raise NclError(f"vertex {v} has degree {len(es)}, expected 3")
            weights = sorted(e.weight for e in es)
            if self.vertices[v] == AND:
                if weights != [1, 1, 2]:
                    raise NclError(f"AND vertex {v} needs weights 1,1,2")
                top = next(e for e in es if e.weight == 2)
                rest = [e for e in es if e is not top]
                order = [top, *rest]
            else:
                if weights != [2, 2, 2]:
                    raise NclError(f"OR vertex {v} needs weights 2,2,2")
                order = es
            for name, e in zip(PORTS, order):
                ports[(v, e.id)] = name
        object.__setattr__(self, "ports", ports)

    def edge(self, eid: int) -> NclEdge:
        return next(e for e in self.edges if e.id == eid)


@dataclass(frozen=True)
class NclConfig:
    """Head of every edge; ``None`` means a pendant edge points out to its free end."""

    heads: tuple[tuple[int, int | None], ...]

    @classmethod
    def of(cls, heads: dict) -> "NclConfig":
        return cls(tuple(sorted(heads.items())))

    def as_dict(self) -> dict:
        return dict(self.heads)


def in_weight(m: NclMachine, heads: dict, v: int) -> int:
    return sum(e.weight for e in m.edges if heads[e.id] == v and v in (e.u, e.v))


def is_valid_config(m: NclMachine, c: NclConfig) -> bool:
    heads = c.as_dict()
    if set(heads) != {e.id for e in m.edges}:
        return False
    for e in m.edges:
        if heads[e.id] not in (e.u, e.v):
            return False
    return all(in_weight(m, heads, v) >= 2 for v in m.vertices)


def all_configs(m: NclMachine) -> list[NclConfig]:
    out = []
    for choice in product(*[(e.u, e.v) for e in m.edges]):
        c = NclConfig(tuple(zip((e.id for e in m.edges), choice)))
        if is_valid_config(m, c):
            out.append(c)
    return out


def _flip(e: NclEdge, head):
    return e.v if head == e.u else e.u


def ncl_reachable(m: NclMachine, s: NclConfig) -> set[NclConfig]:
    if not is_valid_config(m, s):
        raise NclError("invalid source configuration")
    seen = {s}
    queue = deque([s])
    while queue:
        cur = queue.popleft()
        heads = cur.as_dict()
        for e in m.edges:
            nh = dict(heads)
            nh[e.id] = _flip(e, heads[e.id])
            old = heads[e.id]
            # only the vertex losing the edge can become invalid
            if old is not None and in_weight(m, nh, old) < 2:
                continue
            nxt = NclConfig.of(nh)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def ncl_bruteforce(m: NclMachine, s: NclConfig, t: NclConfig) -> bool:
    """BFS over valid orientations under single-edge flips."""
    if not is_valid_config(m, t):
        raise NclError("invalid target configuration")
    return t in ncl_reachable(m, s)


# ---------------------------------------------------------------------------
# gadgets


@dataclass(frozen=True)
class NclGadget:
    kind: str
    d: int
    graph: Graph
    ports: dict  # name -> (outer, inner)
    weights: dict  # name -> 1 | 2
    internal_slots: tuple[int, ...]  # vertices an internal token may occupy initially
    labels: dict  # drawing label -> vertex id

    def tokens(self, inward: dict) -> tuple[int, ...]:
        """Token set for a port orientation (``inward[name]`` true if the edge points in)."""
        toks = [self.ports[p][0] if inward[p] else self.ports[p][1] for p in PORTS]
        if self.kind == OR:
            toks.append(_or_internal(self.labels, inward))
        return token_set(toks)

    def initial_tokens(self) -> tuple[int, ...]:
        return self.tokens({"top": True, "left": False, "right": False})


def _or_internal(labels: dict, inward: dict) -> int:
    if inward["top"]:
        return labels[4]
    return labels[5] if inward["left"] else labels[6]


def _build(n_labels: int, solid, dotted, d: int) -> tuple[Graph, dict]:
    rep = {x: x for x in range(1, n_labels + 1)}
    if d == 2:
        # a path of length 0 identifies its endpoints
        def find(x):
            while rep[x] != x:
                x = rep[x]
            return x

        for a, b in dotted:
            ra, rb = find(a), find(b)
            if ra != rb:
                rep[max(ra, rb)] = min(ra, rb)
        rep = {x: find(x) for x in rep}
    ids: dict[int, int] = {}
    for x in range(1, n_labels + 1):
        if rep[x] == x:
            ids[x] = len(ids)
    labels = {x: ids[rep[x]] for x in rep}
    edges = {tuple(sorted((labels[a], labels[b]))) for a, b in solid}
    nxt = len(ids)
    if d >= 3:
        for a, b in dotted:
            prev = labels[a]
            for _ in range(d - 3):
                edges.add((prev, nxt))
                prev = nxt
                nxt += 1
            edges.add(tuple(sorted((prev, labels[b]))))
    return Graph.from_edges(nxt, sorted(edges)), labels


def ncl_and_gadget(d: int) -> NclGadget:
    if d < 2:
        raise ValueError("d must be at least 2")
    solid = [(1, 2), (5, 7), (6, 8), (3, 5), (4, 6)]
    dotted = [(2, 3), (3, 4), (2, 4)]
    g, lab = _build(8, solid, dotted, d)
    ports = {"top": (lab[1], lab[2]), "left": (lab[7], lab[5]), "right": (lab[8], lab[6])}
    return NclGadget(AND, d, g, ports, {"top": 2, "left": 1, "right": 1}, (), lab)


def ncl_or_gadget(d: int) -> NclGadget:
    if d < 2:
        raise ValueError("d must be at least 2")
    solid = [(1, 2), (3, 4), (4, 5), (5, 6), (4, 6), (7, 9), (9, 11), (8, 10), (10, 12)]
    dotted = [(2, 3), (5, 7), (6, 8)]
    g, lab = _build(12, solid, dotted, d)
    ports = {"top": (lab[1], lab[2]), "left": (lab[11], lab[9]), "right": (lab[12], lab[10])}
    slots = (lab[4], lab[5], lab[6])
    return NclGadget(OR, d, g, ports, {"top": 2, "left": 2, "right": 2}, slots, lab)


@dataclass(frozen=True)
class GadgetSemantics:
    """Summary of the TS state space of an isolated gadget (outer port vertices are leaves)."""

    patterns: frozenset  # reachable port orientations, as tuples of inward flags in PORTS order
    transitions: frozenset  # (pattern, pattern) pairs joined by a single port move
    confined: bool  # every reachable state has one token per port edge, others internal
    pinned_connected: bool  # for each pattern, states with that pattern are connected by internal moves
    states: int

    def expected_patterns(self, weights: dict) -> frozenset:
        return frozenset(
            p for p in product((False, True), repeat=3)
            if sum(w for w, inward in zip((weights[x] for x in PORTS), p) if inward) >= 2
        )


def gadget_semantics(gad: NclGadget, rule: Rule = Rule.TS) -> GadgetSemantics:
    """Exhaustive BFS over the gadget's own configurations.

    Port-pattern transitions are compared against single NCL edge flips by the
    caller; ``pinned_connected`` certifies that the internal arrangement never
    matters, so every flip allowed from one state of a pattern is allowed (after
    internal moves) from all of them.
    """
    kern = Kernel(gad.graph, gad.d)
    port_of = {}
    for i, p in enumerate(PORTS):
        outer, inner = gad.ports[p]
        port_of[outer] = (i, True)
        port_of[inner] = (i, False)

    def pattern(state: int):
        flags: list[bool | None] = [None, None, None]
        internal = 0
        for v in bits(state):
            if v in port_of:
                i, inward = port_of[v]
                if flags[i] is not None:
                    return None
                flags[i] = inward
            else:
                internal += 1
        if None in flags or internal != (1 if gad.kind == OR else 0):
            return None
        return tuple(flags)

    start = mask_of(gad.initial_tokens())
    seen = {start}
    queue = deque([start])
    edges = []
    while queue:
        cur = queue.popleft()
        for _, _, nxt in kern.moves(cur, rule):
            edges.append((cur, nxt))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    pats = {s: pattern(s) for s in seen}
    confined = all(p is not None for p in pats.values())
    transitions = set()
    parent = {s: s for s in seen}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        if pats[a] != pats[b]:
            transitions.add((pats[a], pats[b]))
        else:
            parent[find(a)] = find(b)
    roots: dict = {}
    for s in seen:
        roots.setdefault(pats[s], set()).add(find(s))
    pinned = all(len(r) == 1 for r in roots.values())
    return GadgetSemantics(
        frozenset(p for p in pats.values() if p is not None),
        frozenset(transitions), confined, pinned, len(seen),
    )


def expected_transitions(patterns) -> frozenset:
    pats = set(patterns)
    return frozenset(
        (p, q) for p in pats for q in pats if sum(a != b for a, b in zip(p, q)) == 1
    )


# ---------------------------------------------------------------------------
# compiler


def compile_ncl(m: NclMachine, s: NclConfig, t: NclConfig, d: int) -> ReductionOutput:
    """Join one gadget per machine vertex at shared port edges; rule TS."""
    for name, c in (("source", s), ("target", t)):
        if not is_valid_config(m, c):
            raise NclError(f"invalid {name} configuration")
    gadgets = {v: (ncl_and_gadget(d) if kind == AND else ncl_or_gadget(d)) for v, kind in sorted(m.vertices.items())}
    vmap: dict = {}
    nxt = 0
    local: dict[int, dict[int, int]] = {}
    outer_locals = {v: {gad.ports[p][0] for p in PORTS} for v, gad in gadgets.items()}
    for v, gad in gadgets.items():
        local[v] = {}
        for x in range(gad.graph.n):
            if x in outer_locals[v]:
                continue
            local[v][x] = nxt
            vmap[("gadget", v, x)] = nxt
            nxt += 1
    port_name = {key: name for key, name in m.ports.items()}
    inner: dict[tuple[int, int], int] = {}
    for (v, eid), name in port_name.items():
        x = gadgets[v].ports[name][1]
        inner[(v, eid)] = local[v][x]
        del vmap[("gadget", v, x)]
        vmap[("port", eid, v)] = inner[(v, eid)]
    leaf = {}
    for e in m.edges:
        if e.v is None:
            leaf[e.id] = nxt
            vmap[("leaf", e.id)] = nxt
            nxt += 1
    edges = set()
    for v, gad in gadgets.items():
        outer_to_edge = {}
        for (w, eid), name in port_name.items():
            if w == v:
                outer_to_edge[gad.ports[name][0]] = eid
        for a, b in gad.graph.edges():
            ends = []
            for x in (a, b):
                if x in local[v]:
                    ends.append(local[v][x])
                else:
                    e = m.edge(outer_to_edge[x])
                    other = e.v if e.u == v else e.u
                    ends.append(leaf[e.id] if other is None else inner[(other, e.id)])
            edges.add(tuple(sorted(ends)))
    g = Graph.from_edges(nxt, sorted(edges))
    if g.max_degree() > 3:
        raise NclError(f"compiled graph has maximum degree {g.max_degree()}")

    def tokens(c: NclConfig):
        heads = c.as_dict()
        toks = []
        for e in m.edges:
            h = heads[e.id]
            if e.v is None:
                toks.append(leaf[e.id] if h == e.u else inner[(e.u, e.id)])
            else:
                tail = e.v if h == e.u else e.u
                toks.append(inner[(tail, e.id)])
        for v, gad in gadgets.items():
            if gad.kind == OR:
                inward = {port_name[(v, e.id)]: heads[e.id] == v for e in m.edges if (v, e.id) in port_name}
                toks.append(local[v][_or_internal(gad.labels, inward)])
        return toks

    inst = DdisInstance(g, d, Rule.TS, tokens(s), tokens(t))
    notes = {"gadgets": {v: gad.kind for v, gad in gadgets.items()}, "port_edges": {
        e.id: (inner[(e.u, e.id)], leaf[e.id] if e.v is None else inner[(e.v, e.id)]) for e in m.edges
    }, "config_tokens": tokens}
    return ReductionOutput(inst, vmap, notes)


def port_confined(out: ReductionOutput, rule: Rule = Rule.TS, budget: int | None = None) -> bool:
    """Every state reachable from the source keeps exactly one token on each port edge."""
    from ..engine import reachable_sets

    inst = out.instance
    port_edges = list(out.notes["port_edges"].values())
    for state in reachable_sets(inst.graph, inst.d, rule, inst.source, budget):
        s = set(state)
        if any(len(s & set(pe)) != 1 for pe in port_edges):
            return False
    return True


def jumps_are_slides(out: ReductionOutput, budget: int | None = None) -> bool:
    """On every reachable state the TJ successors coincide with the TS successors."""
    from ..engine import kernel, reachable_sets

    inst = out.instance
    kern = kernel(inst.graph, inst.d)
    for state in reachable_sets(inst.graph, inst.d, Rule.TJ, inst.source, budget):
        mask = mask_of(state)
        ts = {nxt for _, _, nxt in kern.moves(mask, Rule.TS)}
        tj = {nxt for _, _, nxt in kern.moves(mask, Rule.TJ)}
        if ts != tj:
            return False
    return True


# ---------------------------------------------------------------------------
# text format


def parse_ncl(text: str) -> tuple[NclMachine, NclConfig | None, NclConfig | None]:
    """``ncl 1`` / ``vertex <id> AND|OR`` / ``edge <id> <u> <v|-> <w>`` / ``config_s <e> <head|-> ...``."""
    lines = list(_data_lines(text))
    if not lines or lines[0][1] != ["ncl", "1"]:
        raise FormatError("expected 'ncl 1' header", lines[0][0] if lines else 0)
    vertices: dict[int, str] = {}
    edges = []
    configs: dict[str, dict] = {}
    for lineno, words in lines[1:]:
        key = words[0]
        if key == "vertex":
            if len(words) != 3 or words[2] not in (AND, OR):
                raise FormatError("'vertex' takes an id and AND|OR", lineno)
            (vid,) = _ints(words[1:2], lineno)
            if vid in vertices:
                raise FormatError(f"repeated vertex {vid}", lineno)
            vertices[vid] = words[2]
        elif key == "edge":
            if len(words) != 5:
                raise FormatError("'edge' takes id, u, v and weight", lineno)
            eid, u, w = _ints([words[1], words[2], words[4]], lineno)
            v = None if words[3] == "-" else _ints([words[3]], lineno)[0]
            edges.append(NclEdge(eid, u, v, w))
        elif key in ("config_s", "config_t"):
            args = words[1:]
            if len(args) % 2:
                raise FormatError("config takes <edge-id> <head> pairs", lineno)
            heads = {}
            for i in range(0, len(args), 2):
                (eid,) = _ints([args[i]], lineno)
                heads[eid] = None if args[i + 1] == "-" else _ints([args[i + 1]], lineno)[0]
            configs[key] = heads
        else:
            raise FormatError(f"unknown key {key!r}", lineno)
    try:
        m = NclMachine(vertices, tuple(edges))
    except NclError as exc:
        raise FormatError(str(exc)) from None
    out = []
    for key in ("config_s", "config_t"):
        if key not in configs:
            out.append(None)
            continue
        c = NclConfig.of(configs[key])
        if not is_valid_config(m, c):
            raise FormatError(f"{key} is not a valid configuration")
        out.append(c)
    return m, out[0], out[1]


def format_ncl(m: NclMachine, s: NclConfig | None = None, t: NclConfig | None = None) -> str:
    lines = ["ncl 1"]
    lines += [f"vertex {v} {kind}" for v, kind in sorted(m.vertices.items())]
    lines += [f"edge {e.id} {e.u} {'-' if e.v is None else e.v} {e.weight}" for e in m.edges]
    for key, c in (("config_s", s), ("config_t", t)):
        if c is not None:
            parts = [f"{eid} {'-' if h is None else h}" for eid, h in c.heads]
            lines.append(" ".join([key, *parts]))
    return "\n".join(lines) + "\n"


def small_machines(max_vertices: int = 3, max_edges: int = 6) -> list[NclMachine]:
    """Every machine with at most ``max_vertices`` gadgets, up to relabelling by construction order.

    Vertices are typed in nondecreasing order (AND before OR); the three
    half-edges at each vertex are paired with half-edges of later-or-equal
    vertices or left pendant, with weights forced by the types.
    """
    out = []
    seen = set()
    for nv in range(1, max_vertices + 1):
        for n_and in range(nv + 1):
            kinds = [AND] * n_and + [OR] * (nv - n_and)
            stubs = []
            for v, kind in enumerate(kinds):
                ws = (2, 1, 1) if kind == AND else (2, 2, 2)
                stubs += [(v, w) for w in ws]
            for pairing in _pairings(stubs):
                key = (tuple(kinds), _canon(kinds, pairing))
                if key in seen:
                    continue
                seen.add(key)
                edges = []
                for i, (a, b) in enumerate(pairing):
                    if b is None:
                        edges.append(NclEdge(i, a[0], None, a[1]))
                    else:
                        edges.append(NclEdge(i, a[0], b[0], a[1]))
                if len(edges) > max_edges:
                    continue
                try:
                    out.append(NclMachine({v: k for v, k in enumerate(kinds)}, tuple(edges)))
                except NclError:
                    continue
    return out


def _pairings(stubs):
    if not stubs:
        yield []
        return
    first, rest = stubs[0], stubs[1:]
    for tail in _pairings(rest):
        yield [(first, None), *tail]
    for i, other in enumerate(rest):
        if other[1] == first[1] and other[0] != first[0]:
            for tail in _pairings(rest[:i] + rest[i + 1:]):
                yield [(first, other), *tail]


def _canon(kinds, pairing):
    from itertools import permutations

    best = None
    n = len(kinds)
    for perm in permutations(range(n)):
        if any(kinds[perm[i]] != kinds[i] for i in range(n)):
            continue
        key = sorted(
            tuple(sorted(((perm[a[0]], a[1]), (-1, a[1]) if b is None else (perm[b[0]], b[1]))))
            for a, b in pairing
        )
        if best is None or key < best:
            best = key
    return tuple(best)
