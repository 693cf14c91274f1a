"""Undirected simple graphs on dense integer ids and the metric helpers built on them."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

#: Distance between vertices in different components.  ``math.inf`` compares
#: exactly against ints, so triangle-inequality checks need no tolerance.
INF = math.inf


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph with vertices ``0..n-1`` and sorted adjacency tuples."""

    n: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphError("adjacency length does not match vertex count")
        for u, nbrs in enumerate(self.adj):
            if list(nbrs) != sorted(set(nbrs)):
                raise GraphError(f"adjacency of {u} is not sorted and duplicate-free")
            for v in nbrs:
                if not 0 <= v < self.n:
                    raise GraphError(f"neighbor {v} of {u} out of range")
                if v == u:
                    raise GraphError(f"self-loop at {u}")
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u not in self._nbrset(v):
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    def _nbrset(self, v: int) -> frozenset[int]:
        cache = self.__dict__.get("_sets")
        if cache is None:
            cache = tuple(frozenset(a) for a in self.adj)
            object.__setattr__(self, "_sets", cache)
        return cache[v]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], strict: bool = True) -> Graph:
        """Build a graph from an edge list.

        With ``strict`` set, self-loops and repeated edges raise ``GraphError``;
        otherwise they are silently dropped.
        """
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                if strict:
                    raise GraphError(f"self-loop at {u}")
                continue
            if v in nbrs[u]:
                if strict:
                    raise GraphError(f"duplicate edge ({u}, {v})")
                continue
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    def __len__(self) -> int:
        return self.n

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbrset(u)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def induced(self, keep: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph relabelled densely; also returns new-id -> old-id."""
        old = sorted(set(keep))
        index = {v: i for i, v in enumerate(old)}
        edges = [(index[u], index[v]) for u in old for v in self.adj[u] if v in index and u < v]
        return Graph.from_edges(len(old), edges), old


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")


def distances_from(g: Graph, s: int) -> list[float]:
    """BFS distances from ``s``; unreachable vertices get ``INF``."""
    _check_vertex(g, s)
    dist: list[float] = [INF] * g.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in g.adj[u]:
            if dist[w] == INF:
                dist[w] = du
                queue.append(w)
    return dist


def distance_matrix(g: Graph) -> list[list[float]]:
    return [distances_from(g, s) for s in range(g.n)]


def ball(g: Graph, u: int, radius: int) -> dict[int, int]:
    """Vertices within ``radius`` of ``u`` mapped to their distance (truncated BFS)."""
    _check_vertex(g, u)
    seen = {u: 0}
    frontier = [u]
    for depth in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for w in g.adj[x]:
                if w not in seen:
                    seen[w] = depth
                    nxt.append(w)
        if not nxt:
            break
        frontier = nxt
    return seen


def s_neighborhood(g: Graph, u: int, s: int) -> set[int]:
    """Vertices at distance exactly ``s`` from ``u``."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    return {v for v, dv in ball(g, u, s).items() if dv == s}


def graph_power(g: Graph, s: int) -> Graph:
    """The ``s``-th power: same vertices, edge iff ``1 <= dist <= s``."""
    if s < 1:
        raise ValueError("power must be at least 1")
    if s == 1:
        return g
    adj = []
    for u in range(g.n):
        adj.append(tuple(sorted(v for v in ball(g, u, s) if v != u)))
    return Graph(g.n, tuple(adj))


def components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, listed by smallest member."""
    comp_of = [-1] * g.n
    comps: list[list[int]] = []
    for s in range(g.n):
        if comp_of[s] != -1:
            continue
        cid = len(comps)
        comp_of[s] = cid
        members = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if comp_of[w] == -1:
                    comp_of[w] = cid
                    members.append(w)
                    queue.append(w)
        comps.append(sorted(members))
    return comps


def component_index(g: Graph) -> list[int]:
    """Component id per vertex, ids following :func:`components` order."""
    index = [0] * g.n
    for cid, comp in enumerate(components(g)):
        for v in comp:
            index[v] = cid
    return index


def component_diameters(g: Graph) -> list[int]:
    out = []
    for comp in components(g):
        diam = 0
        for s in comp:
            dist = distances_from(g, s)
            diam = max(diam, max(int(dist[v]) for v in comp))
        out.append(diam)
    return out


def max_component_diameter(g: Graph) -> int:
    return max(component_diameters(g), default=0)


def mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search visiting order (ties broken by smallest id)."""
    weight = [0] * g.n
    numbered = [False] * g.n
    order = []
    for _ in range(g.n):
        best = -1
        for v in range(g.n):
            if not numbered[v] and (best == -1 or weight[v] > weight[best]):
                best = v
        numbered[best] = True
        order.append(best)
        for w in g.adj[best]:
            if not numbered[w]:
                weight[w] += 1
    return order


def is_perfect_elimination_ordering(g: Graph, order: Sequence[int]) -> bool:
    """True if every vertex's later neighbors form a clique.

    Uses the standard parent test: it suffices that each vertex's later
    neighbors minus the earliest one are adjacent to that earliest one.
    """
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in g.adj[v] if pos[w] > pos[v]]
        if not later:
            continue
        parent = min(later, key=pos.__getitem__)
        for w in later:
            if w != parent and not g.has_edge(parent, w):
                return False
    return True


def is_chordal(g: Graph) -> bool:
    # reverse MCS order is a PEO iff the graph is chordal
    return is_perfect_elimination_ordering(g, mcs_order(g)[::-1])


def split_partition(g: Graph) -> tuple[list[int], list[int]] | None:
    """Return ``(clique, independent)`` if ``g`` is a split graph, else ``None``.

    Hammer-Simeone: sort by degree descending, take ``m`` maximal with
    ``deg_m >= m - 1``; the top ``m`` vertices form the clique candidate.
    """
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    degs = [g.degree(v) for v in order]
    m = 0
    for i, dv in enumerate(degs, start=1):
        if dv >= i - 1:
            m = i
    if sum(degs[:m]) != m * (m - 1) + sum(degs[m:]):
        return None
    clique, indep = sorted(order[:m]), sorted(order[m:])
    # witness double-check; cheap and catches tie-order surprises
    for i, u in enumerate(clique):
        for v in clique[i + 1:]:
            if not g.has_edge(u, v):
                return None
    indep_set = set(indep)
    for u in indep:
        if any(w in indep_set for w in g.adj[u]):
            return None
    return clique, indep


def is_split(g: Graph) -> bool:
    return split_partition(g) is not None


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.edge_count == g.n - 1 and len(components(g)) == 1
