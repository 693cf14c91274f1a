"""Seeded graph families used by the verification sweeps."""

from __future__ import annotations

import random
from itertools import combinations

from .graph import Graph


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    """Random spanning tree plus G(n, p) edges."""
    tree = random_tree(n, rng)
    extra = {(u, v) for u, v in combinations(range(n), 2) if rng.random() < p}
    return Graph.from_edges(n, sorted(set(tree.edges()) | extra))


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform labelled tree via a random Pruefer sequence."""
    if n <= 1:
        return Graph.from_edges(max(n, 0), [])
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [w for w in range(n) if degree[w] == 1]
    edges.append((u, v))
    return Graph.from_edges(n, edges)


def random_split_graph(n: int, rng: random.Random, p: float = 0.5) -> Graph:
    """Clique on a random prefix, independent rest, random clique-to-rest edges."""
    kn = rng.randint(0, n)
    verts = list(range(n))
    rng.shuffle(verts)
    clique, indep = verts[:kn], verts[kn:]
    edges = list(combinations(clique, 2))
    edges += [(s, c) for s in indep for c in clique if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_diameter2_graph(n: int, rng: random.Random, p: float = 0.3) -> Graph:
    """Join of two random graphs (diameter at most 2, the connected-cograph bound)."""
    if n < 2:
        return Graph.from_edges(n, [])
    a = rng.randint(1, n - 1)
    edges = {(u, v) for u, v in combinations(range(n), 2) if rng.random() < p}
    edges |= {(u, v) for u in range(a) for v in range(a, n)}
    return Graph.from_edges(n, sorted(edges))


def _canon_rooted(adj: list[list[int]], v: int, parent: int) -> str:
    return "(" + "".join(sorted(_canon_rooted(adj, w, v) for w in adj[v] if w != parent)) + ")"


def _centers(adj: list[list[int]]) -> list[int]:
    n = len(adj)
    deg = [len(a) for a in adj]
    leaves = [v for v in range(n) if deg[v] <= 1]
    remaining = n
    removed = [False] * n
    while remaining > 2:
        remaining -= len(leaves)
        nxt = []
        for v in leaves:
            removed[v] = True
            for w in adj[v]:
                if not removed[w]:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        leaves = nxt
    return [v for v in range(n) if not removed[v]]


def tree_canonical_form(t: Graph) -> str:
    """AHU encoding rooted at the centre(s); equal iff the trees are isomorphic."""
    adj = [list(a) for a in t.adj]
    return min(_canon_rooted(adj, c, -1) for c in _centers(adj))


def all_trees(n: int) -> list[Graph]:
    """One representative of every unlabelled tree on ``n`` vertices.

    Grown leaf by leaf from the trees on ``n - 1`` vertices and deduplicated by
    canonical form; fine for ``n`` up to the low teens.
    """
    if n <= 0:
        return []
    level = {tree_canonical_form(Graph.from_edges(1, [])): Graph.from_edges(1, [])}
    for size in range(2, n + 1):
        nxt: dict[str, Graph] = {}
        for t in level.values():
            for v in range(t.n):
                g = Graph.from_edges(size, t.edges() + [(v, size - 1)])
                nxt.setdefault(tree_canonical_form(g), g)
        level = nxt
    return [level[k] for k in sorted(level)]
