"""Slow, obviously-correct reference implementations used only by the tests.

Nothing here imports the search engine: graphs are plain edge sets and
distances come from Floyd-Warshall.
"""

from __future__ import annotations

from itertools import combinations, permutations

INF = float("inf")


def floyd(n: int, edges) -> list[list[float]]:
    dist = [[0 if i == j else INF for j in range(n)] for i in range(n)]
    for u, v in edges:
        dist[u][v] = dist[v][u] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if dist[i][k] + dist[k][j] < dist[i][j]:
                    dist[i][j] = dist[i][k] + dist[k][j]
    return dist


def ddis_brute(dist, d: int, s) -> bool:
    return all(dist[a][b] >= d for a, b in combinations(s, 2))


def all_ddis(n: int, dist, d: int, k: int) -> list[tuple[int, ...]]:
    return [s for s in combinations(range(n), k) if ddis_brute(dist, d, s)]


def state_graph(n: int, edges, d: int, k: int, rule: str) -> dict:
    """Reconfiguration graph built pairwise from the definitions."""
    dist = floyd(n, edges)
    adj = {frozenset(e) for e in edges}
    states = all_ddis(n, dist, d, k)
    out = {s: [] for s in states}
    for a, b in combinations(states, 2):
        gone, came = set(a) - set(b), set(b) - set(a)
        if len(gone) != 1:
            continue
        (x,), (y,) = gone, came
        if rule == "TJ" or frozenset((x, y)) in adj:
            out[a].append(b)
            out[b].append(a)
    return out


def shortest_by_deepening(graph: dict, src, tgt, limit: int = 64):
    """Length of a shortest src-tgt walk by iterative deepening DFS, or None."""
    def dfs(cur, depth, on_path):
        if cur == tgt:
            return True
        if depth == 0:
            return False
        for nxt in graph[cur]:
            if nxt not in on_path:
                on_path.add(nxt)
                if dfs(nxt, depth - 1, on_path):
                    return True
                on_path.discard(nxt)
        return False

    for depth in range(limit + 1):
        if dfs(src, depth, {src}):
            return depth
    return None


def has_long_chordless_cycle(n: int, edges) -> bool:
    """Search every vertex sequence for an induced cycle of length >= 4."""
    adj = {frozenset(e) for e in edges}
    for size in range(4, n + 1):
        for vs in combinations(range(n), size):
            first = vs[0]
            for rest in permutations(vs[1:]):
                if rest[0] > rest[-1]:
                    continue
                cyc = (first, *rest)
                ok = True
                for i in range(size):
                    for j in range(i + 1, size):
                        adjacent = frozenset((cyc[i], cyc[j])) in adj
                        consecutive = j == i + 1 or (i == 0 and j == size - 1)
                        if adjacent != consecutive:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    return True
    return False


def split_brute(n: int, edges) -> bool:
    adj = {frozenset(e) for e in edges}
    for mask in range(1 << n):
        clique = [v for v in range(n) if mask >> v & 1]
        indep = [v for v in range(n) if not mask >> v & 1]
        if all(frozenset(p) in adj for p in combinations(clique, 2)) and not any(
            frozenset(p) in adj for p in combinations(indep, 2)
        ):
            return True
    return False


def reference_layered(inst):
    """The d=2 construction written out directly from its definition."""
    g = inst.graph
    dist = floyd(g.n, g.edges())
    k = dist[inst.u][inst.v]
    keep = [x for x in range(g.n) if dist[inst.u][x] + dist[x][inst.v] == k]
    layer = {x: dist[inst.u][x] for x in keep}
    on_path = {(x, y) for x in keep for y in keep
               if g.has_edge(x, y) and dist[inst.u][x] + 1 + dist[y][inst.v] == k}
    edges = set()
    for x, y in combinations(keep, 2):
        if layer[x] == layer[y]:
            edges.add(frozenset((x, y)))
        elif abs(layer[x] - layer[y]) == 1:
            lo, hi = (x, y) if layer[x] < layer[y] else (y, x)
            if (lo, hi) not in on_path:
                edges.add(frozenset((x, y)))
    return keep, edges
