"""Rigid tokens on trees under token sliding.

A token is rigid when no TS-sequence ever slides it off its vertex.  The
recursive test works on rooted subtrees ``T^p_w``: the side of edge ``p-w``
containing ``w`` (the whole tree when ``p`` is ``None``).  The token on ``w``
is rigid in ``T^p_w`` iff the subtree is a single vertex, or every child ``c``
of ``w`` is blocked by some token at distance exactly ``d - 1`` from ``c`` (on
the far side of ``c``) that is itself rigid in its own subtree.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .engine import TREE_NECESSARY, Verdict
from .graph import Graph, is_tree
from .instance import DdisInstance, ReconfSequence, Rule, TokenSet, is_ddis, token_set


class RigidityError(ValueError):
    pass


def tree_id(t: Graph) -> str:
    canon = ";".join(f"{u}-{v}" for u, v in t.edges())
    return hashlib.sha1(f"{t.n}|{canon}".encode()).hexdigest()[:16]


@dataclass(frozen=True)
class RigiditySet:
    tree_id: str
    tokens: TokenSet
    d: int
    rigid: frozenset[int]
    # vertex -> one-step TS-sequence, for movable tokens (only when requested)
    witnesses: dict = field(default_factory=dict, compare=False)


class _Context:
    """Memoised rigidity over anchor pairs ``(p, w)`` for one ``(T, I, d)``."""

    def __init__(self, t: Graph, tokens, d: int):
        self.t = t
        self.d = d
        self.tokens = frozenset(tokens)
        self.memo: dict[tuple[int | None, int], bool] = {}
        self.blocker_memo: dict[tuple[int, int], list[tuple[int, int]]] = {}

    def blockers(self, w: int, c: int) -> list[tuple[int, int]]:
        """Tokens at distance exactly ``d - 1`` from ``c`` inside ``T^w_c``.

        Returned as ``(parent_toward_c, vertex)`` anchors, sorted by vertex.
        Tokens on ``w``'s own side are never within ``d - 1`` of ``c`` (they
        would sit within ``d - 2`` of ``w``), so only the far side is searched.
        """
        key = (w, c)
        if key in self.blocker_memo:
            return self.blocker_memo[key]
        frontier = [(w, c)]
        for _ in range(self.d - 1):
            frontier = [(x, y) for par, x in frontier for y in self.t.adj[x] if y != par]
        found = sorted(((par, x) for par, x in frontier if x in self.tokens), key=lambda a: a[1])
        self.blocker_memo[key] = found
        return found

    def children(self, p: int | None, w: int) -> list[int]:
        return [c for c in self.t.adj[w] if c != p]

    def rigid(self, p: int | None, w: int) -> bool:
        key = (p, w)
        if key in self.memo:
            return self.memo[key]
        result = True
        for c in self.children(p, w):
            if not any(self.rigid(q, x) for q, x in self.blockers(w, c)):
                result = False
                break
        self.memo[key] = result
        return result

    def slide_out(self, p: int | None, w: int) -> list[tuple[int, int]]:
        """Moves inside ``T^p_w`` that slide the token on ``w`` one step away from ``p``."""
        for c in self.children(p, w):
            blockers = self.blockers(w, c)
            if any(self.rigid(q, x) for q, x in blockers):
                continue
            moves = []
            for q, x in blockers:
                moves.extend(self.slide_out(q, x))
            moves.append((w, c))
            return moves
        raise RigidityError(f"token on {w} is rigid")


def _check(t: Graph, tokens, d: int) -> None:
    if d < 2:
        raise RigidityError("d must be at least 2")
    if not is_tree(t):
        raise RigidityError("input graph is not a tree")
    if not is_ddis(t, d, tokens):
        raise RigidityError(f"{sorted(tokens)} is not a distance-{d} independent set")


def is_rigid(t: Graph, tokens, d: int, u: int) -> bool:
    _check(t, tokens, d)
    if u not in set(tokens):
        raise RigidityError(f"no token on {u}")
    return _Context(t, tokens, d).rigid(None, u)


def rigid_set(t: Graph, tokens, d: int, witnesses: bool = False) -> RigiditySet:
    """All token vertices whose tokens are rigid, sharing one memo (O(n^2) overall)."""
    _check(t, tokens, d)
    toks = token_set(tokens)
    ctx = _Context(t, toks, d)
    rigid = frozenset(u for u in toks if ctx.rigid(None, u))
    wit = {}
    if witnesses:
        for u in toks:
            if u not in rigid:
                wit[u] = ReconfSequence.of(Rule.TS, ctx.slide_out(None, u))
    return RigiditySet(tree_id(t), toks, d, rigid, wit)


def movable_sequence(t: Graph, tokens, d: int, u: int) -> ReconfSequence | None:
    """A TS-sequence whose last move slides the token on ``u`` to a neighbour, or ``None`` if rigid."""
    _check(t, tokens, d)
    if u not in set(tokens):
        raise RigidityError(f"no token on {u}")
    ctx = _Context(t, tokens, d)
    if ctx.rigid(None, u):
        return None
    return ReconfSequence.of(Rule.TS, ctx.slide_out(None, u))


def necessary_condition_ts(t: Graph, source, target, d: int) -> Verdict | None:
    """NO when the rigid sets of the two sides differ; ``None`` means no conclusion."""
    if len(source) != len(target):
        raise RigidityError("token sets differ in size")
    if rigid_set(t, source, d).rigid != rigid_set(t, target, d).rigid:
        return Verdict(False, None, TREE_NECESSARY)
    return None


def fig7_instance(d: int) -> DdisInstance:
    """Spider with four hairs of length ``d - 1``; tokens on hair ends.

    Vertex 0 is the centre; hair ``h`` occupies ``1 + h(d-1) .. (h+1)(d-1)``
    listed outward.  Source uses hairs 0 and 1, target hairs 2 and 3.  Both
    sides have empty rigid sets yet the instance is NO: a token reaching the
    centre would need the other token at distance ``d`` from it, farther than
    any hair reaches.
    """
    if d < 3:
        raise ValueError("the four-hair spider needs d >= 3 (every token is stuck at d = 2)")
    L = d - 1
    edges = []
    ends = []
    for h in range(4):
        prev = 0
        for i in range(L):
            v = 1 + h * L + i
            edges.append((prev, v))
            prev = v
        ends.append(prev)
    g = Graph.from_edges(4 * L + 1, edges)
    return DdisInstance(g, d, Rule.TS, (ends[0], ends[1]), (ends[2], ends[3]))
