"""Breadth-first search over the reconfiguration graph.

Token sets are kept as vertex bitmasks internally: an int is a canonical,
hashable encoding of a sorted vertex list, and the distance test for a move
reduces to one AND against a precomputed ball mask.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .graph import Graph, ball
from .instance import DdisInstance, ReconfSequence, Rule, TokenSet, enumerate_ddis

DEFAULT_STATE_BUDGET = 5_000_000
BUDGET_ENV = "DDISR_STATE_BUDGET"

# provenance tags
EXACT = "exact"
BOUNDED_DIAMETER = "bounded-diameter"
SPLIT_TS_D3 = "split-ts-d3"
TJ_POWER = "tj-power"
TREE_NECESSARY = "tree-necessary"
SIZE_MISMATCH = "size-mismatch"


class BudgetExceeded(RuntimeError):
    def __init__(self, states_explored: int, budget: int):
        self.states_explored = states_explored
        self.budget = budget
        super().__init__(
            f"state budget {budget} exceeded after {states_explored} states; shrink the instance"
        )


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_STATE_BUDGET


@dataclass(frozen=True)
class Verdict:
    reachable: bool
    witness: ReconfSequence | None = None
    decider: str = EXACT
    states_explored: int = 0


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(m: int) -> Iterator[int]:
    """Set bit positions in ascending order."""
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def tokens_of(m: int) -> TokenSet:
    return tuple(bits(m))


class Kernel:
    """Per-(graph, d) move generator."""

    def __init__(self, g: Graph, d: int):
        self.g = g
        self.d = d
        self.full = (1 << g.n) - 1
        self.nbr = [mask_of(g.adj[v]) for v in range(g.n)]
        # vertices within distance d-1 (including v itself)
        self.ball = [mask_of(ball(g, v, d - 1)) for v in range(g.n)]

    def moves(self, state: int, rule: Rule) -> Iterator[tuple[int, int, int]]:
        """Legal ``(from, to, next_state)`` triples, tokens then destinations ascending."""
        toks = list(bits(state))
        for i, x in enumerate(toks):
            forbidden = 0
            for j, o in enumerate(toks):
                if j != i:
                    forbidden |= self.ball[o]
            if rule is Rule.TS:
                cand = self.nbr[x] & ~forbidden
            else:
                cand = self.full & ~forbidden & ~(1 << x)
            base = state ^ (1 << x)
            for y in bits(cand):
                yield x, y, base | (1 << y)

    def neighbors(self, state: int, rule: Rule) -> list[int]:
        return [t for _, _, t in self.moves(state, rule)]


@lru_cache(maxsize=64)
def kernel(g: Graph, d: int) -> Kernel:
    return Kernel(g, d)


def _bfs(k: Kernel, rule: Rule, src: int, tgt: int | None, want_parents: bool, budget: int):
    """BFS from ``src``; returns (parents-or-seen, found)."""
    if want_parents:
        seen: dict | set = {src: None}
    else:
        seen = {src}
    if src == tgt:
        return seen, True
    queue = deque([src])
    while queue:
        s = queue.popleft()
        for x, y, t in k.moves(s, rule):
            if t in seen:
                continue
            if want_parents:
                seen[t] = (s, x, y)
            else:
                seen.add(t)
            if t == tgt:
                return seen, True
            if len(seen) > budget:
                raise BudgetExceeded(len(seen), budget)
            queue.append(t)
    return seen, False


def _path(parents: dict, tgt: int) -> list[tuple[int, int]]:
    out = []
    cur = tgt
    while parents[cur] is not None:
        prev, x, y = parents[cur]
        out.append((x, y))
        cur = prev
    out.reverse()
    return out


def solve_exact(
    inst: DdisInstance, want_witness: bool = True, state_budget: int | None = None
) -> Verdict:
    """Decide ``inst`` by BFS over canonical token sets.

    The witness, when requested, is a shortest move sequence.  Raises
    :class:`BudgetExceeded` rather than answering NO when the search outgrows
    ``state_budget``.
    """
    if inst.size_mismatch:
        return Verdict(False, None, EXACT, 0)
    budget = default_budget() if state_budget is None else state_budget
    k = kernel(inst.graph, inst.d)
    src, tgt = mask_of(inst.source), mask_of(inst.target)
    seen, found = _bfs(k, inst.rule, src, tgt, want_witness, budget)
    witness = None
    if found and want_witness:
        witness = ReconfSequence.of(inst.rule, _path(seen, tgt))
    return Verdict(found, witness, EXACT, len(seen))


def reachable_sets(
    g: Graph, d: int, rule: Rule | str, source, state_budget: int | None = None
) -> set[TokenSet]:
    """Every token set reachable from ``source``."""
    budget = default_budget() if state_budget is None else state_budget
    seen, _ = _bfs(kernel(g, d), Rule(rule), mask_of(source), None, False, budget)
    return {tokens_of(m) for m in seen}


@dataclass(frozen=True)
class ReconfStats:
    state_count: int
    edge_count: int
    component_count: int
    largest_component: int
    component_of: dict  # TokenSet -> component id

    def same_component(self, a, b) -> bool:
        return self.component_of[tuple(sorted(a))] == self.component_of[tuple(sorted(b))]


def reconf_graph_stats(
    g: Graph, d: int, k: int, rule: Rule | str, state_budget: int | None = None
) -> ReconfStats:
    """Statistics of the full reconfiguration graph over all size-``k`` DdIS."""
    rule = Rule(rule)
    budget = default_budget() if state_budget is None else state_budget
    states = []
    for s in enumerate_ddis(g, d, k):
        states.append(mask_of(s))
        if len(states) > budget:
            raise BudgetExceeded(len(states), budget)
    kern = kernel(g, d)
    comp: dict[int, int] = {}
    sizes = []
    arcs = 0
    for s in states:
        if s in comp:
            continue
        cid = len(sizes)
        comp[s] = cid
        size = 0
        queue = deque([s])
        while queue:
            cur = queue.popleft()
            size += 1
            for t in kern.neighbors(cur, rule):
                arcs += 1
                if t not in comp:
                    comp[t] = cid
                    queue.append(t)
        sizes.append(size)
    return ReconfStats(
        state_count=len(states),
        edge_count=arcs // 2,
        component_count=len(sizes),
        largest_component=max(sizes, default=0),
        component_of={tokens_of(m): c for m, c in comp.items()},
    )


def rigid_oracle(g: Graph, tokens, d: int, state_budget: int | None = None) -> set[int]:
    """Vertices of ``tokens`` whose token can never slide, by labelled-token BFS.

    Works on any graph.  Labels are token indices; a label is rigid iff no
    TS transition in the reachable labelled component ever moves it.
    """
    budget = default_budget() if state_budget is None else state_budget
    start = tuple(sorted(tokens))
    kern = kernel(g, d)
    n_tok = len(start)
    moved = [False] * n_tok
    remaining = n_tok
    seen = {start}
    queue = deque([start])
    while queue and remaining:
        pos = queue.popleft()
        for i, x in enumerate(pos):
            forbidden = 0
            for j, o in enumerate(pos):
                if j != i:
                    forbidden |= kern.ball[o]
            cand = kern.nbr[x] & ~forbidden
            if cand and not moved[i]:
                moved[i] = True
                remaining -= 1
            for y in bits(cand):
                nxt = pos[:i] + (y,) + pos[i + 1:]
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > budget:
                        raise BudgetExceeded(len(seen), budget)
                    queue.append(nxt)
    return {start[i] for i in range(n_tok) if not moved[i]}
