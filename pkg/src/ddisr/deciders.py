"""Polynomial special-case deciders and the dispatcher that routes instances to them."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Callable

from .engine import (
    BOUNDED_DIAMETER,
    EXACT,
    SIZE_MISMATCH,
    SPLIT_TS_D3,
    TJ_POWER,
    TREE_NECESSARY,
    BudgetExceeded,
    Verdict,
    solve_exact,
)
from .graph import Graph, component_index, graph_power, is_split, is_tree, max_component_diameter
from .instance import DdisInstance, ReconfSequence, Rule

Backend = Callable[..., Verdict]


@dataclass(frozen=True)
class DeciderReport:
    verdict: Verdict
    applicable_rules_tried: list[str] = field(default_factory=list)


def _bfs_path(g: Graph, s: int, t: int) -> list[int]:
    """Shortest s-t path; among shortest paths the one found scanning neighbors by id."""
    parent = {s: None}
    queue = deque([s])
    while queue and t not in parent:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in parent:
                parent[w] = u
                queue.append(w)
    path = [t]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def _single_token_moves(inst: DdisInstance, comps: list[int]) -> list[tuple[int, int]]:
    """Moves for instances where every component holds at most one token.

    Tokens already in a target component move inside it (sliding along a BFS
    path, or one jump); under TJ the leftovers jump pairwise, sorted, into the
    empty target components.
    """
    src_by = {comps[v]: v for v in inst.source}
    tgt_by = {comps[v]: v for v in inst.target}
    moves = []
    for c in sorted(src_by):
        a = src_by[c]
        b = tgt_by.get(c)
        if b is None or a == b:
            continue
        if inst.rule is Rule.TS:
            path = _bfs_path(inst.graph, a, b)
            moves.extend(zip(path, path[1:]))
        else:
            moves.append((a, b))
    if inst.rule is Rule.TJ:
        leaving = sorted(src_by[c] for c in src_by if c not in tgt_by)
        arriving = sorted(tgt_by[c] for c in tgt_by if c not in src_by)
        moves.extend(zip(leaving, arriving))
    return moves


def decide_bounded_diameter(inst: DdisInstance) -> Verdict | None:
    """Applicable when ``d`` exceeds every component's diameter.

    Then each component hosts at most one token: TJ is always YES and TS
    reduces to comparing per-component token counts.
    """
    if inst.d < max_component_diameter(inst.graph) + 1:
        return None
    if inst.size_mismatch:
        return Verdict(False, None, BOUNDED_DIAMETER)
    comps = component_index(inst.graph)
    if inst.rule is Rule.TS:
        if Counter(comps[v] for v in inst.source) != Counter(comps[v] for v in inst.target):
            return Verdict(False, None, BOUNDED_DIAMETER)
    moves = _single_token_moves(inst, comps)
    return Verdict(True, ReconfSequence.of(inst.rule, moves), BOUNDED_DIAMETER)


def decide_split_ts_d3(inst: DdisInstance) -> Verdict | None:
    if inst.rule is not Rule.TS or inst.d != 3 or not is_split(inst.graph):
        return None
    if inst.size_mismatch:
        return Verdict(False, None, SPLIT_TS_D3)
    comps = component_index(inst.graph)
    src = Counter(comps[v] for v in inst.source)
    tgt = Counter(comps[v] for v in inst.target)
    if src != tgt:
        return Verdict(False, None, SPLIT_TS_D3)
    for c, count in src.items():
        if count >= 2:
            # every slide from the independent side lands in the clique, within 2 of the rest
            here_s = {v for v in inst.source if comps[v] == c}
            here_t = {v for v in inst.target if comps[v] == c}
            if here_s != here_t:
                return Verdict(False, None, SPLIT_TS_D3)
    moves = []
    for c in sorted(c for c, count in src.items() if count == 1):
        (a,) = [v for v in inst.source if comps[v] == c]
        (b,) = [v for v in inst.target if comps[v] == c]
        if a != b:
            path = _bfs_path(inst.graph, a, b)
            moves.extend(zip(path, path[1:]))
    return Verdict(True, ReconfSequence.of(Rule.TS, moves), SPLIT_TS_D3)


def decide_tj_via_power(
    inst: DdisInstance,
    backend: Backend = solve_exact,
    want_witness: bool = True,
    state_budget: int | None = None,
) -> Verdict | None:
    """Solve a TJ instance as plain ISR on the ``(d-1)``-th power via ``backend``.

    Jumps ignore edges, so witness moves carry over unchanged.
    """
    if inst.rule is not Rule.TJ:
        return None
    power = DdisInstance(graph_power(inst.graph, inst.d - 1), 2, Rule.TJ, inst.source, inst.target)
    v = backend(power, want_witness=want_witness, state_budget=state_budget)
    witness = None
    if v.witness is not None:
        witness = ReconfSequence(Rule.TJ, v.witness.moves)
    return Verdict(v.reachable, witness, TJ_POWER, v.states_explored)


def dispatch(
    inst: DdisInstance, want_witness: bool = True, state_budget: int | None = None
) -> DeciderReport:
    """Route ``inst`` to the cheapest applicable decider, falling back to search.

    Order: size mismatch, bounded diameter, split/TS/d=3, the tree rigidity
    necessary condition (TS on trees, NO answers only), TJ via the graph
    power, exact search.
    """
    from .rigidity import necessary_condition_ts

    tried: list[str] = []

    tried.append(SIZE_MISMATCH)
    if inst.size_mismatch:
        return DeciderReport(Verdict(False, None, SIZE_MISMATCH), tried)

    tried.append(BOUNDED_DIAMETER)
    v = decide_bounded_diameter(inst)
    if v is not None:
        return DeciderReport(v, tried)

    if inst.rule is Rule.TS and inst.d == 3:
        tried.append(SPLIT_TS_D3)
        v = decide_split_ts_d3(inst)
        if v is not None:
            return DeciderReport(v, tried)

    if inst.rule is Rule.TS and is_tree(inst.graph):
        tried.append(TREE_NECESSARY)
        v = necessary_condition_ts(inst.graph, inst.source, inst.target, inst.d)
        if v is not None:
            return DeciderReport(v, tried)

    budget_error = None
    if inst.rule is Rule.TJ:
        tried.append(TJ_POWER)
        try:
            return DeciderReport(
                decide_tj_via_power(inst, want_witness=want_witness, state_budget=state_budget),
                tried,
            )
        except BudgetExceeded as exc:
            budget_error = exc

    tried.append(EXACT)
    try:
        return DeciderReport(solve_exact(inst, want_witness, state_budget), tried)
    except BudgetExceeded:
        if budget_error is not None:
            raise budget_error from None
        raise
