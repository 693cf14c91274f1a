"""Exit criteria.  Each test logs one PASS/FAIL line (printed after the run) before asserting.

Run just this suite with ``pytest -m acceptance -s``.
"""

import random
import time
from collections import Counter

import pytest

from oracles import reference_layered, shortest_by_deepening, state_graph
from ddisr.engine import solve_exact
from ddisr.generators import all_trees, random_graph, random_split_graph
from ddisr.graph import Graph, graph_power, is_chordal
from ddisr.instance import DdisInstance, Rule, enumerate_ddis, replay, validate_sequence
from ddisr.reductions.chordal import reduce_isr_to_chordal_odd
from ddisr.reductions.general_tj import reduce_isr_to_general_tj
from ddisr.reductions.ncl import (
    expected_transitions,
    gadget_semantics,
    ncl_and_gadget,
    ncl_or_gadget,
)
from ddisr.reductions.power import build_ts_power_counterexample
from ddisr.reductions.spr import SprInstance, reduce_spr_to_perfect, shortest_paths
from ddisr.reductions.verify import (
    verify_3satr,
    verify_bounded_diameter,
    verify_chordal_odd,
    verify_general_tj,
    verify_ncl,
    verify_power_equivalence,
    verify_rigid,
    verify_spr,
    verify_split_ts_d3,
    verify_ts_power,
)
from ddisr.rigidity import fig7_instance, rigid_set

pytestmark = pytest.mark.acceptance

SEED = 1
EXAMPLE = Graph.from_edges(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 1)])

# YES verdicts checked per criterion, and any witness problems, for the integrity criterion
WITNESS_TALLY: Counter = Counter()
WITNESS_PROBLEMS: list[str] = []


def _log(log, label, ok, detail):
    log.append((label, bool(ok), detail))
    assert ok, f"{label}: {detail}"


def _absorb(label, *reports):
    for r in reports:
        WITNESS_TALLY[label] += r.witnesses_checked
        WITNESS_PROBLEMS.extend(f for f in r.failures if "witness" in f.split("\n", 1)[0])


def _witness(label, inst, v):
    if not v.reachable:
        return
    WITNESS_TALLY[label] += 1
    if v.witness is None:
        WITNESS_PROBLEMS.append(f"{label}: YES without witness")
    elif (bad := validate_sequence(inst, v.witness)) is not None:
        WITNESS_PROBLEMS.append(f"{label}: {bad}")


class Clock:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def test_c01_power_equivalence(acceptance_log):
    with Clock() as c:
        rep = verify_power_equivalence(200, 9, (2, 3, 4, 5), SEED)
    ok = rep.ok and c.elapsed < 30
    _log(acceptance_log, "1 power equivalence", ok,
         f"{rep.agree}/{rep.trials} subsets agree over 200 graphs, {c.elapsed:.1f}s (limit 30s)")


def test_c02_tj_equals_power_search(acceptance_log):
    rng = random.Random(SEED)
    agree = total = 0
    with Clock() as c:
        while total < 120:
            g = random_graph(rng.randint(2, 8), rng.choice((0.15, 0.3, 0.5)), rng)
            d = rng.choice((3, 4, 5))
            k = rng.randint(1, 3)
            sets = list(enumerate_ddis(g, d, k))
            if not sets:
                continue
            a, b = rng.choice(sets), rng.choice(sets)
            base = DdisInstance(g, d, Rule.TJ, a, b)
            power = DdisInstance(graph_power(g, d - 1), 2, Rule.TJ, a, b)
            vb, vp = solve_exact(base), solve_exact(power)
            _witness("2", base, vb)
            _witness("2", power, vp)
            total += 1
            agree += vb.reachable == vp.reachable
    ok = agree == total and c.elapsed < 120
    _log(acceptance_log, "2 TJ on G vs TJ on the power graph", ok,
         f"{agree}/{total} agree, {c.elapsed:.1f}s (limit 120s)")


def test_c03_ts_power_counterexample(acceptance_log):
    with Clock() as c:
        rep = verify_ts_power(seed=SEED)
    _absorb("3", rep)
    ok = rep.ok and rep.trials == 4 and c.elapsed < 60
    _log(acceptance_log, "3 TS power counterexample", ok,
         f"{rep.agree}/{rep.trials} (d,k) pairs NO on G, YES in k moves on the power, sizes match, {c.elapsed:.1f}s")


def test_c04_chordal_odd(acceptance_log):
    with Clock() as c:
        rep = verify_chordal_odd(100, 6, (3, 5), SEED)
        fig = reduce_isr_to_chordal_odd(EXAMPLE, [0, 2], [3, 4], 5)
    _absorb("4", rep)
    n = fig.instance.graph.n
    ok = rep.ok and n == 15 and is_chordal(fig.instance.graph) and c.elapsed < 180
    _log(acceptance_log, "4 chordal odd-d reduction", ok,
         f"{rep.agree}/{rep.trials} agree (structure checked), example graph -> {n} vertices, {c.elapsed:.1f}s")


def test_c05_split_ts_d3(acceptance_log):
    with Clock() as c:
        rep = verify_split_ts_d3(500, 9, SEED)
    _absorb("5", rep)
    ok = rep.ok and c.elapsed < 180
    _log(acceptance_log, "5 split TS d=3 decider", ok,
         f"{rep.agree}/{rep.trials} DdIS pairs over 500 split graphs, {c.elapsed:.1f}s (limit 180s)")


def test_c06_bounded_diameter(acceptance_log):
    with Clock() as c:
        rep = verify_bounded_diameter(300, 8, SEED)
    _absorb("6", rep)
    ok = rep.ok and rep.trials >= 300 and c.elapsed < 60
    _log(acceptance_log, "6 bounded-diameter decider", ok,
         f"{rep.agree}/{rep.trials} agree, {c.elapsed:.1f}s (limit 60s)")


def test_c07_general_tj(acceptance_log):
    with Clock() as c:
        rep = verify_general_tj(100, 6, (3, 4), SEED)
        n3 = reduce_isr_to_general_tj(EXAMPLE, [0, 2], [3, 4], 3).instance.graph.n
        n4 = reduce_isr_to_general_tj(EXAMPLE, [0, 2], [3, 4], 4).instance.graph.n
    _absorb("7", rep)
    ok = rep.ok and (n3, n4) == (10, 16) and c.elapsed < 180
    _log(acceptance_log, "7 general TJ reduction", ok,
         f"{rep.agree}/{rep.trials} agree (distances checked), example graph -> {n3} / {n4} vertices, {c.elapsed:.1f}s")


def test_c08_3satr(acceptance_log):
    with Clock() as c:
        rep = verify_3satr((3, 4), SEED, 3, 3)
    _absorb("8", rep)
    ok = rep.ok and c.elapsed < 300
    _log(acceptance_log, "8 3SAT reconfiguration reduction", ok,
         f"{rep.agree}/{rep.trials} (formula, pair, d) cases agree under TS and TJ, {c.elapsed:.1f}s")


def test_c09_spr(acceptance_log):
    rng = random.Random(SEED)
    mismatches = checked = 0
    with Clock() as c:
        while checked < 100:
            g = random_graph(rng.randint(2, 8), rng.choice((0.3, 0.5)), rng)
            u, v = rng.sample(range(g.n), 2)
            paths = shortest_paths(g, u, v)
            if not paths:
                continue
            inst = SprInstance(g, u, v, rng.choice(paths), rng.choice(paths))
            out = reduce_spr_to_perfect(inst, 2)
            keep, ref = reference_layered(inst)
            vm = {x: out.vertex_map[("v", x)] for x in keep}
            got = {frozenset(e) for e in out.instance.graph.edges()}
            want = {frozenset(vm[x] for x in e) for e in ref}
            mismatches += got != want or out.instance.graph.n != len(keep)
            checked += 1
        rep = verify_spr(100, 8, (2, 3), SEED)
    _absorb("9", rep)
    ok = rep.ok and mismatches == 0 and c.elapsed < 300
    _log(acceptance_log, "9 SPR reduction", ok,
         f"d=2 equals direct construction on {checked - mismatches}/{checked}; "
         f"{rep.agree}/{rep.trials} verdicts agree (cliques checked), {c.elapsed:.1f}s")


def test_c10_ncl(acceptance_log):
    bad = []
    with Clock() as c:
        for d in (2, 3, 4):
            for build in (ncl_and_gadget, ncl_or_gadget):
                gad = build(d)
                for rule in Rule:
                    sem = gadget_semantics(gad, rule)
                    want = sem.expected_patterns(gad.weights)
                    if not (sem.confined and sem.pinned_connected and sem.patterns == want
                            and sem.transitions == expected_transitions(want)):
                        bad.append(f"{gad.kind} d={d} {rule}")
        rep = verify_ncl((3,), SEED)
    _absorb("10", rep)
    ok = not bad and rep.ok and c.elapsed < 300
    _log(acceptance_log, "10 NCL gadgets and compiled machines", ok,
         f"gadget semantics bad: {bad or 'none'}; {rep.agree}/{rep.trials} machine cases agree, {c.elapsed:.1f}s")


def test_c11_tree_rigidity(acceptance_log):
    with Clock() as c:
        rep = verify_rigid(12, (3, 4), SEED)
        fig = []
        for d in (3, 4, 5):
            inst = fig7_instance(d)
            rs = rigid_set(inst.graph, inst.source, d).rigid
            rt = rigid_set(inst.graph, inst.target, d).rigid
            fig.append(not rs and not rt and not solve_exact(inst).reachable)
    # freeing sequences are witnesses too
    for n in range(2, 9):
        for t in all_trees(n):
            for d in (3, 4):
                for s in enumerate_ddis(t, d, 2):
                    for u, seq in rigid_set(t, s, d, witnesses=True).witnesses.items():
                        WITNESS_TALLY["11"] += 1
                        _, violation = replay(t, d, Rule.TS, s, seq.pairs())
                        if violation is not None or seq.pairs()[-1][0] != u:
                            WITNESS_PROBLEMS.append(f"11: freeing sequence for {u} in {s}")
    ok = rep.ok and all(fig) and c.elapsed < 300
    _log(acceptance_log, "11 tree rigidity", ok,
         f"{rep.agree}/{rep.trials} token sets match the oracle on all trees n<=12; "
         f"regression example d=3,4,5 {fig}, {c.elapsed:.1f}s")


def _small_instances(rng):
    """Random instances with at most 200 states, from plain, split and reduced graphs."""
    while True:
        kind = rng.randrange(4)
        if kind == 0:
            g, d = random_graph(rng.randint(2, 7), rng.choice((0.2, 0.35, 0.5)), rng), rng.choice((2, 3, 4))
        elif kind == 1:
            g, d = random_split_graph(rng.randint(2, 7), rng), rng.choice((2, 3))
        elif kind == 2:
            g, d = build_ts_power_counterexample(3, 2)[0], 3
        else:
            h = random_graph(rng.randint(2, 4), 0.4, rng)
            sets = list(enumerate_ddis(h, 2, 2)) or list(enumerate_ddis(h, 2, 1))
            a, b = rng.choice(sets), rng.choice(sets)
            g, d = reduce_isr_to_chordal_odd(h, a, b, 3).instance.graph, 3
        yield g, d


def test_c12_witness_integrity(acceptance_log):
    rng = random.Random(SEED)
    gen = _small_instances(rng)
    checked = not_shortest = 0
    with Clock() as c:
        while checked < 300:
            g, d = next(gen)
            k = rng.randint(1, 3)
            rule = rng.choice(("TS", "TJ"))
            sg = state_graph(g.n, g.edges(), d, k, rule)
            if not sg or len(sg) > 200:
                continue
            a, b = rng.choice(list(sg)), rng.choice(list(sg))
            inst = DdisInstance(g, d, Rule(rule), a, b)
            v = solve_exact(inst)
            _witness("12", inst, v)
            if not v.reachable:
                continue
            checked += 1
            if len(v.witness.moves) != shortest_by_deepening(sg, tuple(a), tuple(b)):
                not_shortest += 1
    total = sum(WITNESS_TALLY.values())
    per = " ".join(f"c{k}={n}" for k, n in sorted(WITNESS_TALLY.items(), key=lambda kv: int(kv[0])))
    ok = not WITNESS_PROBLEMS and not_shortest == 0 and checked >= 300
    _log(acceptance_log, "12 witness integrity", ok,
         f"{total} witnesses replayed ({per}), {len(WITNESS_PROBLEMS)} rejected; "
         f"{checked - not_shortest}/{checked} BFS witnesses shortest, {c.elapsed:.1f}s")
