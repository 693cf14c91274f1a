"""Oracle sweeps: each reduction against its source-problem brute force, each decider against search.

A sweep returns a :class:`VerifyReport`.  Any disagreement or failed
structural check is recorded with a serialized counterexample; the caller
decides whether that is fatal (the CLI exits nonzero).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from types import SimpleNamespace

from ..deciders import decide_bounded_diameter, decide_split_ts_d3, decide_tj_via_power
from ..engine import rigid_oracle, solve_exact
from ..generators import all_trees, random_diameter2_graph, random_graph, random_split_graph
from ..graph import (
    Graph,
    distance_matrix,
    graph_power,
    is_chordal,
    is_split,
    max_component_diameter,
)
from ..instance import (
    DdisInstance,
    Rule,
    enumerate_ddis,
    is_ddis,
    is_independent,
    serialize_instance,
    validate_sequence,
)
from .chordal import lift_isr_witness, pull_back_witness, reduce_isr_to_chordal_odd
from .general_tj import reduce_isr_to_general_tj
from .ncl import all_configs, compile_ncl, jumps_are_slides, ncl_reachable, port_confined, small_machines
from .power import build_ts_power_counterexample, ts_power_vertex_count
from .sat import Cnf3, format_cnf3, reduce_3satr, sat3_reconfig_bruteforce
from .spr import SprInstance, format_spr, reduce_spr_to_perfect, shortest_paths, spr_bruteforce


@dataclass
class VerifyReport:
    kind: str
    seed: int
    params: dict = field(default_factory=dict)
    trials: int = 0
    agree: int = 0
    witnesses_checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.trials > 0

    def record(self, agree: bool, what: str = "", counterexample: str = "") -> None:
        self.trials += 1
        if agree:
            self.agree += 1
        else:
            self.fail(what, counterexample)

    def fail(self, what: str, counterexample: str = "") -> None:
        self.failures.append(f"{what}\n{counterexample}".rstrip())

    def check_witness(self, inst: DdisInstance, verdict) -> None:
        """YES verdicts must carry a replayable witness."""
        if not verdict.reachable:
            return
        self.witnesses_checked += 1
        if verdict.witness is None:
            self.fail(f"YES without witness from {verdict.decider}", serialize_instance(inst))
            return
        bad = validate_sequence(inst, verdict.witness)
        if bad is not None:
            self.fail(f"witness rejected: {bad}", serialize_instance(inst))

    def format(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        lines = [
            f"verify {self.kind} seed={self.seed} {params}".rstrip(),
            f"trials: {self.trials}",
            f"agree: {self.agree}",
            f"witnesses: {self.witnesses_checked}",
            f"failures: {len(self.failures)}",
        ]
        for i, f in enumerate(self.failures[:10]):
            lines.append(f"--- failure {i}")
            lines.append(f)
        lines.append(f"result: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _random_isr(rng: random.Random, n_max: int, k_min: int = 1, k_max: int = 3):
    """Random graph with two independent sets of equal size, or None if none exist."""
    n = rng.randint(max(2, k_min), n_max)
    g = random_graph(n, rng.choice((0.2, 0.35, 0.5)), rng)
    k = rng.randint(k_min, k_max)
    sets = list(enumerate_ddis(g, 2, k))
    if not sets:
        return None
    return g, rng.choice(sets), rng.choice(sets)


def _isr_tj(g: Graph, a, b, budget):
    inst = DdisInstance(g, 2, Rule.TJ, a, b)
    return inst, solve_exact(inst, state_budget=budget)


def verify_chordal_odd(trials: int, n_max: int, ds, seed: int, budget=None) -> VerifyReport:
    rep = VerifyReport("chordal-odd", seed, {"trials": trials, "n": n_max, "d": ",".join(map(str, ds))})
    rng = random.Random(seed)
    done = 0
    while done < trials:
        case = _random_isr(rng, n_max)
        if case is None:
            continue
        done += 1
        g, a, b = case
        src_inst, src = _isr_tj(g, a, b, budget)
        rep.check_witness(src_inst, src)
        for d in ds:
            out = reduce_isr_to_chordal_odd(g, a, b, d)
            inst = out.instance
            text = serialize_instance(inst)
            if not is_chordal(inst.graph):
                rep.fail(f"output not chordal (d={d})", text)
            if d == 3 and not is_split(inst.graph):
                rep.fail("d=3 output not split", text)
            f = out.notes["f"]
            dg, dp = distance_matrix(g), distance_matrix(inst.graph)
            for u, v in combinations(range(g.n), 2):
                if dg[u][v] == 2 and dp[f[u]][f[v]] != d:
                    rep.fail(f"dist(f({u}), f({v})) = {dp[f[u]][f[v]]}, expected {d}", text)
            tgt = solve_exact(inst, state_budget=budget)
            rep.check_witness(inst, tgt)
            rep.record(src.reachable == tgt.reachable, f"verdict mismatch d={d}: ISR {src.reachable}", serialize_instance(src_inst) + text)
            if src.reachable and tgt.reachable:
                lifted = lift_isr_witness(out, src.witness)
                bad = validate_sequence(inst, lifted)
                if bad is not None:
                    rep.fail(f"lifted witness rejected: {bad}", text)
                try:
                    back = pull_back_witness(out, tgt.witness)
                    bad = validate_sequence(src_inst, back)
                except ValueError as exc:
                    bad = str(exc)
                if bad is not None:
                    rep.fail(f"pulled-back witness rejected: {bad}", text)
    return rep


def verify_general_tj(trials: int, n_max: int, ds, seed: int, budget=None) -> VerifyReport:
    rep = VerifyReport("general-tj", seed, {"trials": trials, "n": n_max, "d": ",".join(map(str, ds))})
    rng = random.Random(seed)
    done = 0
    while done < trials:
        case = _random_isr(rng, n_max, k_min=2)
        if case is None:
            continue
        done += 1
        g, a, b = case
        src_inst, src = _isr_tj(g, a, b, budget)
        rep.check_witness(src_inst, src)
        for d in ds:
            out = reduce_isr_to_general_tj(g, a, b, d)
            inst = out.instance
            text = serialize_instance(inst)
            dp = distance_matrix(inst.graph)
            for u, v in combinations(range(g.n), 2):
                if g.has_edge(u, v) and dp[u][v] > d - 1:
                    rep.fail(f"edge {u}-{v} at distance {dp[u][v]}", text)
                if not g.has_edge(u, v) and dp[u][v] < d:
                    rep.fail(f"non-edge {u}-{v} at distance {dp[u][v]}", text)
            anchored = [v for v in range(g.n) if g.degree(v) > 0]
            for x in out.notes["new_vertices"]:
                if any(dp[x][y] > d - 1 for y in anchored + out.notes["new_vertices"]):
                    rep.fail(f"new vertex {x} farther than {d - 1} from some vertex", text)
                    break
            if d % 2:
                hubs = out.notes["hub_vertices"]
                if any(not inst.graph.has_edge(p, q) for p, q in combinations(hubs, 2)):
                    rep.fail("midpoints do not form a clique", text)
            tgt = solve_exact(inst, state_budget=budget)
            rep.check_witness(inst, tgt)
            rep.record(src.reachable == tgt.reachable, f"verdict mismatch d={d}", serialize_instance(src_inst) + text)
            if src.reachable:
                # identity mapping carries ISR jumps over unchanged
                bad = validate_sequence(inst, src.witness)
                if bad is not None:
                    rep.fail(f"source witness rejected on output: {bad}", text)
    return rep


def canonical_cnf(n: int, clauses) -> tuple:
    """Smallest image under variable permutations and sign flips."""
    best = None
    for perm in permutations(range(1, n + 1)):
        for signs in product((1, -1), repeat=n):
            img = tuple(sorted(
                tuple(sorted(signs[abs(l) - 1] * perm[abs(l) - 1] * (1 if l > 0 else -1) for l in c))
                for c in clauses
            ))
            if best is None or img < best:
                best = img
    return best


def small_formulas(n_max: int = 3, m_max: int = 3) -> list[Cnf3]:
    """All formulas with distinct clauses over distinct variables, one per symmetry class."""
    out = []
    for n in range(1, n_max + 1):
        clause_pool = []
        for size in (1, 2, 3):
            for vs in combinations(range(1, n + 1), size):
                for signs in product((1, -1), repeat=size):
                    clause_pool.append(tuple(s * v for s, v in zip(signs, vs)))
        seen = set()
        for m in range(1, m_max + 1):
            for cs in combinations(clause_pool, m):
                key = canonical_cnf(n, cs)
                if key not in seen:
                    seen.add(key)
                    out.append(Cnf3(n, key))
    return out


def verify_3satr(ds, seed: int = 0, n_max: int = 3, m_max: int = 3, budget=None) -> VerifyReport:
    rep = VerifyReport("3satr", seed, {"n": n_max, "m": m_max, "d": ",".join(map(str, ds))})
    for f in small_formulas(n_max, m_max):
        sats = f.satisfying_assignments()
        for a, b in product(sats, repeat=2):
            oracle = sat3_reconfig_bruteforce(f, a, b)
            for d in ds:
                out = reduce_3satr(f, a, b, d)
                if len(out.instance.source) != f.n_vars + len(f.clauses):
                    rep.fail("token set size is not n+m", format_cnf3(f, a, b))
                verdicts = []
                for rule in (Rule.TS, Rule.TJ):
                    inst = out.instance.with_rule(rule)
                    v = solve_exact(inst, state_budget=budget)
                    rep.check_witness(inst, v)
                    verdicts.append(v.reachable)
                rep.record(
                    verdicts == [oracle, oracle],
                    f"d={d}: oracle {oracle}, TS {verdicts[0]}, TJ {verdicts[1]}",
                    format_cnf3(f, a, b),
                )
    return rep


def _random_spr(rng: random.Random, n_max: int):
    n = rng.randint(3, n_max)
    g = random_graph(n, rng.choice((0.3, 0.45, 0.6)), rng)
    u, v = rng.sample(range(n), 2)
    paths = shortest_paths(g, u, v)
    if not paths:
        return None
    return SprInstance(g, u, v, rng.choice(paths), rng.choice(paths))


def check_spr_structure(out, d: int) -> list[str]:
    """Layer and cell cliques, and inter-layer distances that encode the complement."""
    g = out.instance.graph
    errs = []
    groups = list(out.notes["layers"]) + list(out.notes["cells"].values())
    for grp in groups:
        if any(not g.has_edge(a, b) for a, b in combinations(grp, 2)):
            errs.append(f"group {grp} is not a clique")
    dist = distance_matrix(g)
    for a, b in out.notes["cross_pairs"]:
        if dist[a][b] != d - 1:
            errs.append(f"complemented pair {a}-{b} at distance {dist[a][b]}")
    for a, b in out.notes["kept_edges"]:
        if dist[a][b] < d:
            errs.append(f"shortest-path edge {a}-{b} at distance {dist[a][b]}")
    return errs


def verify_spr(trials: int, n_max: int, ds, seed: int, budget=None) -> VerifyReport:
    rep = VerifyReport("spr", seed, {"trials": trials, "n": n_max, "d": ",".join(map(str, ds))})
    rng = random.Random(seed)
    done = 0
    while done < trials:
        inst = _random_spr(rng, n_max)
        if inst is None:
            continue
        done += 1
        oracle = spr_bruteforce(inst)
        for d in ds:
            out = reduce_spr_to_perfect(inst, d)
            for err in check_spr_structure(out, d):
                rep.fail(f"d={d}: {err}", format_spr(inst))
            verdicts = []
            for rule in (Rule.TS, Rule.TJ):
                target = out.instance.with_rule(rule)
                v = solve_exact(target, state_budget=budget)
                rep.check_witness(target, v)
                verdicts.append(v.reachable)
            rep.record(verdicts == [oracle, oracle], f"d={d}: oracle {oracle}, TS/TJ {verdicts}", format_spr(inst))
    return rep


def verify_ncl(ds=(3,), seed: int = 0, max_vertices: int = 3, max_edges: int = 6, budget=None) -> VerifyReport:
    from .ncl import format_ncl

    rep = VerifyReport("ncl", seed, {"vertices": max_vertices, "edges": max_edges, "d": ",".join(map(str, ds))})
    for m in small_machines(max_vertices, max_edges):
        cfgs = all_configs(m)
        for s in cfgs:
            reach = ncl_reachable(m, s)
            for d in ds:
                first = compile_ncl(m, s, s, d)
                if first.instance.graph.max_degree() > 3:
                    rep.fail("maximum degree above 3", format_ncl(m, s))
                if not port_confined(first, budget=budget):
                    rep.fail("a port token left its port edge", format_ncl(m, s))
                if not jumps_are_slides(first, budget=budget):
                    rep.fail("a jump is not a slide", format_ncl(m, s))
                for t in cfgs:
                    out = compile_ncl(m, s, t, d)
                    verdicts = []
                    for rule in (Rule.TS, Rule.TJ):
                        inst = out.instance.with_rule(rule)
                        v = solve_exact(inst, state_budget=budget)
                        rep.check_witness(inst, v)
                        verdicts.append(v.reachable)
                    oracle = t in reach
                    rep.record(verdicts == [oracle, oracle], f"d={d}: oracle {oracle}, TS/TJ {verdicts}", format_ncl(m, s, t))
    return rep


def verify_ts_power(pairs=((3, 2), (4, 2), (5, 2), (3, 3)), seed: int = 0, budget=None) -> VerifyReport:
    rep = VerifyReport("ts-power", seed, {"pairs": ";".join(f"{d},{k}" for d, k in pairs)})
    for d, k in pairs:
        g, a, b = build_ts_power_counterexample(d, k)
        base = DdisInstance(g, d, Rule.TS, a, b)
        power = DdisInstance(graph_power(g, d - 1), 2, Rule.TS, a, b)
        vb, vp = solve_exact(base, state_budget=budget), solve_exact(power, state_budget=budget)
        rep.check_witness(power, vp)
        ok = (
            not vb.reachable and vp.reachable and len(vp.witness.moves) == k
            and g.n == ts_power_vertex_count(d, k)
        )
        rep.record(ok, f"(d={d}, k={k}): G {vb.reachable}, power {vp.reachable}", serialize_instance(base))
    return rep


# ---------------------------------------------------------------------------
# decider sweeps


def _ddis_pairs(g: Graph, d: int, k_max: int):
    for k in range(1, k_max + 1):
        sets = list(enumerate_ddis(g, d, k))
        yield from product(sets, repeat=2)


def verify_split_ts_d3(trials: int, n_max: int, seed: int, k_max: int = 3, budget=None) -> VerifyReport:
    rep = VerifyReport("split-ts-d3", seed, {"trials": trials, "n": n_max, "k": k_max})
    rng = random.Random(seed)
    for _ in range(trials):
        g = random_split_graph(rng.randint(1, n_max), rng, rng.choice((0.2, 0.5, 0.8)))
        for a, b in _ddis_pairs(g, 3, k_max):
            inst = DdisInstance(g, 3, Rule.TS, a, b)
            v = decide_split_ts_d3(inst)
            ref = solve_exact(inst, want_witness=False, state_budget=budget)
            rep.check_witness(inst, v)
            rep.record(v.reachable == ref.reachable, f"split decider {v.reachable}, search {ref.reachable}", serialize_instance(inst))
    return rep


def verify_power_tj(trials: int, n_max: int, ds, seed: int, budget=None) -> VerifyReport:
    rep = VerifyReport("power-tj", seed, {"trials": trials, "n": n_max, "d": ",".join(map(str, ds))})
    rng = random.Random(seed)
    done = 0
    while done < trials:
        g = random_graph(rng.randint(2, n_max), rng.choice((0.15, 0.3, 0.5)), rng)
        d = rng.choice(list(ds))
        sets = [s for k in (1, 2, 3) for s in enumerate_ddis(g, d, k)]
        if not sets:
            continue
        a = rng.choice(sets)
        same = [s for s in sets if len(s) == len(a)]
        b = rng.choice(same)
        done += 1
        inst = DdisInstance(g, d, Rule.TJ, a, b)
        ref = solve_exact(inst, state_budget=budget)
        via = decide_tj_via_power(inst, state_budget=budget)
        rep.check_witness(inst, ref)
        rep.check_witness(inst, via)
        rep.record(ref.reachable == via.reachable, f"search {ref.reachable}, power {via.reachable}", serialize_instance(inst))
    return rep


def verify_bounded_diameter(trials: int, n_max: int, seed: int, budget=None) -> VerifyReport:
    rep = VerifyReport("bounded-diameter", seed, {"trials": trials, "n": n_max})
    rng = random.Random(seed)
    done = 0
    while done < trials:
        n = rng.randint(1, n_max)
        g = random_diameter2_graph(n, rng) if rng.random() < 0.5 else random_split_graph(n, rng)
        diam = max_component_diameter(g)
        d = rng.randint(max(2, diam + 1), max(2, diam + 1) + 2)
        rule = rng.choice((Rule.TS, Rule.TJ))
        sets = [s for k in (1, 2, 3) for s in enumerate_ddis(g, d, k)]
        a = rng.choice(sets)
        b = rng.choice([s for s in sets if len(s) == len(a)])
        inst = DdisInstance(g, d, rule, a, b)
        v = decide_bounded_diameter(inst)
        if v is None:
            continue
        done += 1
        ref = solve_exact(inst, want_witness=False, state_budget=budget)
        rep.check_witness(inst, v)
        rep.record(v.reachable == ref.reachable, f"decider {v.reachable}, search {ref.reachable}", serialize_instance(inst))
    return rep


def verify_rigid(n_max: int, ds, seed: int = 0, k_max: int = 3, budget=None) -> VerifyReport:
    """Every unlabelled tree up to ``n_max`` vertices, every DdIS up to ``k_max`` tokens."""
    from ..rigidity import rigid_set

    rep = VerifyReport("rigid", seed, {"n": n_max, "d": ",".join(map(str, ds)), "k": k_max})
    for n in range(1, n_max + 1):
        for t in all_trees(n):
            for d in ds:
                for k in range(1, k_max + 1):
                    for s in enumerate_ddis(t, d, k):
                        fast = rigid_set(t, s, d).rigid
                        slow = rigid_oracle(t, s, d, budget)
                        rep.record(set(fast) == slow, f"d={d} tokens {s}: fast {sorted(fast)}, oracle {sorted(slow)}",
                                   serialize_instance(DdisInstance(t, d, Rule.TS, s, s)))
    return rep


def verify_power_equivalence(trials: int, n_max: int, ds, seed: int, k_max: int = 3) -> VerifyReport:
    """DdIS in ``G`` versus independent sets in ``G^(d-1)``, over all small vertex subsets."""
    rep = VerifyReport("power-equivalence", seed, {"trials": trials, "n": n_max, "d": ",".join(map(str, ds))})
    rng = random.Random(seed)
    for _ in range(trials):
        g = random_graph(rng.randint(1, n_max), rng.choice((0.15, 0.3, 0.5)), rng)
        for d in ds:
            power = graph_power(g, d - 1)
            for k in range(k_max + 1):
                for s in combinations(range(g.n), k):
                    a, b = is_ddis(g, d, s), is_independent(power, s)
                    rep.record(a == b, f"d={d} set {s}: ddis {a}, power-independent {b}")
    return rep


KINDS = {
    "chordal-odd": lambda a: verify_chordal_odd(a.trials, a.n, a.d or (3, 5), a.seed, a.budget),
    "general-tj": lambda a: verify_general_tj(a.trials, a.n, a.d or (3, 4), a.seed, a.budget),
    "3satr": lambda a: verify_3satr(a.d or (3, 4), a.seed, min(a.n, 3), 3, a.budget),
    "spr": lambda a: verify_spr(a.trials, a.n, a.d or (2, 3), a.seed, a.budget),
    "ncl": lambda a: verify_ncl(a.d or (3,), a.seed, 3, 6, a.budget),
    "ts-power": lambda a: verify_ts_power(seed=a.seed, budget=a.budget),
    "split-ts-d3": lambda a: verify_split_ts_d3(a.trials, a.n, a.seed, budget=a.budget),
    "power-tj": lambda a: verify_power_tj(a.trials, a.n, a.d or (3, 4, 5), a.seed, a.budget),
    "bounded-diameter": lambda a: verify_bounded_diameter(a.trials, a.n, a.seed, a.budget),
    "rigid": lambda a: verify_rigid(a.n, a.d or (3, 4), a.seed, budget=a.budget),
    "power-equivalence": lambda a: verify_power_equivalence(a.trials, a.n, a.d or (2, 3, 4, 5), a.seed),
}


def verify_reduction(kind: str, trials: int = 100, n: int = 6, d=None, seed: int = 0, budget=None) -> VerifyReport:
    """Run the sweep named ``kind``; ``d`` is a list of distances or None for the default."""
    if kind not in KINDS:
        raise ValueError(f"unknown verification kind {kind!r}; choose from {', '.join(KINDS)}")
    args = SimpleNamespace(trials=trials, n=n, d=tuple(d) if d else None, seed=seed, budget=budget)
    return KINDS[kind](args)
