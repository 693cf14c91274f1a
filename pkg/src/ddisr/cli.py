"""Command-line entry point: ``ddisr <command> ...``.

Exit status: 0 for YES (or a passing report), 1 for NO (or a failing
report), 2 for usage, parse and budget errors.  Verdicts go to stdout,
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .deciders import dispatch
from .engine import BUDGET_ENV, BudgetExceeded, reconf_graph_stats
from .graph import GraphError
from .instance import (
    DdisInstance,
    FormatError,
    InstanceError,
    Rule,
    enumerate_ddis,
    parse_instance,
    serialize_instance,
)
from .reductions.base import format_vertex_map
from .rigidity import RigidityError, fig7_instance, necessary_condition_ts, rigid_set

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2

REDUCTION_KINDS = ("chordal-odd", "general-tj", "3satr", "spr", "ncl")
GADGETS = ("fig7", "ts-power", "ncl-and", "ncl-or")


class CliError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _d_list(raw: str | None):
    if raw is None:
        return None
    try:
        ds = [int(x) for x in raw.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad distance list {raw!r}") from None
    if not ds or min(ds) < 2:
        raise argparse.ArgumentTypeError("distances must be integers >= 2")
    return ds


def _positive(raw: str) -> int:
    try:
        v = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {raw!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


# ---------------------------------------------------------------------------
# commands


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.instance))
    report = dispatch(inst, want_witness=not args.no_witness, state_budget=args.budget)
    v = report.verdict
    out = ["YES" if v.reachable else "NO"]
    if v.reachable and v.witness is not None and not args.no_witness:
        out += [f"move {a} {b}" for a, b in v.witness.pairs()]
    out.append(f"decider: {v.decider}")
    out.append(f"states: {v.states_explored}")
    print("\n".join(out))
    return EXIT_YES if v.reachable else EXIT_NO


def _isr_input(text: str):
    inst = parse_instance(text)
    if inst.size_mismatch:
        raise CliError("source and target differ in size")
    return inst.graph, inst.source, inst.target


def _reduce(kind: str, text: str, d: int):
    from .reductions import chordal, general_tj, ncl, sat, spr

    if kind == "chordal-odd":
        g, a, b = _isr_input(text)
        return chordal.reduce_isr_to_chordal_odd(g, a, b, d)
    if kind == "general-tj":
        g, a, b = _isr_input(text)
        return general_tj.reduce_isr_to_general_tj(g, a, b, d)
    if kind == "3satr":
        f, a, b = sat.parse_cnf3(text)
        if a is None or b is None:
            raise CliError("CNF input needs 'assign_s' and 'assign_t' lines")
        return sat.reduce_3satr(f, a, b, d)
    if kind == "spr":
        return spr.reduce_spr_to_perfect(spr.parse_spr(text), d)
    m, s, t = ncl.parse_ncl(text)
    if s is None or t is None:
        raise CliError("NCL input needs 'config_s' and 'config_t' lines")
    return ncl.compile_ncl(m, s, t, d)


def cmd_reduce(args) -> int:
    out = _reduce(args.kind, _read(args.input), args.d)
    inst = out.instance
    if args.rule is not None:
        if args.kind in ("chordal-odd", "general-tj") and args.rule is not Rule.TJ:
            raise CliError(f"{args.kind} produces TJ instances only")
        inst = inst.with_rule(args.rule)
    _write(args.output, serialize_instance(inst))
    if args.output not in (None, "-"):
        Path(args.output + ".map").write_text(format_vertex_map(out.vertex_map))
    # keep stdout clean when the instance itself went there
    info = sys.stderr if args.output in (None, "-") else sys.stdout
    print(f"vertices: {inst.graph.n}", file=info)
    new = out.notes.get("new_vertices")
    if new is not None:
        print(f"new vertices: {len(new)}", file=info)
    return EXIT_YES


def cmd_gadget(args) -> int:
    from .reductions.ncl import PORTS, ncl_and_gadget, ncl_or_gadget
    from .reductions.power import build_ts_power_counterexample

    header = []
    if args.name == "fig7":
        inst = fig7_instance(args.d)
    elif args.name == "ts-power":
        if args.k is None:
            raise CliError("ts-power needs --k")
        g, a, b = build_ts_power_counterexample(args.d, args.k)
        inst = DdisInstance(g, args.d, Rule.TS, a, b)
    else:
        gad = ncl_and_gadget(args.d) if args.name == "ncl-and" else ncl_or_gadget(args.d)
        toks = gad.initial_tokens()
        inst = DdisInstance(gad.graph, args.d, Rule.TS, toks, toks)
        header = [f"# {gad.kind} gadget, d={args.d}"]
        header += [f"# port {p} outer {gad.ports[p][0]} inner {gad.ports[p][1]} weight {gad.weights[p]}" for p in PORTS]
    _write(args.output, "\n".join(header + [serialize_instance(inst)]) if header else serialize_instance(inst))
    return EXIT_YES


def cmd_verify(args) -> int:
    from .reductions.verify import verify_reduction

    report = verify_reduction(args.kind, trials=args.trials, n=args.n, d=args.d, seed=args.seed, budget=args.budget)
    _write(args.output, report.format())
    return EXIT_YES if report.ok else EXIT_NO


def cmd_rigid(args) -> int:
    inst = parse_instance(_read(args.instance))
    lines = []
    for name, toks in (("source", inst.source), ("target", inst.target)):
        rs = rigid_set(inst.graph, toks, inst.d, witnesses=args.witness)
        lines.append(f"rigid {name}: {' '.join(map(str, sorted(rs.rigid)))}".rstrip())
        for u, seq in sorted(rs.witnesses.items()):
            lines.append(f"free {u}: " + " ".join(f"{a}>{b}" for a, b in seq.pairs()))
    if inst.size_mismatch:
        lines.append("conclusion: NO (size mismatch)")
        code = EXIT_NO
    elif necessary_condition_ts(inst.graph, inst.source, inst.target, inst.d) is not None:
        lines.append("conclusion: NO (rigid sets differ)")
        code = EXIT_NO
    else:
        lines.append("conclusion: none (rigid sets agree)")
        code = EXIT_YES
    print("\n".join(lines))
    return code


def cmd_stats(args) -> int:
    inst = parse_instance(_read(args.instance))
    d = args.d if args.d is not None else inst.d
    k = args.k if args.k is not None else len(inst.source)
    rule = args.rule if args.rule is not None else inst.rule
    st = reconf_graph_stats(inst.graph, d, k, rule, args.budget)
    lines = [
        f"d: {d}",
        f"k: {k}",
        f"rule: {rule}",
        f"states: {st.state_count}",
        f"edges: {st.edge_count}",
        f"components: {st.component_count}",
        f"largest: {st.largest_component}",
    ]
    if (d, k) == (inst.d, len(inst.source)) and not inst.size_mismatch:
        lines.append(f"source-target connected: {'yes' if st.same_component(inst.source, inst.target) else 'no'}")
    print("\n".join(lines))
    return EXIT_YES


def cmd_enumerate(args) -> int:
    inst = parse_instance(_read(args.instance))
    d = args.d if args.d is not None else inst.d
    k = args.k if args.k is not None else len(inst.source)
    count = 0
    out = []
    for s in enumerate_ddis(inst.graph, d, k):
        out.append(" ".join(map(str, s)))
        count += 1
        if args.limit and count >= args.limit:
            break
    out.append(f"count: {count}")
    print("\n".join(out))
    return EXIT_YES


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ddisr", description=__doc__.splitlines()[0])
    p.add_argument(
        "--budget", type=_positive, default=None,
        help=f"state budget for searches (default: ${BUDGET_ENV} or 5000000)",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="decide an instance file")
    s.add_argument("instance")
    s.add_argument("--no-witness", action="store_true", help="skip move lines")
    s.set_defaults(func=cmd_solve)

    r = sub.add_parser("reduce", help="build a DdISR instance from another problem")
    r.add_argument("kind", choices=REDUCTION_KINDS)
    r.add_argument("input")
    r.add_argument("--d", type=int, required=True)
    r.add_argument("--rule", type=Rule, choices=list(Rule), default=None)
    r.add_argument("-o", "--output", default=None, help="instance path; a .map sidecar is written next to it")
    r.set_defaults(func=cmd_reduce)

    g = sub.add_parser("gadget", help="write a named construction")
    g.add_argument("name", choices=GADGETS)
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--k", type=int, default=None)
    g.add_argument("-o", "--output", default=None)
    g.set_defaults(func=cmd_gadget)

    from .reductions.verify import KINDS

    v = sub.add_parser("verify", help="run an oracle sweep")
    v.add_argument("kind", choices=sorted(KINDS))
    v.add_argument("--trials", type=_positive, default=100)
    v.add_argument("--n", type=_positive, default=6, help="maximum vertex count")
    v.add_argument("--d", type=_d_list, default=None, help="comma-separated distances")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("-o", "--output", default=None)
    v.set_defaults(func=cmd_verify)

    rg = sub.add_parser("rigid", help="rigid token sets of a tree instance")
    rg.add_argument("instance")
    rg.add_argument("--witness", action="store_true", help="print a freeing sequence per movable token")
    rg.set_defaults(func=cmd_rigid)

    st = sub.add_parser("stats", help="reconfiguration graph statistics")
    st.add_argument("instance")
    st.add_argument("--d", type=int, default=None)
    st.add_argument("--k", type=int, default=None)
    st.add_argument("--rule", type=Rule, choices=list(Rule), default=None)
    st.set_defaults(func=cmd_stats)

    e = sub.add_parser("enumerate", help="list the DdIS of an instance's graph")
    e.add_argument("instance")
    e.add_argument("--d", type=int, default=None)
    e.add_argument("--k", type=int, default=None)
    e.add_argument("--limit", type=int, default=0)
    e.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"states: {exc.states_explored}", file=sys.stderr)
    except (CliError, FormatError, InstanceError, GraphError, RigidityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
