"""3SAT reconfiguration: brute-force oracle and the reduction to DdISR (TS and TJ)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product

from ..graph import Graph
from ..instance import DdisInstance, FormatError, Rule
from .base import ReductionOutput

Assignment = tuple[bool, ...]


@dataclass(frozen=True)
class Cnf3:
    """CNF with at most three literals per clause; literals are signed 1-based ints."""

    n_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        if self.n_vars < 0:
            raise ValueError("negative variable count")
        for c in self.clauses:
            if not 1 <= len(c) <= 3:
                raise ValueError(f"clause {c} must have 1 to 3 literals")
            if len(set(c)) != len(c):
                raise ValueError(f"clause {c} repeats a literal")
            for lit in c:
                if lit == 0 or abs(lit) > self.n_vars:
                    raise ValueError(f"literal {lit} references an undeclared variable")

    def satisfied_by(self, a: Assignment) -> bool:
        return all(any(a[abs(lit) - 1] == (lit > 0) for lit in c) for c in self.clauses)

    def satisfying_assignments(self) -> list[Assignment]:
        return [a for a in product((False, True), repeat=self.n_vars) if self.satisfied_by(a)]


def _check_assignment(f: Cnf3, a: Assignment, name: str) -> Assignment:
    a = tuple(bool(x) for x in a)
    if len(a) != f.n_vars:
        raise ValueError(f"{name} assigns {len(a)} variables, formula has {f.n_vars}")
    if not f.satisfied_by(a):
        raise ValueError(f"{name} does not satisfy the formula")
    return a


def sat3_reconfig_bruteforce(f: Cnf3, a: Assignment, b: Assignment) -> bool:
    """BFS over satisfying assignments under single-variable flips."""
    a = _check_assignment(f, a, "source assignment")
    b = _check_assignment(f, b, "target assignment")
    seen = {a}
    queue = deque([a])
    while queue:
        cur = queue.popleft()
        if cur == b:
            return True
        for i in range(f.n_vars):
            nxt = cur[:i] + (not cur[i],) + cur[i + 1:]
            if nxt not in seen and f.satisfied_by(nxt):
                seen.add(nxt)
                queue.append(nxt)
    return False


def _tokens(f: Cnf3, a: Assignment, vmap: dict) -> list[int]:
    toks = [vmap[("lit", i + 1 if a[i] else -(i + 1))] for i in range(f.n_vars)]
    for j, c in enumerate(f.clauses):
        # the true literal with the lowest variable index holds the clause token
        lit = min((lit for lit in c if a[abs(lit) - 1] == (lit > 0)), key=abs)
        toks.append(vmap[("clause", j, lit)])
    return toks


def reduce_3satr(f: Cnf3, a: Assignment, b: Assignment, d: int) -> ReductionOutput:
    """Variable edges, clause cliques, opposite literals in different parts joined by ``d - 1`` paths.

    With ``d = 2`` the joining paths are single edges.  The instance rule is
    TS; the same graph and token sets are valid under TJ.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    a = _check_assignment(f, a, "source assignment")
    b = _check_assignment(f, b, "target assignment")
    vmap: dict = {}
    parts: list[list[tuple[int, int]]] = []  # (literal, vertex) per component
    nxt = 0
    edges = []
    for i in range(1, f.n_vars + 1):
        vmap[("lit", i)], vmap[("lit", -i)] = nxt, nxt + 1
        edges.append((nxt, nxt + 1))
        parts.append([(i, nxt), (-i, nxt + 1)])
        nxt += 2
    for j, c in enumerate(f.clauses):
        members = []
        for lit in c:
            vmap[("clause", j, lit)] = nxt
            members.append((lit, nxt))
            nxt += 1
        edges += [(x, y) for i, (_, x) in enumerate(members) for _, y in members[i + 1:]]
        parts.append(members)
    links = []
    for pi in range(len(parts)):
        for qi in range(pi + 1, len(parts)):
            for lit, x in parts[pi]:
                for lit2, y in parts[qi]:
                    if lit == -lit2:
                        links.append((x, y))
    for x, y in links:
        prev = x
        for _ in range(d - 2):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, y))
    g = Graph.from_edges(nxt, edges)
    inst = DdisInstance(g, d, Rule.TS, _tokens(f, a, vmap), _tokens(f, b, vmap))
    notes = {"links": links, "components": [[v for _, v in p] for p in parts]}
    return ReductionOutput(inst, vmap, notes)


# ---------------------------------------------------------------------------
# text format: "cnf3 <n> <m>", m clause lines "l1 l2 l3 0", then optional
# "assign_s" / "assign_t" lines listing every variable as a signed literal.


def parse_cnf3(text: str) -> tuple[Cnf3, Assignment | None, Assignment | None]:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line and not line.startswith("c "):
            rows.append((lineno, line.split()))
    if not rows or rows[0][1][0] != "cnf3" or len(rows[0][1]) != 3:
        raise FormatError("expected 'cnf3 <n> <m>' header", rows[0][0] if rows else 0)
    try:
        n, m = int(rows[0][1][1]), int(rows[0][1][2])
    except ValueError:
        raise FormatError("bad header counts", rows[0][0]) from None
    clauses = []
    assigns: dict[str, Assignment] = {}
    for lineno, words in rows[1:]:
        if words[0] in ("assign_s", "assign_t"):
            try:
                lits = [int(w) for w in words[1:]]
            except ValueError:
                raise FormatError("assignment literals must be integers", lineno) from None
            if sorted(abs(x) for x in lits) != list(range(1, n + 1)):
                raise FormatError("assignment must list each variable exactly once", lineno)
            val = [False] * n
            for x in lits:
                val[abs(x) - 1] = x > 0
            assigns[words[0]] = tuple(val)
            continue
        try:
            lits = [int(w) for w in words]
        except ValueError:
            raise FormatError("clause literals must be integers", lineno) from None
        if not lits or lits[-1] != 0:
            raise FormatError("clause must be 0-terminated", lineno)
        clauses.append(tuple(lits[:-1]))
    if len(clauses) != m:
        raise FormatError(f"header declares {m} clauses, found {len(clauses)}")
    try:
        f = Cnf3(n, tuple(clauses))
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return f, assigns.get("assign_s"), assigns.get("assign_t")


def format_cnf3(f: Cnf3, a: Assignment | None = None, b: Assignment | None = None) -> str:
    lines = [f"cnf3 {f.n_vars} {len(f.clauses)}"]
    lines += [" ".join(map(str, (*c, 0))) for c in f.clauses]
    for key, val in (("assign_s", a), ("assign_t", b)):
        if val is not None:
            lits = [i + 1 if x else -(i + 1) for i, x in enumerate(val)]
            lines.append(" ".join([key, *map(str, lits)]))
    return "\n".join(lines) + "\n"
