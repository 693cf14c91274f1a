"""DdIS semantics, reconfiguration instances, sequence replay and the instance file format."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .graph import Graph, GraphError, ball, graph_power

TokenSet = tuple[int, ...]


class Rule(str, enum.Enum):
    TS = "TS"
    TJ = "TJ"

    def __str__(self) -> str:
        return self.value


class InstanceError(ValueError):
    pass


class FormatError(ValueError):
    """Malformed text input; ``lineno`` is 1-based (0 when not tied to a line)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


def token_set(vertices: Iterable[int]) -> TokenSet:
    out = tuple(sorted(vertices))
    if len(set(out)) != len(out):
        raise InstanceError(f"duplicate tokens in {list(vertices)}")
    return out


def _check_range(g: Graph, s: Iterable[int]) -> None:
    for v in s:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")


def is_ddis(g: Graph, d: int, s: Iterable[int]) -> bool:
    """True iff all pairwise distances in ``s`` are at least ``d``.

    Each token runs a BFS truncated at depth ``d - 1`` and stops at the first
    other token it meets.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    members = list(s)
    _check_range(g, members)
    occupied = set(members)
    if len(occupied) != len(members):
        return False
    for u in members:
        for v in ball(g, u, d - 1):
            if v != u and v in occupied:
                return False
    return True


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    s = list(s)
    return all(not g.has_edge(u, v) for u, v in combinations(s, 2))


def ddis_iff_power_is(g: Graph, d: int, s: Iterable[int]) -> bool:
    """``is_ddis`` cross-checked against independence in the ``(d-1)``-th power."""
    s = list(s)
    direct = is_ddis(g, d, s)
    via_power = is_independent(graph_power(g, d - 1), s)
    assert direct == via_power, f"DdIS/power disagreement on {s} (d={d})"
    return direct


def enumerate_ddis(g: Graph, d: int, k: int) -> Iterator[TokenSet]:
    """Every size-``k`` DdIS of ``g``, lexicographically, by pruned backtracking."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if d < 2:
        raise ValueError("d must be at least 2")
    blocked = [frozenset(ball(g, v, d - 1)) for v in range(g.n)]
    chosen: list[int] = []

    def extend(start: int, forbidden: frozenset[int]) -> Iterator[TokenSet]:
        if len(chosen) == k:
            yield tuple(chosen)
            return
        need = k - len(chosen)
        for v in range(start, g.n - need + 1):
            if v in forbidden:
                continue
            chosen.append(v)
            yield from extend(v + 1, forbidden | blocked[v])
            chosen.pop()

    yield from extend(0, frozenset())


@dataclass(frozen=True)
class Move:
    src: int
    dst: int

    def __post_init__(self):
        if self.src == self.dst:
            raise InstanceError(f"move from {self.src} to itself")

    def __iter__(self):
        return iter((self.src, self.dst))


@dataclass(frozen=True)
class ReconfSequence:
    rule: Rule
    moves: tuple[Move, ...] = ()

    @classmethod
    def of(cls, rule: Rule | str, pairs: Iterable[Sequence[int]]) -> ReconfSequence:
        return cls(Rule(rule), tuple(Move(u, v) for u, v in pairs))

    def __len__(self) -> int:
        return len(self.moves)

    def pairs(self) -> list[tuple[int, int]]:
        return [(m.src, m.dst) for m in self.moves]


@dataclass(frozen=True)
class DdisInstance:
    """A reconfiguration instance; source and target are validated on construction.

    Instances with ``|source| != |target|`` are representable (they are
    trivially NO); check :attr:`size_mismatch`.
    """

    graph: Graph
    d: int
    rule: Rule
    source: TokenSet
    target: TokenSet

    def __post_init__(self):
        object.__setattr__(self, "rule", Rule(self.rule))
        object.__setattr__(self, "source", token_set(self.source))
        object.__setattr__(self, "target", token_set(self.target))
        if self.d < 2:
            raise InstanceError(f"d must be at least 2, got {self.d}")
        for name in ("source", "target"):
            s = getattr(self, name)
            try:
                ok = is_ddis(self.graph, self.d, s)
            except GraphError as exc:
                raise InstanceError(f"{name}: {exc}") from None
            if not ok:
                raise InstanceError(f"{name} {list(s)} is not a distance-{self.d} independent set")

    @property
    def size_mismatch(self) -> bool:
        return len(self.source) != len(self.target)

    @property
    def k(self) -> int:
        return len(self.source)

    def with_rule(self, rule: Rule | str) -> DdisInstance:
        return DdisInstance(self.graph, self.d, Rule(rule), self.source, self.target)


@dataclass(frozen=True)
class Violation:
    index: int
    reason: str
    detail: str = ""

    def __str__(self) -> str:
        return f"move {self.index}: {self.reason}" + (f" ({self.detail})" if self.detail else "")


# violation reasons
TOKEN_ABSENT = "token absent"
DEST_OCCUPIED = "destination occupied"
DISTANCE = "distance violation"
NON_EDGE = "non-edge slide"
WRONG_ENDPOINT = "wrong endpoint"


def replay(
    g: Graph, d: int, rule: Rule | str, start: Iterable[int], moves: Iterable[Sequence[int]]
) -> tuple[TokenSet, Violation | None]:
    """Apply ``moves`` from ``start``; stop at the first illegal one.

    Returns the last legal token set and the violation (``None`` if all moves
    were legal).
    """
    rule = Rule(rule)
    current = set(start)
    for i, (x, y) in enumerate(moves):
        if x not in current:
            return token_set(current), Violation(i, TOKEN_ABSENT, f"no token on {x}")
        if not 0 <= y < g.n:
            return token_set(current), Violation(i, DISTANCE, f"vertex {y} out of range")
        if y in current:
            return token_set(current), Violation(i, DEST_OCCUPIED, f"{y} already holds a token")
        if rule is Rule.TS and not g.has_edge(x, y):
            return token_set(current), Violation(i, NON_EDGE, f"{x}-{y} is not an edge")
        near = ball(g, y, d - 1)
        clash = sorted(w for w in current if w != x and w in near)
        if clash:
            return token_set(current), Violation(
                i, DISTANCE, f"{y} within distance {d - 1} of {clash[0]}"
            )
        current.remove(x)
        current.add(y)
    return token_set(current), None


def validate_sequence(inst: DdisInstance, seq: ReconfSequence) -> Violation | None:
    """``None`` if ``seq`` transforms source into target under the instance's rule."""
    if Rule(seq.rule) is not inst.rule:
        raise InstanceError(f"sequence rule {seq.rule} does not match instance rule {inst.rule}")
    final, bad = replay(inst.graph, inst.d, inst.rule, inst.source, seq.pairs())
    if bad is not None:
        return bad
    if final != inst.target:
        return Violation(len(seq.moves), WRONG_ENDPOINT, f"ended at {list(final)}")
    return None


# ---------------------------------------------------------------------------
# text format

MAGIC = "ddisr"
VERSION = 1


def _data_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _ints(words: list[str], lineno: int) -> list[int]:
    try:
        return [int(w) for w in words]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(words)!r}", lineno) from None


def parse_graph_lines(lines: Iterable[tuple[int, list[str]]], n: int | None) -> tuple[Graph, list]:
    """Shared ``vertices``/``edge`` handling; returns the graph and the unconsumed lines."""
    edges = []
    rest = []
    for lineno, words in lines:
        key = words[0]
        if key == "vertices":
            if n is not None:
                raise FormatError("repeated 'vertices' line", lineno)
            if len(words) != 2:
                raise FormatError("'vertices' takes one integer", lineno)
            (n,) = _ints(words[1:], lineno)
            if n < 0:
                raise FormatError("vertex count must be nonnegative", lineno)
        elif key == "edge":
            if len(words) != 3:
                raise FormatError("'edge' takes two vertex ids", lineno)
            edges.append((lineno, *_ints(words[1:], lineno)))
        else:
            rest.append((lineno, words))
    if n is None:
        raise FormatError("missing 'vertices' line")
    seen = set()
    for lineno, u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"edge ({u}, {v}) out of range", lineno)
        if u == v:
            raise FormatError(f"self-loop at {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"duplicate edge ({u}, {v})", lineno)
        seen.add(key)
    return Graph.from_edges(n, [(u, v) for _, u, v in edges]), rest


def parse_instance(text: str) -> DdisInstance:
    lines = list(_data_lines(text))
    if not lines:
        raise FormatError("empty input")
    lineno, words = lines[0]
    if words != [MAGIC, str(VERSION)]:
        raise FormatError(f"expected '{MAGIC} {VERSION}' header", lineno)
    g, rest = parse_graph_lines(lines[1:], None)
    values: dict[str, tuple[int, list[str]]] = {}
    for lineno, words in rest:
        key = words[0]
        if key not in ("d", "rule", "source", "target"):
            raise FormatError(f"unknown key {key!r}", lineno)
        if key in values:
            raise FormatError(f"repeated {key!r} line", lineno)
        values[key] = (lineno, words[1:])
    for key in ("d", "rule", "source", "target"):
        if key not in values:
            raise FormatError(f"missing {key!r} line")
    lineno, args = values["d"]
    if len(args) != 1:
        raise FormatError("'d' takes one integer", lineno)
    (d,) = _ints(args, lineno)
    lineno, args = values["rule"]
    if args not in (["TS"], ["TJ"]):
        raise FormatError("rule must be TS or TJ", lineno)
    rule = Rule(args[0])
    sets = {}
    for key in ("source", "target"):
        lineno, args = values[key]
        vs = _ints(args, lineno)
        if len(set(vs)) != len(vs):
            raise FormatError(f"duplicate vertex in {key}", lineno)
        sets[key] = vs
    try:
        return DdisInstance(g, d, rule, tuple(sets["source"]), tuple(sets["target"]))
    except (InstanceError, GraphError) as exc:
        raise FormatError(str(exc), values["source"][0]) from None


def format_graph_lines(g: Graph) -> list[str]:
    return [f"vertices {g.n}"] + [f"edge {u} {v}" for u, v in g.edges()]


def serialize_instance(inst: DdisInstance) -> str:
    lines = [f"{MAGIC} {VERSION}", f"d {inst.d}", f"rule {inst.rule}"]
    lines += format_graph_lines(inst.graph)
    lines.append(" ".join(["source", *map(str, inst.source)]))
    lines.append(" ".join(["target", *map(str, inst.target)]))
    return "\n".join(lines) + "\n"
