"""Shared output type for the reduction generators."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..instance import DdisInstance


@dataclass(frozen=True)
class ReductionOutput:
    """A constructed instance plus the map from source-problem entities to its vertices.

    ``vertex_map`` keys are tuples whose first item names the entity kind,
    e.g. ``("v", 3)`` for an original vertex or ``("x", 0, 2)`` for an edge
    vertex.  ``notes`` holds structural metadata such as which vertices are new.
    """

    instance: DdisInstance
    vertex_map: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        values = list(self.vertex_map.values())
        if len(set(values)) != len(values):
            raise ValueError("vertex_map is not injective")


def format_vertex_map(vertex_map: dict) -> str:
    """One ``<kind> <key...> <vertex>`` line per entry, sorted by vertex id."""
    lines = []
    for key, vertex in sorted(vertex_map.items(), key=lambda kv: kv[1]):
        lines.append(" ".join(str(part) for part in (*key, vertex)))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_vertex_map(text: str) -> dict:
    out = {}
    for line in text.splitlines():
        words = line.split()
        if not words:
            continue
        key = tuple(int(w) if w.lstrip("-").isdigit() else w for w in words[:-1])
        out[key] = int(words[-1])
    return out
