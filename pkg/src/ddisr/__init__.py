"""Distance-d independent set reconfiguration under token sliding and token jumping."""

from .deciders import DeciderReport, dispatch
from .engine import BudgetExceeded, Verdict, reachable_sets, reconf_graph_stats, rigid_oracle, solve_exact
from .graph import Graph, GraphError, distance_matrix, graph_power, is_chordal, is_split, is_tree
from .instance import (
    DdisInstance,
    FormatError,
    InstanceError,
    ReconfSequence,
    Rule,
    enumerate_ddis,
    is_ddis,
    parse_instance,
    serialize_instance,
    validate_sequence,
)
from .rigidity import fig7_instance, is_rigid, movable_sequence, necessary_condition_ts, rigid_set

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "DdisInstance",
    "DeciderReport",
    "FormatError",
    "Graph",
    "GraphError",
    "InstanceError",
    "ReconfSequence",
    "Rule",
    "Verdict",
    "dispatch",
    "distance_matrix",
    "enumerate_ddis",
    "fig7_instance",
    "graph_power",
    "is_chordal",
    "is_ddis",
    "is_rigid",
    "is_split",
    "is_tree",
    "movable_sequence",
    "necessary_condition_ts",
    "parse_instance",
    "reachable_sets",
    "reconf_graph_stats",
    "rigid_oracle",
    "rigid_set",
    "serialize_instance",
    "solve_exact",
    "validate_sequence",
]
