"""Generators for the hardness constructions, with source-problem oracles and sweeps."""

from .base import ReductionOutput, format_vertex_map, parse_vertex_map
from .chordal import lift_isr_witness, normalize_witness, pull_back_witness, reduce_isr_to_chordal_odd
from .general_tj import reduce_isr_to_general_tj
from .ncl import (
    NclConfig,
    NclEdge,
    NclMachine,
    compile_ncl,
    gadget_semantics,
    ncl_and_gadget,
    ncl_bruteforce,
    ncl_or_gadget,
)
from .power import build_ts_power_counterexample, ts_power_vertex_count
from .sat import Cnf3, reduce_3satr, sat3_reconfig_bruteforce
from .spr import SprInstance, reduce_spr_to_perfect, spr_bruteforce
from .verify import VerifyReport, verify_reduction

__all__ = [
    "Cnf3",
    "NclConfig",
    "NclEdge",
    "NclMachine",
    "ReductionOutput",
    "SprInstance",
    "VerifyReport",
    "build_ts_power_counterexample",
    "compile_ncl",
    "format_vertex_map",
    "gadget_semantics",
    "lift_isr_witness",
    "ncl_and_gadget",
    "ncl_bruteforce",
    "ncl_or_gadget",
    "normalize_witness",
    "parse_vertex_map",
    "pull_back_witness",
    "reduce_3satr",
    "reduce_isr_to_chordal_odd",
    "reduce_isr_to_general_tj",
    "reduce_spr_to_perfect",
    "sat3_reconfig_bruteforce",
    "spr_bruteforce",
    "ts_power_vertex_count",
    "verify_reduction",
]
