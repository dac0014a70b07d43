"""Secure-sum protocol laboratory on a simulated reconfigurable ring."""

from ringsum.adversary import (
    CoalitionView,
    LeakageVerdict,
    brute_force_leakage,
    decide_leakage,
    extract_view,
    privacy_matrix,
)
from ringsum.engine import RunResult, TraceEvent, complexity_table, replay, run
from ringsum.ring_math import Modulus, SegmentMatrix, make_modulus, split_segments, sum_inputs
from ringsum.topology import SwapSchedule, Variant, constant_neighbor_pairs, neighbors_of, schedule

__all__ = [
    "CoalitionView",
    "LeakageVerdict",
    "Modulus",
    "RunResult",
    "SegmentMatrix",
    "SwapSchedule",
    "TraceEvent",
    "Variant",
    "brute_force_leakage",
    "complexity_table",
    "constant_neighbor_pairs",
    "decide_leakage",
    "extract_view",
    "make_modulus",
    "neighbors_of",
    "privacy_matrix",
    "replay",
    "run",
    "schedule",
    "split_segments",
    "sum_inputs",
]
