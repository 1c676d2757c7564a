"""Edge decompositions of cubic graphs into claws (K1,3), triangles (K3) and P4s.

Polynomial deciders for the tractable shape families, a complete exact
solver for the rest, and the SAT reductions (with witness lifting) that
make {K1,3, P4} and {K1,3, K3, P4} hard.
"""

from .exact import Outcome, SolverConfig, SolveResult, enumerate_decompositions, solve
from .graph import Edge, Graph, build_graph, edge, named_graph, random_cubic
from .matching import maximum_matching, perfect_matching, two_factor_cycles
from .model import FAMILIES, FULL, MarkedInstance, Part, Shape, verify, verify_marked
from .poly import decide_claw, decide_claw_triangle, decide_family, decide_k3p4, decide_p4
from .reductions import (
    CnfFormula,
    ReductionMap,
    SatMode,
    add_net,
    attach_cofish_all_marked,
    brute_sat,
    lift_over_cofish,
    lift_over_net,
    reduce_nae,
    reduce_one_in_three,
    saturate_nets,
    validate_for_reduction,
    witness_from_assignment,
)

__all__ = [
    "CnfFormula", "Edge", "FAMILIES", "FULL", "Graph", "MarkedInstance", "Outcome", "Part",
    "ReductionMap", "SatMode", "Shape", "SolveResult", "SolverConfig", "add_net",
    "attach_cofish_all_marked", "brute_sat", "build_graph", "decide_claw", "decide_claw_triangle",
    "decide_family", "decide_k3p4", "decide_p4", "edge", "enumerate_decompositions",
    "lift_over_cofish", "lift_over_net", "maximum_matching", "named_graph", "perfect_matching",
    "random_cubic", "reduce_nae", "reduce_one_in_three", "saturate_nets", "solve",
    "two_factor_cycles", "validate_for_reduction", "verify", "verify_marked", "witness_from_assignment",
]
