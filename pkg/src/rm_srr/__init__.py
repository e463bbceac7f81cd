"""Reed-Muller recovery sets, recovery hypergraphs and service rate regions."""

from .exceptions import CapacityError, InternalCheckError, ValidationError
from .gf2 import BitMatrix, BitVector, rank, solve_combination
from .hypergraph import RecoveryHypergraph, build_hypergraph, induced_subgraph
from .lp import LinearProgram, feasibility, matching_number, solve_max, vertex_cover_number
from .recovery import (
    oracle_all_recovery_sets,
    second_smallest_recovery_sets,
    smallest_recovery_set,
)
from .rm import RmParams, generator_matrix, min_weight_codewords
from .srr import (
    achievability_allocation,
    lambda_max,
    membership,
    same_order_sum_bound,
    simplices,
    total_sum_bound,
)

__all__ = [
    "BitMatrix",
    "BitVector",
    "CapacityError",
    "InternalCheckError",
    "LinearProgram",
    "RecoveryHypergraph",
    "RmParams",
    "ValidationError",
    "achievability_allocation",
    "build_hypergraph",
    "feasibility",
    "generator_matrix",
    "induced_subgraph",
    "lambda_max",
    "matching_number",
    "membership",
    "min_weight_codewords",
    "oracle_all_recovery_sets",
    "rank",
    "same_order_sum_bound",
    "second_smallest_recovery_sets",
    "simplices",
    "smallest_recovery_set",
    "solve_combination",
    "solve_max",
    "total_sum_bound",
    "vertex_cover_number",
]
