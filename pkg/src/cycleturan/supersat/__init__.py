from .balanced import SupersatConfig, SupersatResult, balanced_supersat
from .base import graph_cycle_collection
from .bounds import (
    BalanceBound,
    BalanceReport,
    case2_cutoff,
    p0_p1_exponents,
    threshold_A,
    verify_balance,
)
from .codegree_graph import CodegreeGraph, build_codegree_graph, circulant_adjacent
from .collection import CycleCollection, delta_profile
from .dichotomy import PartitionOutcome, RemovalEvent, codegree_dichotomy_partition
from .expansion import (
    Exhaustive,
    Sampled,
    count_greedy_expansion,
    greedy_expand,
    is_greedy_reachable,
    reachable_copies,
)
from .extend import shadow_extend, shadow_graph

__all__ = [
    "BalanceBound",
    "BalanceReport",
    "CodegreeGraph",
    "CycleCollection",
    "Exhaustive",
    "PartitionOutcome",
    "RemovalEvent",
    "Sampled",
    "SupersatConfig",
    "SupersatResult",
    "balanced_supersat",
    "build_codegree_graph",
    "case2_cutoff",
    "circulant_adjacent",
    "codegree_dichotomy_partition",
    "count_greedy_expansion",
    "delta_profile",
    "graph_cycle_collection",
    "greedy_expand",
    "is_greedy_reachable",
    "p0_p1_exponents",
    "reachable_copies",
    "shadow_extend",
    "shadow_graph",
    "threshold_A",
    "verify_balance",
]
