"""Balanced supersaturation, containers and random Turán experiments for hypergraph cycles."""

from .containers import ContainerFamily, IterationSchedule, container_step, iterate_containers, schedule
from .cycles import (
    CycleCopy,
    CycleFamily,
    brute_force_oracle,
    count_cycles,
    enumerate_cycles,
    is_cycle_copy,
    is_family_free,
)
from .hypergraph import Hypergraph, complete_hypergraph, gen_gnrp, gen_with_edge_count, read_hg, write_hg
from .supersat import CycleCollection, balanced_supersat, greedy_expand, verify_balance
from .turan import (
    ExBound,
    construction_deletion,
    construction_star,
    construction_subsample,
    count_free_subgraphs,
    exact_random_turan,
    greedy_turan_lower,
)

__version__ = "0.1.0"

__all__ = [
    "ContainerFamily",
    "CycleCollection",
    "CycleCopy",
    "CycleFamily",
    "ExBound",
    "Hypergraph",
    "IterationSchedule",
    "balanced_supersat",
    "brute_force_oracle",
    "complete_hypergraph",
    "construction_deletion",
    "construction_star",
    "construction_subsample",
    "container_step",
    "count_cycles",
    "count_free_subgraphs",
    "enumerate_cycles",
    "exact_random_turan",
    "gen_gnrp",
    "gen_with_edge_count",
    "greedy_expand",
    "greedy_turan_lower",
    "is_cycle_copy",
    "is_family_free",
    "iterate_containers",
    "read_hg",
    "schedule",
    "verify_balance",
    "write_hg",
]
