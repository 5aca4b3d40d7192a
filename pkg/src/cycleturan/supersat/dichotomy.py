"""Codegree dichotomy: peel low-codegree shadows into dyadic buckets."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations

from ..errors import ValidationError
from ..hypergraph import Hypergraph, Partition, is_transversal


@dataclass(frozen=True)
class RemovalEvent:
    sigma: tuple[int, ...]
    codegree: int
    tau: tuple[int, ...]
    a: int
    edge_ids: tuple[int, ...]


@dataclass
class PartitionOutcome:
    host: Hypergraph
    partition: Partition
    A: float
    core_ids: list[int]
    bucket_ids: dict[tuple[tuple[int, ...], int], list[int]]
    events: list[RemovalEvent] = field(default_factory=list)

    @property
    def F(self) -> Hypergraph:
        return self.host.subgraph(self.core_ids)

    @property
    def buckets(self) -> dict[tuple[tuple[int, ...], int], Hypergraph]:
        return {k: self.host.subgraph(v) for k, v in self.bucket_ids.items()}

    def bucket_sizes(self) -> dict[str, int]:
        return {f"{list(k[0])}:{k[1]}": len(v) for k, v in sorted(self.bucket_ids.items())}


def codegree_dichotomy_partition(Hp: Hypergraph, P: Partition, A: float) -> PartitionOutcome:
    """Repeatedly strip N(sigma) for the lexicographically smallest (r-1)-shadow of codegree < A."""
    r = Hp.r
    for e in Hp.edges:
        if not is_transversal(e, P):
            raise ValidationError(f"edge {e} is not transversal to the partition")
    members: dict[tuple[int, ...], set[int]] = {}
    for i, e in enumerate(Hp.edges):
        for s in combinations(e, r - 1):
            members.setdefault(s, set()).add(i)
    heap = [s for s, ids in members.items() if len(ids) < A]
    heapq.heapify(heap)
    queued = set(heap)
    alive = [True] * len(Hp)
    events: list[RemovalEvent] = []
    buckets: dict[tuple[tuple[int, ...], int], list[int]] = {}
    while heap:
        sigma = heapq.heappop(heap)
        ids = members[sigma]
        if not ids:
            continue
        d = len(ids)
        tau = tuple(sorted(P.part_of(v) for v in sigma))
        a = d.bit_length() - 1
        removed = tuple(sorted(ids))
        events.append(RemovalEvent(sigma, d, tau, a, removed))
        buckets.setdefault((tau, a), []).extend(removed)
        for i in removed:
            alive[i] = False
            for s in combinations(Hp.edges[i], r - 1):
                m = members[s]
                m.discard(i)
                if len(m) < A and s not in queued:
                    queued.add(s)
                    heapq.heappush(heap, s)
    core = [i for i in range(len(Hp)) if alive[i]]
    for k in buckets:
        buckets[k].sort()
    return PartitionOutcome(Hp, P, A, core, buckets, events)
