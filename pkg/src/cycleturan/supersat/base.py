"""Balanced C_{2l} collections in graphs, the r = 2 floor of the recursion.

Every copy is enumerated, then copies through over-represented j-sets are
discarded until Delta_j <= Delta_1 * base^{j-1} for all j, i.e. until the
profile has the shape of the graph-cycle bound with the constant set by j = 1.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations

from ..cycles import DEFAULT_CAP, CycleFamily, CycleSearcher
from ..errors import Truncated, ValidationError
from ..hypergraph import Hypergraph
from .bounds import GRAPH, BalanceBound
from .collection import CycleCollection


def _subset_counts(copies, L):
    counts = [Counter() for _ in range(L + 1)]
    for c in copies:
        ids = sorted(c.edge_ids)
        for j in range(1, L + 1):
            for sub in combinations(ids, j):
                counts[j][sub] += 1
    return counts


def graph_cycle_collection(
    G: Hypergraph, ell: int, cap: int = DEFAULT_CAP, max_rounds: int | None = None
) -> CycleCollection:
    if G.r != 2:
        raise ValidationError("the graph collector needs a 2-uniform host")
    L = 2 * ell
    copies = []
    for c in CycleSearcher(G).iter_copies(CycleFamily.linear(2, L), identity="edges"):
        copies.append(c)
        if len(copies) > cap:
            raise Truncated(f"copy cap {cap} reached",
                            partial=CycleCollection(G, copies[:cap], truncated=True))
    if not copies:
        return CycleCollection(G, [])
    t = len(G) / G.n ** (1 + 1 / ell)
    base = min(1.0, BalanceBound(GRAPH, 2, ell, G.n, t).base)
    if base >= 1.0:
        return CycleCollection(G, copies)
    counts = _subset_counts(copies, L)
    alive = dict(enumerate(copies))
    by_sub: dict[tuple[int, ...], list[int]] = {}
    for k, c in alive.items():
        ids = sorted(c.edge_ids)
        for j in range(2, L + 1):
            for sub in combinations(ids, j):
                by_sub.setdefault(sub, []).append(k)
    rounds = 0
    limit = max_rounds if max_rounds is not None else len(copies)
    while rounds < limit and alive:
        d1 = max(counts[1].values(), default=0)
        worst = None
        for j in range(2, L + 1):
            if not counts[j]:
                continue
            sub, dj = max(counts[j].items(), key=lambda kv: (kv[1], [-x for x in kv[0]]))
            if dj <= 1:
                # a single copy cannot be thinned without emptying the collection
                continue
            excess = dj / (d1 * base ** (j - 1))
            if excess > 1 + 1e-12 and (worst is None or excess > worst[0]):
                worst = (excess, sub)
        if worst is None:
            break
        victim = next(k for k in by_sub[worst[1]] if k in alive)
        c = alive.pop(victim)
        ids = sorted(c.edge_ids)
        for j in range(1, L + 1):
            for sub in combinations(ids, j):
                counts[j][sub] -= 1
                if counts[j][sub] == 0:
                    del counts[j][sub]
        rounds += 1
    return CycleCollection(G, list(alive.values()))
