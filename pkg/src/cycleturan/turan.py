"""Random Turán numbers at desk scale: exact search, greedy bounds, constructions.

The exact solver works on the copy hypergraph. Every distinct copy edge set
becomes a bitmask over host edges, and a free subgraph is an edge set that
contains no mask. Search branches on edges in decreasing copy-degree order.
Including an edge forces out every edge that would close a copy. A node is
cut when its bound cannot beat the incumbent. The bound is the number of
chosen plus undecided edges, minus a greedy packing of live copies that are
pairwise disjoint on their undecided parts; each such copy must lose one
undecided edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .cycles import CycleFamily, CycleSearcher, copy_edge_sets
from .errors import BudgetExceeded, TooLarge, TooManyCopies, ValidationError
from .hypergraph import Hypergraph, make_rng

DEFAULT_NODE_BUDGET = 2_000_000
DEFAULT_COPY_CAP = 200_000
DEFAULT_COUNT_CAP = 10**7


@dataclass(frozen=True)
class ExBound:
    lower: int
    upper: int
    nodes: int = 0
    witness: tuple[int, ...] = ()

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise BudgetExceeded(f"only the interval [{self.lower}, {self.upper}] is certified")
        return self.lower

    def to_json(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "nodes": self.nodes, "exact": self.exact,
                "witness": list(self.witness)}


def _copy_masks(H: Hypergraph, fam: CycleFamily, cap: int) -> list[int]:
    try:
        sets = copy_edge_sets(H, fam, cap=cap)
    except TooLarge as exc:
        raise TooManyCopies(f"more than {cap} copies in the host") from exc
    masks = sorted({sum(1 << i for i in s) for s in sets})
    # a copy containing another copy is redundant for freeness
    return [m for m in masks if not any(o != m and o & m == o for o in masks)]


def _popcount(x: int) -> int:
    return bin(x).count("1")


class _BranchAndBound:
    def __init__(self, m: int, masks: list[int], budget: int, incumbent: int):
        self.best_mask = 0
        self.m = m
        self.masks = masks
        self.by_elem: list[list[int]] = [[] for _ in range(m)]
        for c in masks:
            for i in range(m):
                if c >> i & 1:
                    self.by_elem[i].append(c)
        self.order = sorted(range(m), key=lambda i: (-len(self.by_elem[i]), i))
        self.budget = budget
        self.best = incumbent
        self.nodes = 0

    def bound(self, chosen: int, undecided: int) -> int:
        avail = chosen | undecided
        live = []
        for c in self.masks:
            if c & avail == c:
                live.append(c & undecided)
        live.sort(key=_popcount)
        used = 0
        packed = 0
        for part in live:
            if part & used == 0:
                packed += 1
                used |= part
        return _popcount(chosen) + _popcount(undecided) - packed

    def run(self) -> tuple[int, int]:
        """(best, certified upper bound); the bound equals best when the search completes."""
        full = (1 << self.m) - 1
        stack = [(0, full)]
        while stack:
            chosen, undecided = stack.pop()
            ub = self.bound(chosen, undecided)
            if ub <= self.best:
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                stack.append((chosen, undecided))
                upper = max(self.bound(c, u) for c, u in stack)
                return self.best, max(self.best, upper)
            if undecided == 0:
                self.best = _popcount(chosen)
                self.best_mask = chosen
                continue
            e = next(i for i in self.order if undecided >> i & 1)
            bit = 1 << e
            rest = undecided & ~bit
            stack.append((chosen, rest))
            new_chosen = chosen | bit
            forced = 0
            ok = True
            for c in self.by_elem[e]:
                if c & rest == 0 and c & new_chosen != c:
                    continue
                left = c & ~new_chosen
                if left == 0:
                    ok = False
                    break
                if _popcount(left) == 1:
                    forced |= left
            if ok:
                stack.append((new_chosen, rest & ~forced))
        return self.best, self.best


def exact_random_turan(
    H: Hypergraph,
    fam: CycleFamily,
    budget: int = DEFAULT_NODE_BUDGET,
    copy_cap: int = DEFAULT_COPY_CAP,
    seed: int = 0,
) -> ExBound:
    """Largest family-free edge subset of ``H``, or a certified interval when the budget runs out."""
    if fam.r != H.r:
        raise ValidationError(f"family uniformity {fam.r} != host uniformity {H.r}")
    masks = _copy_masks(H, fam, copy_cap)
    m = len(H)
    if not masks:
        return ExBound(m, m, 0, tuple(range(m)))
    start = greedy_free_subgraph(H, fam, seed, masks=masks)
    bb = _BranchAndBound(m, masks, budget, len(start))
    lo, hi = bb.run()
    if bb.best_mask:
        witness = tuple(i for i in range(m) if bb.best_mask >> i & 1)
    else:
        witness = tuple(start)
    return ExBound(lo, hi, bb.nodes, witness)


def greedy_turan_lower(H: Hypergraph, fam: CycleFamily, seed: int = 0, masks: Sequence[int] | None = None) -> int:
    """Size of a maximal family-free subgraph grown by random insertion."""
    return len(greedy_free_subgraph(H, fam, seed, masks))


def greedy_free_subgraph(
    H: Hypergraph,
    fam: CycleFamily,
    seed: int = 0,
    masks: Sequence[int] | None = None,
    start: Sequence[int] = (),
) -> list[int]:
    """Edge ids of a maximal family-free subgraph, inserted in a seeded random order.

    ``start`` (edge ids forming a free subgraph) is kept and completed.
    """
    base = set(start)
    order = sorted(base) + [int(i) for i in make_rng(seed).permutation(len(H)) if int(i) not in base]
    kept: list[int] = []
    if masks is not None:
        by_elem: list[list[int]] = [[] for _ in range(len(H))]
        for c in masks:
            for i in range(len(H)):
                if c >> i & 1:
                    by_elem[i].append(c)
        cur = 0
        for e in order:
            nxt = cur | (1 << e)
            if all(nxt & c != c for c in by_elem[e]):
                cur = nxt
                kept.append(e)
        return sorted(kept)
    searcher = CycleSearcher(H)
    active: set[int] = set()
    for e in order:
        if not searcher.closes_copy(fam, active, e):
            active.add(e)
            kept.append(e)
    return sorted(kept)


# -- constructions --------------------------------------------------------------

def construction_deletion(H: Hypergraph, fam: CycleFamily, cap: int = DEFAULT_COPY_CAP) -> Hypergraph:
    """Remove a greedy hitting set of all copies (max coverage first, lowest id on ties)."""
    try:
        sets = copy_edge_sets(H, fam, cap=cap)
    except TooLarge as exc:
        raise TooManyCopies(f"more than {cap} copies in the host") from exc
    if not sets:
        return H
    alive = set(range(len(sets)))
    cover: dict[int, set[int]] = {}
    for k, s in enumerate(sets):
        for e in s:
            cover.setdefault(e, set()).add(k)
    removed: set[int] = set()
    while alive:
        e = max(cover, key=lambda x: (len(cover[x]), -x))
        hit = cover.pop(e)
        removed.add(e)
        alive -= hit
        for k in hit:
            for f in sets[k]:
                if f != e and f in cover:
                    cover[f].discard(k)
        cover = {f: ks for f, ks in cover.items() if ks}
    return H.subgraph(i for i in range(len(H)) if i not in removed)


def construction_subsample(H: Hypergraph, p_prime: float, seed: int) -> Hypergraph:
    """Keep each edge independently with probability ``p_prime``."""
    if not 0.0 <= p_prime <= 1.0:
        raise ValidationError(f"probability must lie in [0, 1], got {p_prime}")
    u = make_rng(seed).random(len(H))
    return H.subgraph(i for i in range(len(H)) if u[i] < p_prime)


def construction_star(H: Hypergraph, v: int) -> Hypergraph:
    """All edges through ``v``."""
    if not 0 <= v < H.n:
        raise ValidationError(f"vertex {v} outside [0, {H.n})")
    return H.subgraph(i for i, e in enumerate(H.edges) if v in e)


def best_star(H: Hypergraph) -> Hypergraph:
    """The star at a vertex of maximum degree (lowest label on ties)."""
    deg = [0] * H.n
    for e in H.edges:
        for v in e:
            deg[v] += 1
    v = max(range(H.n), key=lambda x: (deg[x], -x))
    return construction_star(H, v)


def middle_range_p_prime(n: int, r: int, ell: int, p: float) -> float:
    """Thinning rate taking density p down to n^{-r+1+1/(2l-1)}, capped at 1."""
    if p <= 0:
        return 1.0
    return min(1.0, n ** (-r + 1 + 1 / (2 * ell - 1)) / p)


def construction_middle(
    H: Hypergraph, fam: CycleFamily, ell: int, p: float, seed: int, cap: int = DEFAULT_COPY_CAP
) -> Hypergraph:
    """Subsample down to the middle-range density, then delete an edge per copy."""
    thin = construction_subsample(H, middle_range_p_prime(H.n, H.r, ell, p), seed)
    return construction_deletion(thin, fam, cap)


# -- counting -------------------------------------------------------------------

def count_free_subgraphs(
    H: Hypergraph,
    fam: CycleFamily,
    m: int,
    cap: int = DEFAULT_COUNT_CAP,
    copy_cap: int = DEFAULT_COPY_CAP,
) -> int:
    """Number of family-free subgraphs of ``H`` with exactly ``m`` edges."""
    E = len(H)
    if m < 0 or m > E:
        return 0
    if math.comb(E, m) > cap:
        raise TooLarge(f"C({E}, {m}) = {math.comb(E, m)} exceeds the cap {cap}")
    masks = _copy_masks(H, fam, copy_cap)
    # copies indexed by their highest edge: checked once that edge is chosen
    by_top: list[list[int]] = [[] for _ in range(E)]
    for c in masks:
        by_top[c.bit_length() - 1].append(c)
    total = 0
    stack = [(0, 0, 0)]  # (next edge, chosen mask, chosen count)
    while stack:
        i, chosen, k = stack.pop()
        if k == m:
            total += 1
            continue
        if E - i < m - k:
            continue
        # skip edge i
        stack.append((i + 1, chosen, k))
        nxt = chosen | (1 << i)
        if all(nxt & c != c for c in by_top[i]):
            stack.append((i + 1, nxt, k + 1))
    return total
