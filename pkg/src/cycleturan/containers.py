"""Hypergraph containers for cycle collections.

``container_step`` realizes one application of the container lemma by
include/exclude branching on the element of largest live degree. Along a
branch, X holds excluded ground elements and T included ones; a copy is
live while it misses X. Including an element forces out every element that
would complete a live copy. A branch closes once |X| >= ceil(eps * L), or
once no live copy remains; in that case X hits every copy, and the degree
hypothesis (Delta_1 <= e(S) / L) forces |X| >= L. Each closed branch yields
the container ground minus X, and every independent set follows exactly one
branch, which gives the covering property.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .cycles import CycleFamily, copy_edge_sets
from .errors import (
    BudgetExceeded,
    GroundTooLargeForVerification,
    HypothesisViolated,
    ValidationError,
)
from .hypergraph import Hypergraph, complete_hypergraph, make_rng
from .supersat.balanced import SupersatConfig, balanced_supersat
from .supersat.base import graph_cycle_collection
from .supersat.bounds import BalanceBound, bound_kind, host_t

DEFAULT_EPS = 0.1
VERIFY_LIMIT = 24

GRAPH_VARIANT = "graph"
LINEAR3 = "linear3"
LINEAR_GE4 = "linear_ge4"
BERGE_VARIANT = "berge"
VARIANTS = (GRAPH_VARIANT, LINEAR3, LINEAR_GE4, BERGE_VARIANT)


@dataclass
class ContainerFamily:
    ground: int
    containers: list[frozenset[int]]
    params: dict = field(default_factory=dict)
    depth: int = 0
    verification: str = "unverified"
    irreducible: int = 0
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.containers)

    def covers(self, subset: Iterable[int]) -> bool:
        s = frozenset(subset)
        return any(s <= c for c in self.containers)

    def min_omitted(self) -> int:
        return min((self.ground - len(c) for c in self.containers), default=0)

    def to_json(self) -> dict:
        use_bits = self.ground <= 64
        conts = [
            (sum(1 << i for i in c) if use_bits else sorted(c)) for c in self.containers
        ]
        return {
            "ground": self.ground,
            "encoding": "bitmask" if use_bits else "ids",
            "containers": conts,
            "params": self.params,
            "depth": self.depth,
            "verification": self.verification,
            "irreducible": self.irreducible,
            "truncated": self.truncated,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ContainerFamily":
        if obj["encoding"] == "bitmask":
            conts = [frozenset(i for i in range(obj["ground"]) if m >> i & 1) for m in obj["containers"]]
        else:
            conts = [frozenset(c) for c in obj["containers"]]
        return cls(obj["ground"], conts, obj["params"], obj["depth"], obj["verification"],
                   obj.get("irreducible", 0), obj.get("truncated", False))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _as_edge_sets(S) -> list[frozenset[int]]:
    seen = {}
    for c in S:
        seen.setdefault(frozenset(c.edge_ids) if hasattr(c, "edge_ids") else frozenset(c), None)
    return list(seen)


def check_container_hypothesis(copies: Sequence[frozenset[int]], ground: int, B: float, L: float) -> None:
    """Delta_j <= (B / v)^{j-1} e(S) / L for every j, else HypothesisViolated."""
    if not copies:
        raise HypothesisViolated("the collection has no copies", j=None, lhs=0, rhs=0)
    if B <= 0 or L <= 0:
        raise ValidationError("B and L must be positive")
    k = max(len(c) for c in copies)
    for j in range(1, k + 1):
        counts: dict[tuple[int, ...], int] = {}
        for c in copies:
            for sub in combinations(sorted(c), j):
                counts[sub] = counts.get(sub, 0) + 1
        lhs = max(counts.values(), default=0)
        rhs = (B / ground) ** (j - 1) * len(copies) / L
        if lhs > rhs * (1 + 1e-9):
            raise HypothesisViolated(
                f"Delta_{j} = {lhs} exceeds {rhs:.6g}", j=j, lhs=lhs, rhs=rhs
            )


def container_step(
    S,
    B: float,
    L: float,
    eps: float = DEFAULT_EPS,
    ground: int | None = None,
    verify: bool = True,
    max_nodes: int = 5_000_000,
) -> ContainerFamily:
    """One container step over the ground set of host edges."""
    if ground is None:
        ground = S.host_edge_count
    copies = _as_edge_sets(S)
    for c in copies:
        if not all(0 <= x < ground for x in c):
            raise ValidationError("a copy uses an element outside the ground set")
    check_container_hypothesis(copies, ground, B, L)
    need = max(1, math.ceil(eps * L))
    members: list[list[int]] = [[] for _ in range(ground)]
    for k, c in enumerate(copies):
        for x in c:
            members[x].append(k)
    csets = copies
    containers: dict[frozenset[int], None] = {}
    nodes = 0

    # state: T (included), X (excluded), dead[k] = copy k meets X
    def live_degrees(X: set[int], T: set[int]) -> list[int]:
        deg = [0] * ground
        for k, c in enumerate(csets):
            if c & X:
                continue
            for x in c:
                if x not in T and x not in X:
                    deg[x] += 1
        return deg

    stack: list[tuple[frozenset[int], frozenset[int]]] = [(frozenset(), frozenset())]
    while stack:
        nodes += 1
        if nodes > max_nodes:
            raise BudgetExceeded(f"container branching exceeded {max_nodes} nodes",
                                 partial=ContainerFamily(ground, list(containers), truncated=True))
        T, X = stack.pop()
        if len(X) >= need:
            containers.setdefault(frozenset(range(ground)) - X, None)
            continue
        Xs, Ts = set(X), set(T)
        live = [c for c in csets if not (c & Xs)]
        if any(c <= Ts for c in live):
            continue
        if not live:
            containers.setdefault(frozenset(range(ground)) - X, None)
            continue
        deg = live_degrees(Xs, Ts)
        u = max(range(ground), key=lambda x: (deg[x], -x))
        if deg[u] == 0:
            # every live copy sits inside T: handled above, so this is unreachable
            continue
        # include branch, with forced exclusions
        Ti = Ts | {u}
        forced = set()
        for c in live:
            rest = c - Ti
            if len(rest) == 1:
                forced |= rest
        stack.append((frozenset(Ti), frozenset(Xs | forced)))
        stack.append((T, frozenset(Xs | {u})))
    fam = ContainerFamily(
        ground,
        sorted(containers, key=lambda c: sorted(frozenset(range(ground)) - c)),
        params={"B": B, "L": L, "eps": eps, "required_omission": need,
                "count_bound_log": count_bound_log(ground, B, eps)},
        depth=1,
    )
    fam.params["achieved_eps"] = fam.min_omitted() / L
    if verify:
        if ground <= VERIFY_LIMIT:
            fam.verification = "passed" if verify_covering(fam, copies) else "failed"
        else:
            fam.verification = "skipped"
    return fam


def count_bound_log(v: int, B: float, eps: float) -> float:
    """log of the abstract bound exp(log(v/B) B / eps) on the family size."""
    return math.log(v / B) * B / eps if B > 0 else math.inf


def _masks(sets: Iterable[Iterable[int]]) -> list[int]:
    return [sum(1 << i for i in s) for s in sets]


def verify_covering(fam: ContainerFamily, copies: Sequence[Iterable[int]], chunk: int = 1 << 18) -> bool:
    """Exhaustively check that every copy-free subset lies in some container."""
    g = fam.ground
    if g > VERIFY_LIMIT:
        raise GroundTooLargeForVerification(f"ground of {g} elements exceeds {VERIFY_LIMIT}")
    cm = np.array(_masks(copies), dtype=np.int64)
    km = np.array(_masks(fam.containers), dtype=np.int64)
    full = (1 << g) - 1
    for start in range(0, 1 << g, chunk):
        arr = np.arange(start, min(start + chunk, 1 << g), dtype=np.int64)
        indep = np.ones(arr.shape, dtype=bool)
        for m in cm:
            indep &= (arr & m) != m
        sub = arr[indep]
        covered = np.zeros(sub.shape, dtype=bool)
        for m in km:
            covered |= (sub & (full ^ m)) == 0
            if covered.all():
                break
        if not covered.all():
            return False
    return True


def free_subsets(ground: int, copies: Sequence[Iterable[int]]) -> list[frozenset[int]]:
    """All copy-free subsets of a small ground set."""
    if ground > VERIFY_LIMIT:
        raise GroundTooLargeForVerification(f"ground of {ground} elements exceeds {VERIFY_LIMIT}")
    cm = _masks(copies)
    out = []
    for s in range(1 << ground):
        if all(s & m != m for m in cm):
            out.append(frozenset(i for i in range(ground) if s >> i & 1))
    return out


def sample_maximal_free(ground: int, copies: Sequence[Iterable[int]], samples: int, seed: int) -> list[int]:
    """Random maximal copy-free subsets (as bitmasks) by greedy insertion in random order."""
    cm = _masks(copies)
    by_elem: list[list[int]] = [[] for _ in range(ground)]
    for m in cm:
        for i in range(ground):
            if m >> i & 1:
                by_elem[i].append(m)
    rng = make_rng(seed)
    out = []
    for _ in range(samples):
        cur = 0
        for x in rng.permutation(ground):
            x = int(x)
            nxt = cur | (1 << x)
            if all(nxt & m != m for m in by_elem[x]):
                cur = nxt
        out.append(cur)
    return out


def sampled_covering_failures(fam: ContainerFamily, samples_masks: Sequence[int]) -> int:
    km = _masks(fam.containers)
    return sum(1 for s in samples_masks if not any(s & ~m == 0 for m in km))


# -- iteration -----------------------------------------------------------------

@dataclass
class IterationSchedule:
    t0: float
    ratio: float
    target: float
    ts: list[float]

    @property
    def m(self) -> int:
        return len(self.ts) - 1

    def to_json(self) -> dict:
        return {"t0": self.t0, "ratio": self.ratio, "target": self.target, "ts": self.ts, "m": self.m}


def schedule(
    n: int,
    r: int,
    ell: int,
    t_target: float,
    eps: float = DEFAULT_EPS,
    t0: float | None = None,
    ratio: float | None = None,
) -> IterationSchedule:
    """Geometric density schedule t_i = ratio^i t_0, stopping at the first t_m <= t_target."""
    if t_target <= 0:
        raise ValidationError("t_target must be positive")
    if t0 is None:
        t0 = math.comb(n, r) / n ** (r - 1)
    if ratio is None:
        ratio = math.exp(-eps / math.log(n) ** (r - 2))
    if not 0 < ratio < 1:
        raise ValidationError("ratio must lie in (0, 1)")
    ts = [t0]
    while ts[-1] > t_target * (1 + 1e-12):
        ts.append(ts[-1] * ratio)
    return IterationSchedule(t0, ratio, t_target, ts)


def _variant_info(variant: str, r: int) -> tuple[bool, str | None]:
    if variant not in VARIANTS:
        raise ValidationError(f"unknown container variant {variant!r}")
    if variant == GRAPH_VARIANT and r != 2:
        raise ValidationError("the graph variant needs r = 2")
    if variant == LINEAR3 and r != 3:
        raise ValidationError("the linear3 variant needs r = 3")
    if variant == LINEAR_GE4 and r < 4:
        raise ValidationError("the linear_ge4 variant needs r >= 4")
    if variant == BERGE_VARIANT and r < 3:
        raise ValidationError("the Berge variant needs r >= 3")
    return variant == BERGE_VARIANT, None


def collection_params(copies: Sequence[frozenset[int]], v: int, bound: BalanceBound) -> tuple[float, float]:
    """(B, L) with B = v * base and L the largest value meeting the step hypothesis."""
    base = bound.base
    k = max(len(c) for c in copies)
    worst = 0.0
    for j in range(1, k + 1):
        counts: dict[tuple[int, ...], int] = {}
        for c in copies:
            for sub in combinations(sorted(c), j):
                counts[sub] = counts.get(sub, 0) + 1
        worst = max(worst, max(counts.values()) / base ** (j - 1))
    return v * base, len(copies) / worst


def iterate_containers(
    n: int,
    r: int,
    ell: int,
    t_target: float,
    variant: str,
    eps: float = DEFAULT_EPS,
    seed: int = 0,
    max_containers: int = 200_000,
    supersat: SupersatConfig | None = None,
) -> ContainerFamily:
    """Containers for all family-free r-graphs on [n], starting from K^r_n."""
    berge, _ = _variant_info(variant, r)
    K = complete_hypergraph(n, r)
    ground = len(K)
    sched = schedule(n, r, ell, t_target, eps)
    params = {"variant": variant, "n": n, "r": r, "ell": ell, "eps": eps, "seed": seed,
              "schedule": sched.to_json()}
    family: list[frozenset[int]] = [frozenset(range(ground))]
    if sched.m == 0:
        return ContainerFamily(ground, family, params, 0, "not_applicable")
    rng = make_rng(seed)
    cfg = supersat or SupersatConfig(K=0.0)
    irreducible = 0
    steps = 0
    scale = n ** (r - 1)
    for i in range(sched.m):
        limit = max(sched.ts[i + 1], t_target) * scale
        nxt: list[frozenset[int]] = []
        queue = list(family)
        while queue:
            G = queue.pop()
            if len(G) <= limit:
                nxt.append(G)
                continue
            ids = sorted(G)
            sub = K.subgraph(ids)
            if variant == GRAPH_VARIANT:
                S = graph_cycle_collection(sub, ell)
            else:
                S = balanced_supersat(sub, ell, "berge" if berge else "linear", cfg,
                                      seed=int(rng.integers(2**62))).collection
            copies = _as_edge_sets(S)
            if not copies:
                irreducible += 1
                nxt.append(G)
                continue
            bound = BalanceBound(bound_kind(r, berge), r, ell, n,
                                 host_t(len(sub), n, r, ell, berge))
            B, L = collection_params(copies, len(sub), bound)
            step = container_step(copies, B, L, eps, ground=len(sub), verify=False)
            steps += 1
            for C in step.containers:
                queue.append(frozenset(ids[x] for x in C))
            if len(queue) + len(nxt) > max_containers:
                partial = ContainerFamily(ground, nxt + queue, params, i + 1, "unverified",
                                          irreducible, truncated=True)
                raise BudgetExceeded(f"more than {max_containers} containers", partial=partial)
        family = sorted(set(nxt), key=lambda c: (len(c), sorted(c)))
    params["steps"] = steps
    return ContainerFamily(ground, family, params, sched.m, "unverified", irreducible)
