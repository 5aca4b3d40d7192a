"""Balanced supersaturation by induction on uniformity.

Each level: pass to a random r-partite subgraph, split it by codegree at the
threshold A, then either expand greedily inside the high-codegree core or
pick the heaviest dyadic bucket, recurse on its (r-1)-shadow and lift the
resulting copies back up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..cycles import DEFAULT_CAP, CycleCopy, linear_to_berge
from ..errors import TooSparse, ValidationError
from ..hypergraph import Hypergraph, make_rng, partite_reduction
from .base import graph_cycle_collection
from .bounds import BalanceBound, bound_kind, case2_cutoff, host_t, threshold_A, verify_balance
from .collection import CycleCollection
from .dichotomy import codegree_dichotomy_partition
from .expansion import SAMPLED_ABOVE_N, Exhaustive, Sampled, greedy_expand
from .extend import shadow_extend, shadow_graph

LINEAR_VARIANT = "linear"
BERGE_VARIANT = "berge"


@dataclass
class SupersatConfig:
    K: float = 0.1
    log_floor: float = 2.0
    divisor: float | None = None
    expansion_degree: str = "threshold"
    sample_count: int = 2000
    exhaustive_up_to: int = SAMPLED_ABOVE_N
    cap: int = DEFAULT_CAP
    partition_attempts: int = 64

    def case1_divisor(self, n: int, r: int) -> float:
        if self.divisor is not None:
            return self.divisor
        return max(math.log(n), self.log_floor) ** (r - 2)


@dataclass
class SupersatResult:
    collection: CycleCollection
    bound: BalanceBound
    trace: list[dict] = field(default_factory=list)

    def __iter__(self):
        return iter((self.collection, self.bound, self.trace))


def _lift(copies, src: Hypergraph, dst: Hypergraph) -> list[CycleCopy]:
    id_map = [dst.edge_id(e) for e in src.edges]
    return [c.remap(id_map) for c in copies]


def check_density(H: Hypergraph, ell: int, berge: bool, K: float) -> None:
    n, r = H.n, H.r
    if berge and r > 2:
        need = K * math.log(n) ** (r - 2) * n ** (1 + 1 / ell)
    elif r == 2:
        need = K * n ** (1 + 1 / ell)
    else:
        need = K * n ** (r - 1)
    if len(H) < need:
        raise TooSparse(f"{len(H)} edges is below the required {need:.2f}")


def _level(H: Hypergraph, ell: int, berge: bool, cfg: SupersatConfig, seed: int,
           trace: list[dict], depth: int) -> CycleCollection:
    r, n = H.r, H.n
    rec: dict = {"depth": depth, "r": r, "n": n, "edges": len(H)}
    trace.append(rec)
    if r == 2:
        S = graph_cycle_collection(H, ell, cap=cfg.cap)
        rec.update(case="base", size=len(S))
        return S
    if len(H) == 0:
        rec.update(case="empty", size=0)
        return CycleCollection(H, [])
    rng = make_rng(seed)
    t = host_t(len(H), n, r, ell, berge)
    Hp, P, attempts = partite_reduction(H, int(rng.integers(2**62)), cfg.partition_attempts)
    A = threshold_A(r, ell, t, n, berge)
    out = codegree_dichotomy_partition(Hp, P, A)
    divisor = cfg.case1_divisor(n, r)
    rec.update(t=t, A=A, partite_edges=len(Hp), partition_attempts=attempts,
               core_edges=len(out.core_ids), divisor=divisor,
               buckets=out.bucket_sizes())
    if out.core_ids and len(out.core_ids) >= len(Hp) / divisor:
        F = out.F
        if cfg.expansion_degree == "min_codegree":
            tg = min(len(v) for _, v in F.shadow(r - 1).items())
        elif cfg.expansion_degree == "threshold":
            tg = max(1, math.ceil(A))
        else:
            raise ValidationError(f"unknown expansion degree rule {cfg.expansion_degree!r}")
        mode = (Exhaustive(cfg.cap) if n <= cfg.exhaustive_up_to
                else Sampled(cfg.sample_count, int(rng.integers(2**62))))
        S = greedy_expand(F, tg, ell, mode, strict=False)
        copies = _lift(S.copies, F, H)
        if berge:
            copies = [linear_to_berge(c, r) for c in copies]
        rec.update(case="expansion", expansion_degree=tg,
                   mode="exhaustive" if isinstance(mode, Exhaustive) else "sampled",
                   size=len(copies))
        return CycleCollection(H, copies)
    cutoff = -math.inf if berge else case2_cutoff(r, t)
    eligible = [(k, ids) for k, ids in sorted(out.bucket_ids.items()) if 2 ** k[1] > cutoff]
    rec["cutoff"] = None if berge else cutoff
    if not eligible:
        rec.update(case="case2_exhausted", size=0)
        return CycleCollection(H, [])
    (tau, a), ids = max(eligible, key=lambda kv: len(kv[1]))
    Fp = Hp.subgraph(ids)
    G = shadow_graph(Fp, P.part_of, tau)
    rec.update(case="shadow", tau=list(tau), a=a, D=2**a, bucket_edges=len(ids),
               shadow_edges=len(G))
    Sp = _level(G, ell, berge, cfg, int(rng.integers(2**62)), trace, depth + 1)
    S = shadow_extend(Sp, Fp, distinct=not berge, cap=cfg.cap)
    rec["size"] = len(S)
    return CycleCollection(H, _lift(S.copies, Fp, H))


def balanced_supersat(
    H: Hypergraph,
    ell: int,
    variant: str = LINEAR_VARIANT,
    budget: SupersatConfig | None = None,
    seed: int = 0,
) -> SupersatResult:
    """A balanced collection of C^r_{2l} (or Berge 2l-cycle) copies in ``H``.

    The returned bound carries the fitted constant: the smallest c for which
    the collection meets the bound shape of its uniformity and variant.
    """
    if variant not in (LINEAR_VARIANT, BERGE_VARIANT):
        raise ValidationError(f"unknown variant {variant!r}")
    if ell < 2:
        raise ValidationError("cycle half-length must be >= 2")
    cfg = budget or SupersatConfig()
    berge = variant == BERGE_VARIANT
    check_density(H, ell, berge, cfg.K)
    trace: list[dict] = []
    S = _level(H, ell, berge, cfg, seed, trace, 0)
    t = host_t(len(H), H.n, H.r, ell, berge)
    bound = BalanceBound(bound_kind(H.r, berge), H.r, ell, H.n, t)
    report = verify_balance(S, bound)
    bound.c = report.implied_c
    trace.append({"summary": {"size": len(S), "profile": report.profile,
                              "implied_c": report.implied_c}})
    return SupersatResult(S, bound, trace)
