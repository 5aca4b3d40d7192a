"""Lift cycle copies from an (r-1)-uniform shadow graph to the r-graph above it."""

from __future__ import annotations

from ..cycles import BERGE, LINEAR, CycleCopy, DEFAULT_CAP
from ..errors import DanglingShadow, Truncated, ValidationError
from ..hypergraph import Hypergraph
from .collection import CycleCollection


def _extensions(Fp: Hypergraph, G: Hypergraph, gid: int) -> list[tuple[int, int]]:
    """(new vertex, F' edge id) pairs over the shadow edge ``gid``."""
    g = G.edges[gid]
    gs = set(g)
    out = []
    for e in Fp.shadow(Fp.r - 1).neighbourhood(g):
        (x,) = set(Fp.edges[e]) - gs
        out.append((x, e))
    if not out:
        raise DanglingShadow(f"shadow edge {g} extends to no edge", shadow_edge=g)
    return out


def shadow_extend(
    Sp: CycleCollection,
    Fp: Hypergraph,
    distinct: bool = True,
    cap: int = DEFAULT_CAP,
) -> CycleCollection:
    """All extensions of every copy in ``Sp`` by one new vertex per edge.

    With ``distinct`` the new vertices are pairwise distinct and avoid the
    copy, so linear copies lift to linear copies. Without it only the lifted
    edges must differ, and the output is Berge (cores kept).
    """
    G = Sp.host
    if G.r != Fp.r - 1:
        raise ValidationError(f"shadow uniformity {G.r} does not sit under {Fp.r}")
    ext_cache: dict[int, list[tuple[int, int]]] = {}

    def ext(gid: int):
        if gid not in ext_cache:
            ext_cache[gid] = _extensions(Fp, G, gid)
        return ext_cache[gid]

    out: list[CycleCopy] = []
    rg = G.r
    for c in Sp.copies:
        opts = [ext(g) for g in c.edge_ids]
        L = len(opts)
        base_verts = set(c.witness) if c.kind == LINEAR else {v for g in c.edge_ids for v in G.edges[g]}
        chosen: list[tuple[int, int]] = []
        used_x: set[int] = set()
        used_e: set[int] = set()

        def emit():
            ids = tuple(e for _, e in chosen)
            if distinct and c.kind == LINEAR:
                wit = []
                for i in range(L):
                    block = c.witness[i * (rg - 1):(i + 1) * (rg - 1)]
                    wit.extend(block[:-1])
                    wit.append(chosen[i][0])
                    wit.append(block[-1])
                return CycleCopy(LINEAR, ids, tuple(wit))
            cores = c.witness if c.kind == BERGE else tuple(
                c.witness[(i + 1) * (rg - 1) - 1] for i in range(L)
            )
            return CycleCopy(BERGE, ids, tuple(cores))

        def dfs(i: int):
            if i == L:
                out.append(emit())
                if len(out) > cap:
                    raise Truncated(f"extension cap {cap} reached",
                                    partial=CycleCollection(Fp, out[:cap], truncated=True))
                return
            for x, e in opts[i]:
                if e in used_e:
                    continue
                if distinct and (x in used_x or x in base_verts):
                    continue
                chosen.append((x, e))
                used_x.add(x)
                used_e.add(e)
                dfs(i + 1)
                chosen.pop()
                used_e.discard(e)
                if not any(cx == x for cx, _ in chosen):
                    used_x.discard(x)

        dfs(0)
    return CycleCollection(Fp, out)


def shadow_graph(Fp: Hypergraph, parts_of, tau: tuple[int, ...]) -> Hypergraph:
    """The (r-1)-graph of all (r-1)-shadows of ``Fp`` lying in the parts ``tau``."""
    want = sorted(tau)
    edges = set()
    for e in Fp.edges:
        sub = tuple(v for v in e if parts_of(v) in want)
        if len(sub) == Fp.r - 1 and sorted(parts_of(v) for v in sub) == want:
            edges.add(sub)
    return Hypergraph(Fp.n, Fp.r - 1, sorted(edges))
