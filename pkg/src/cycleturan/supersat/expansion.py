"""Greedy expansion of linear even cycles through auxiliary graphs.

Every step of the construction has the same shape: an ordered edge
(a_1, ..., a_r) is replaced by (a_2, ..., a_r, x), where the two edges must be
adjacent in the auxiliary graph on N({a_2, ..., a_r}) and x must be a vertex
not yet used. Phase (ii) is one long sliding window over

    v_{1,1}, ..., v_{1,r-2}, w_0, w_1, w_{2l-1}, w_2, w_{2l-2}, w_3, ...

whose consecutive windows are f_1, f_{2l}, f_2, f_{2l-1}, f_3, ..., f_l.
Phase (iii) slides over (pi, w_{i-1}, w_i, v_{i,1}, ..., v_{i,r-2}) where pi
orders the remaining vertices of f_i.

Three routes compute the collection: the literal search over all executions,
a filter that tests each copy of the host for reachability, and (r = 3) a
compiled counter returning |S| and per-edge loads without materializing S.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Sequence

import numpy as np

from ..cycles import CycleCopy, CycleFamily, LINEAR, CycleSearcher, DEFAULT_CAP
from ..errors import CodegreeTooSmall, Truncated, ValidationError
from ..hypergraph import Hypergraph, make_rng
from .codegree_graph import circulant_adjacent
from .collection import CycleCollection

SAMPLED_ABOVE_N = 15


@dataclass(frozen=True)
class Exhaustive:
    cap: int = DEFAULT_CAP


@dataclass(frozen=True)
class Sampled:
    count: int
    seed: int


def min_expansion_degree(r: int, ell: int) -> int:
    """The smallest t the expansion argument accepts, 4l(r-1)."""
    return 4 * ell * (r - 1)


class _Context:
    """Host plus lazily indexed auxiliary graphs keyed by sorted (r-1)-sets."""

    def __init__(self, F: Hypergraph, t: int):
        self.F = F
        self.r = F.r
        self.t = t
        self.shadow = F.shadow(F.r - 1)
        self._pos: dict[tuple[int, ...], dict[int, int]] = {}

    def _positions(self, sigma: tuple[int, ...]) -> dict[int, int]:
        p = self._pos.get(sigma)
        if p is None:
            p = {e: i for i, e in enumerate(self.shadow.neighbourhood(sigma))}
            self._pos[sigma] = p
        return p

    def edge(self, verts) -> int | None:
        return self.F.edge_id(verts)

    def adjacent(self, prev: Sequence[int], new: Sequence[int]) -> bool:
        """Whether window ``new`` = prev[1:] + (x,) is a legal slide from ``prev``."""
        a, b = self.edge(prev), self.edge(new)
        if a is None or b is None:
            return False
        sigma = tuple(sorted(new[:-1]))
        pos = self._positions(sigma)
        return circulant_adjacent(pos[a], pos[b], len(pos), self.t)

    def slides(self, window: Sequence[int], used: set[int]) -> list[int]:
        """New vertices x reachable from ``window`` by one slide."""
        sigma = tuple(sorted(window[1:]))
        nb = self.shadow.neighbourhood(sigma)
        pos = self._positions(sigma)
        i = pos[self.edge(window)]
        d = len(nb)
        sset = set(sigma)
        out = []
        for j, e in enumerate(nb):
            if circulant_adjacent(i, j, d, self.t):
                (x,) = set(self.F.edges[e]) - sset
                if x not in used:
                    out.append(x)
        return out


def check_expansion_preconditions(F: Hypergraph, t: int, ell: int, strict: bool = True) -> None:
    if ell < 2:
        raise ValidationError("cycle half-length must be >= 2")
    if F.r < 3:
        raise ValidationError("greedy expansion needs r >= 3")
    if t <= 0:
        raise CodegreeTooSmall(f"t must be positive, got {t}")
    floor = min_expansion_degree(F.r, ell)
    if strict and t < floor:
        raise CodegreeTooSmall(f"t={t} is below the expansion floor {floor}")
    for sigma, ids in F.shadow(F.r - 1).items():
        if len(ids) < t:
            raise CodegreeTooSmall(
                f"shadow {sigma} has codegree {len(ids)} < t={t}", sigma=sigma
            )


def _phase2_positions(r: int, ell: int) -> list[int]:
    """Window start index in the phase-(ii) sequence for each f_i (index i-1)."""
    L = 2 * ell
    k = [0] * (L + 1)
    k[1] = 0
    for i in range(2, ell + 1):
        k[i] = 2 * (i - 1)
    k[ell + 1] = 2 * ell - 2
    for i in range(ell + 2, L + 1):
        k[i] = 2 * (L + 1 - i) - 1
    return k[1:]


def _w_from_sequence(S: Sequence[int], r: int, ell: int) -> list[int]:
    """Recover w_0..w_{2l-1} from the phase-(ii) sequence."""
    L = 2 * ell
    w = [0] * L
    w[0], w[1] = S[r - 2], S[r - 1]
    for m in range(1, ell):
        w[L - m] = S[r + 2 * m - 2]
        w[m + 1] = S[r + 2 * m - 1]
    return w


def _make_copy(F: Hypergraph, r: int, w: list[int], interiors: list[Sequence[int]]) -> CycleCopy:
    L = len(w)
    witness: list[int] = []
    ids = []
    for i in range(1, L + 1):
        inner = list(interiors[i - 1])
        witness.extend(inner)
        witness.append(w[i % L])
        ids.append(F.edge_id(inner + [w[i - 1], w[i % L]]))
    return CycleCopy(LINEAR, tuple(ids), tuple(witness))


class _Runner:
    """The three-phase construction with a pluggable choice rule."""

    def __init__(self, ctx: _Context, ell: int):
        self.ctx = ctx
        self.r = ctx.r
        self.ell = ell
        self.L = 2 * ell
        self.kpos = _phase2_positions(self.r, ell)

    def phase2(self, S: list[int], used: set[int], choose) -> Iterator[list[int]]:
        if len(S) == self.r + self.L - 2:
            yield S
            return
        for x in choose(self.ctx.slides(S[-self.r:], used)):
            used.add(x)
            S.append(x)
            yield from self.phase2(S, used, choose)
            S.pop()
            used.discard(x)

    def phase3(self, i: int, S, w, inter, used, choose, choose_order) -> Iterator[list]:
        if i > self.L:
            yield inter
            return
        r = self.r
        k = self.kpos[i - 1]
        a, b = w[i - 1], w[i % self.L]
        others = [x for x in S[k:k + r] if x != a and x != b]
        for pi in choose_order(others):
            yield from self._slide_v(i, list(pi) + [a, b], [], S, w, inter, used, choose, choose_order)

    def _slide_v(self, i, T, vs, S, w, inter, used, choose, choose_order):
        r = self.r
        if len(vs) == r - 2:
            inter.append(tuple(vs))
            yield from self.phase3(i + 1, S, w, inter, used, choose, choose_order)
            inter.pop()
            return
        for x in choose(self.ctx.slides(T[-r:], used)):
            used.add(x)
            T.append(x)
            vs.append(x)
            yield from self._slide_v(i, T, vs, S, w, inter, used, choose, choose_order)
            vs.pop()
            T.pop()
            used.discard(x)

    def from_start(self, ordered: Sequence[int], choose, choose_order) -> Iterator[CycleCopy]:
        S = list(ordered)
        used = set(S)
        for S2 in self.phase2(S, used, choose):
            w = _w_from_sequence(S2, self.r, self.ell)
            inter0 = [tuple(S2[: self.r - 2])]
            for inter in self.phase3(2, S2, w, inter0, used, choose, choose_order):
                yield _make_copy(self.ctx.F, self.r, w, inter)


def _all(xs):
    return xs


def _all_orders(xs):
    return permutations(xs)


def greedy_expand(
    F: Hypergraph,
    t: int,
    ell: int,
    mode: Exhaustive | Sampled | None = None,
    strict: bool = True,
) -> CycleCollection:
    """Copies of C^r_{2l} produced by greedy expansion through the auxiliary graphs.

    ``strict=False`` skips only the t >= 4l(r-1) floor; the codegree
    precondition is always enforced.
    """
    check_expansion_preconditions(F, t, ell, strict)
    if mode is None:
        mode = Sampled(count=10_000, seed=0) if F.n > SAMPLED_ABOVE_N else Exhaustive()
    ctx = _Context(F, t)
    runner = _Runner(ctx, ell)
    seen: dict[frozenset, CycleCopy] = {}
    if isinstance(mode, Exhaustive):
        for e in F.edges:
            for ordered in permutations(e):
                for c in runner.from_start(ordered, _all, _all_orders):
                    key = frozenset(c.edge_ids)
                    if key not in seen:
                        seen[key] = c
                        if len(seen) >= mode.cap:
                            partial = CycleCollection(F, list(seen.values()), truncated=True)
                            raise Truncated(f"copy cap {mode.cap} reached", partial=partial)
        return CycleCollection(F, list(seen.values()))
    if not isinstance(mode, Sampled):
        raise ValidationError(f"unknown expansion mode {mode!r}")
    rng = make_rng(mode.seed)

    def pick(xs):
        xs = list(xs)
        return [xs[int(rng.integers(len(xs)))]] if xs else []

    def pick_order(xs):
        xs = list(xs)
        return [tuple(xs[i] for i in rng.permutation(len(xs)))]

    if len(F) == 0:
        return CycleCollection(F, [])
    for _ in range(mode.count):
        e = F.edges[int(rng.integers(len(F)))]
        ordered = tuple(e[i] for i in rng.permutation(F.r))
        for c in runner.from_start(ordered, pick, pick_order):
            seen.setdefault(frozenset(c.edge_ids), c)
            break
    return CycleCollection(F, list(seen.values()))


def _orientations(c: CycleCopy, r: int):
    """All (w_0..w_{L-1}, interiors of e_1..e_L) labelings of a linear copy."""
    L = len(c.edge_ids)
    wit = c.witness
    J = [wit[(k + 1) * (r - 1) - 1] for k in range(L)]
    P = [tuple(wit[k * (r - 1): (k + 1) * (r - 1) - 1]) for k in range(L)]
    for s in range(L):
        yield [J[(s + i) % L] for i in range(L)], [P[(s + i) % L] for i in range(1, L + 1)]
        yield [J[(s - i - 1) % L] for i in range(L)], [P[(s - i) % L] for i in range(1, L + 1)]


def _chain_ok(ctx: _Context, seq: Sequence[int], start: int = 0) -> bool:
    r = ctx.r
    for k in range(start + 1, len(seq) - r + 1):
        if not ctx.adjacent(seq[k - 1:k - 1 + r], seq[k:k + r]):
            return False
    return True


def is_greedy_reachable(F: Hypergraph, t: int, c: CycleCopy, ell: int, _ctx: _Context | None = None) -> bool:
    """Whether some execution of the expansion emits the copy ``c``."""
    ctx = _ctx or _Context(F, t)
    r, L = F.r, 2 * ell
    kpos = _phase2_positions(r, ell)
    for w, inter in _orientations(c, r):
        for v1 in permutations(inter[0]):
            S = list(v1) + [w[0], w[1]]
            for m in range(1, ell):
                S += [w[L - m], w[m + 1]]
            if not _chain_ok(ctx, S):
                continue
            ok = True
            for i in range(2, L + 1):
                k = kpos[i - 1]
                a, b = w[i - 1], w[i % L]
                others = [x for x in S[k:k + r] if x != a and x != b]
                if not any(
                    _chain_ok(ctx, list(pi) + [a, b] + list(rho))
                    for pi in permutations(others)
                    for rho in permutations(inter[i - 1])
                ):
                    ok = False
                    break
            if ok:
                return True
    return False


def reachable_copies(F: Hypergraph, t: int, ell: int, strict: bool = True) -> CycleCollection:
    """The exhaustive collection computed by filtering every copy of the host."""
    check_expansion_preconditions(F, t, ell, strict)
    ctx = _Context(F, t)
    fam = CycleFamily.linear(F.r, 2 * ell)
    out = [
        c
        for c in CycleSearcher(F).iter_copies(fam, identity="edges")
        if is_greedy_reachable(F, t, c, ell, ctx)
    ]
    return CycleCollection(F, out)


@dataclass(frozen=True)
class ExpansionCount:
    size: int
    per_edge: np.ndarray

    @property
    def delta1(self) -> int:
        return int(self.per_edge.max()) if self.per_edge.size else 0


def count_greedy_expansion(F: Hypergraph, t: int, ell: int, strict: bool = True) -> ExpansionCount:
    """|S| and per-edge loads of the exhaustive collection, without materializing it.

    Uses a compiled kernel for r = 3; other uniformities fall back to the
    reachability filter.
    """
    check_expansion_preconditions(F, t, ell, strict)
    if F.r != 3:
        S = reachable_copies(F, t, ell, strict=False)
        loads = np.zeros(len(F), dtype=np.int64)
        for c in S:
            for e in c.edge_ids:
                loads[e] += 1
        return ExpansionCount(len(S), loads)
    from ._kernels import count_reachable_r3, dense_tables_r3

    tables = dense_tables_r3(F)
    total, loads = count_reachable_r3(F.n, 2 * ell, t, *tables, len(F))
    return ExpansionCount(int(total), loads)
