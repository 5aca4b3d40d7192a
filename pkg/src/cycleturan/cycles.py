"""Linear and Berge cycles in uniform hypergraphs.

Linear copies are identified by their edge-id set. Berge copies are
identified by edge-id set plus the cyclic class (rotation/reflection) of the
core vertex sequence, unless ``identity="edges"`` collapses them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, Literal, Sequence

from .errors import TooLarge, UnknownEdgeId, ValidationError
from .hypergraph import Hypergraph

LINEAR = "linear"
BERGE = "berge"
BERGE_UPTO = "berge_upto"

Kind = Literal["linear", "berge", "berge_upto"]
Identity = Literal["witness", "edges"]

DEFAULT_CAP = 10**7
DEFAULT_ORACLE_CAP = 2_000_000


@dataclass(frozen=True)
class CycleFamily:
    kind: str
    r: int
    length: int

    def __post_init__(self):
        if self.kind not in (LINEAR, BERGE, BERGE_UPTO):
            raise ValidationError(f"unknown cycle family kind {self.kind!r}")
        if self.r < 2:
            raise ValidationError("uniformity must be >= 2")
        if self.kind == LINEAR and self.length < 3:
            raise ValidationError("linear cycles need length >= 3")
        if self.kind != LINEAR and self.length < 2:
            raise ValidationError("Berge cycles need length >= 2")

    def lengths(self) -> list[int]:
        if self.kind == BERGE_UPTO:
            return list(range(2, self.length + 1))
        return [self.length]

    @property
    def copy_kind(self) -> str:
        return LINEAR if self.kind == LINEAR else BERGE

    def to_json(self) -> dict:
        return {"kind": self.kind, "r": self.r, "length": self.length}

    @classmethod
    def linear(cls, r: int, length: int) -> "CycleFamily":
        return cls(LINEAR, r, length)

    @classmethod
    def berge(cls, r: int, length: int) -> "CycleFamily":
        return cls(BERGE, r, length)


@dataclass(frozen=True)
class CycleCopy:
    """One copy of a cycle in a host.

    For linear copies ``witness`` is the full vertex sequence v_1..v_{L(r-1)}
    with e_i = {v_{(i-1)(r-1)}, ..., v_{i(r-1)}} and v_0 = v_{L(r-1)}. For
    Berge copies it is the core sequence v_1..v_k with v_{i-1}, v_i in e_i.
    """

    kind: str
    edge_ids: tuple[int, ...]
    witness: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edge_ids)

    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edge_ids)

    def key(self, identity: Identity = "witness"):
        if self.kind == LINEAR or identity == "edges":
            return frozenset(self.edge_ids)
        return (frozenset(self.edge_ids), canonical_cycle(self.witness))

    def to_json(self) -> dict:
        return {"kind": self.kind, "edge_ids": list(self.edge_ids), "witness": list(self.witness)}

    @classmethod
    def from_json(cls, obj: dict) -> "CycleCopy":
        return cls(obj["kind"], tuple(obj["edge_ids"]), tuple(obj["witness"]))

    def remap(self, id_map: Sequence[int]) -> "CycleCopy":
        return CycleCopy(self.kind, tuple(id_map[i] for i in self.edge_ids), self.witness)


def canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Rotation/reflection-invariant form of a cyclic sequence."""
    k = len(seq)
    best = None
    for s in (list(seq), list(reversed(seq))):
        for i in range(k):
            cand = tuple(s[i:] + s[:i])
            if best is None or cand < best:
                best = cand
    return best


def linear_joints(c: CycleCopy, r: int) -> tuple[int, ...]:
    """The joint vertices v_{r-1}, v_{2(r-1)}, ..., v_{L(r-1)} of a linear copy."""
    return tuple(c.witness[i * (r - 1) - 1] for i in range(1, c.length + 1))


def linear_to_berge(c: CycleCopy, r: int) -> CycleCopy:
    return CycleCopy(BERGE, c.edge_ids, linear_joints(c, r))


def _check_ids(H: Hypergraph, ids: Sequence[int]) -> None:
    for i in ids:
        if not 0 <= i < len(H.edges):
            raise UnknownEdgeId(f"edge id {i} not in host with {len(H.edges)} edges")


def is_cycle_copy(H: Hypergraph, c: CycleCopy) -> bool:
    _check_ids(H, c.edge_ids)
    L = len(c.edge_ids)
    if len(set(c.edge_ids)) != L:
        return False
    if c.kind == LINEAR:
        r = H.r
        w = c.witness
        if L < 3 or len(w) != L * (r - 1) or len(set(w)) != len(w):
            return False
        top = L * (r - 1)

        def v(k: int) -> int:
            return w[top - 1] if k == 0 else w[k - 1]

        for i in range(1, L + 1):
            block = {v(k) for k in range((i - 1) * (r - 1), i * (r - 1) + 1)}
            if block != set(H.edges[c.edge_ids[i - 1]]):
                return False
        return True
    if c.kind == BERGE:
        w = c.witness
        if L < 2 or len(w) != L or len(set(w)) != L:
            return False
        for i in range(L):
            e = H.edges[c.edge_ids[i]]
            if w[i - 1] not in e or w[i] not in e:
                return False
        return True
    return False


@dataclass
class Enumeration:
    copies: list[CycleCopy] = field(default_factory=list)
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.copies)

    def __iter__(self) -> Iterator[CycleCopy]:
        return iter(self.copies)

    def __getitem__(self, i):
        return self.copies[i]


class CycleSearcher:
    """Backtracking search for cycle copies over a subset of a host's edges.

    ``active`` is a collection of edge ids (or None for all edges). Branching
    walks the witness sequence through vertex incidence lists.
    """

    def __init__(self, H: Hypergraph):
        self.H = H
        self.r = H.r
        self.edges = H.edges
        self.inc = H.incidence()

    # -- linear -------------------------------------------------------------

    def _linear(self, L: int, active, root: int | None) -> Iterator[tuple[list[int], list[int]]]:
        """Yield (edge sequence, witness) pairs.

        Without a root each edge set is produced once: e_1 is the copy's
        minimum edge id and id(e_2) < id(e_L). With a root, every copy through
        the root edge is produced at least once (used for existence tests).
        """
        r = self.r
        edges = self.edges
        inc = self.inc
        is_active = (lambda i: True) if active is None else active.__contains__
        starts = range(len(edges)) if root is None else (root,)
        for s in starts:
            if root is None and not is_active(s):
                continue
            se = edges[s]
            for u in se:
                for x in se:
                    if x == u:
                        continue
                    interior = [v for v in se if v != u and v != x]
                    used = set(se)
                    seq = [s]
                    wit = interior + [x]
                    yield from self._linear_extend(L, s, u, x, used, seq, wit, is_active, root is None)

    def _linear_extend(self, L, s, u, x, used, seq, wit, is_active, canonical):
        edges = self.edges
        i = len(seq) + 1
        if i == L:
            for f in self.inc[x]:
                if f == s or (canonical and f < s) or not is_active(f):
                    continue
                fe = edges[f]
                if u not in fe:
                    continue
                if canonical and seq[1] > f:
                    continue
                if any(v in used and v != x and v != u for v in fe):
                    continue
                interior = [v for v in fe if v != x and v != u]
                yield seq + [f], wit + interior + [u]
            return
        for f in self.inc[x]:
            if f == s or (canonical and f < s) or not is_active(f):
                continue
            fe = edges[f]
            if any(v in used and v != x for v in fe):
                continue
            for y in fe:
                if y == x:
                    continue
                interior = [v for v in fe if v != x and v != y]
                used2 = used | set(fe)
                yield from self._linear_extend(
                    L, s, u, y, used2, seq + [f], wit + interior + [y], is_active, canonical
                )

    # -- Berge --------------------------------------------------------------

    def _berge(self, k: int, active, root: int | None) -> Iterator[tuple[list[int], list[int]]]:
        """Yield (edges e_1..e_k, cores c_0..c_{k-1}) with c_{i-1}, c_i in e_i.

        Without a root, c_0 is the minimum core and c_1 < c_{k-1}; duplicates
        of the same identity key can still occur and are removed by callers.
        """
        edges = self.edges
        inc = self.inc
        is_active = (lambda i: True) if active is None else active.__contains__
        if root is not None:
            re = edges[root]
            for a in re:
                for b in re:
                    if a == b:
                        continue
                    # root is e_1 with cores c_0 = a, c_1 = b
                    yield from self._berge_extend(k, [root], [a, b], {root}, is_active, False)
            return
        for c0 in range(self.H.n):
            for e1 in inc[c0]:
                if not is_active(e1):
                    continue
                for c1 in edges[e1]:
                    if c1 <= c0:
                        continue
                    yield from self._berge_extend(k, [e1], [c0, c1], {e1}, is_active, True)

    def _berge_extend(self, k, seq, cores, used_e, is_active, canonical):
        edges = self.edges
        prev = cores[-1]
        c0 = cores[0]
        if len(seq) == k - 1:
            for f in self.inc[prev]:
                if f in used_e or not is_active(f):
                    continue
                if c0 not in edges[f]:
                    continue
                if canonical and k >= 3 and cores[1] > cores[-1]:
                    continue
                yield seq + [f], list(cores)
            return
        for f in self.inc[prev]:
            if f in used_e or not is_active(f):
                continue
            for c in edges[f]:
                if c == prev or c in cores:
                    continue
                if canonical and c < c0:
                    continue
                yield from self._berge_extend(
                    k, seq + [f], cores + [c], used_e | {f}, is_active, canonical
                )

    # -- public -------------------------------------------------------------

    def iter_copies(
        self,
        fam: CycleFamily,
        active=None,
        identity: Identity = "witness",
        root: int | None = None,
    ) -> Iterator[CycleCopy]:
        """Distinct copies (under ``identity``) inside ``active``."""
        if fam.r != self.r:
            raise ValidationError(f"family uniformity {fam.r} != host uniformity {self.r}")
        for L in fam.lengths():
            if fam.kind == LINEAR:
                if root is None:
                    for seq, wit in self._linear(L, active, None):
                        yield CycleCopy(LINEAR, tuple(seq), tuple(wit))
                else:
                    seen = set()
                    for seq, wit in self._linear(L, active, root):
                        key = frozenset(seq)
                        if key not in seen:
                            seen.add(key)
                            yield CycleCopy(LINEAR, tuple(seq), tuple(wit))
            else:
                seen = set()
                for seq, cores in self._berge(L, active, root):
                    witness = tuple(cores[1:] + cores[:1])
                    c = CycleCopy(BERGE, tuple(seq), witness)
                    key = c.key(identity)
                    if key not in seen:
                        seen.add(key)
                        yield c

    def exists(self, fam: CycleFamily, active=None, root: int | None = None) -> bool:
        """True iff some copy lies in ``active`` (through ``root`` if given)."""
        if fam.r != self.r:
            raise ValidationError(f"family uniformity {fam.r} != host uniformity {self.r}")
        for L in fam.lengths():
            gen = self._linear(L, active, root) if fam.kind == LINEAR else self._berge(L, active, root)
            for _ in gen:
                return True
        return False

    def closes_copy(self, fam: CycleFamily, active, edge: int) -> bool:
        """Would adding ``edge`` to the edge set ``active`` create a copy through it?"""
        return self.exists(fam, _WithExtra(active, edge), root=edge)


class _WithExtra:
    __slots__ = ("base", "extra")

    def __init__(self, base, extra):
        self.base = base
        self.extra = extra

    def __contains__(self, i) -> bool:
        return i == self.extra or i in self.base


def enumerate_cycles(
    H: Hypergraph,
    fam: CycleFamily,
    cap: int = DEFAULT_CAP,
    identity: Identity = "witness",
) -> Enumeration:
    out = Enumeration()
    for c in CycleSearcher(H).iter_copies(fam, identity=identity):
        if len(out.copies) >= cap:
            out.truncated = True
            break
        out.copies.append(c)
    return out


def count_cycles(H: Hypergraph, fam: CycleFamily, identity: Identity = "witness") -> int:
    searcher = CycleSearcher(H)
    if fam.kind == LINEAR:
        return sum(sum(1 for _ in searcher._linear(L, None, None)) for L in fam.lengths())
    return sum(1 for _ in searcher.iter_copies(fam, identity=identity))


def is_family_free(H: Hypergraph, fam: CycleFamily, active=None) -> bool:
    return not CycleSearcher(H).exists(fam, active)


def copy_edge_sets(H: Hypergraph, fam: CycleFamily, cap: int = DEFAULT_CAP) -> list[frozenset[int]]:
    """Distinct edge sets of copies; raises TooLarge past ``cap``."""
    seen: set[frozenset[int]] = set()
    out: list[frozenset[int]] = []
    for c in CycleSearcher(H).iter_copies(fam, identity="edges"):
        key = frozenset(c.edge_ids)
        if key in seen:
            continue
        seen.add(key)
        out.append(key)
        if len(out) > cap:
            raise TooLarge(f"more than {cap} copies")
    return out


# -- brute-force oracle -------------------------------------------------------

def brute_force_oracle(
    H: Hypergraph,
    fam: CycleFamily,
    cap: int = DEFAULT_ORACLE_CAP,
    identity: Identity = "witness",
) -> list[CycleCopy]:
    """All copies found by testing every edge subset of the right size.

    Independent of :class:`CycleSearcher`: every cyclic ordering of each
    subset is tried directly against the definitions.
    """
    if fam.r != H.r:
        raise ValidationError(f"family uniformity {fam.r} != host uniformity {H.r}")
    m = len(H.edges)
    total = sum(math.comb(m, L) for L in fam.lengths())
    if total > cap:
        raise TooLarge(f"{total} edge subsets exceed the oracle cap {cap}")
    found: dict = {}
    for L in fam.lengths():
        for subset in combinations(range(m), L):
            if fam.kind == LINEAR:
                c = _oracle_linear(H, subset)
                if c is not None:
                    found.setdefault(c.key(), c)
            else:
                for c in _oracle_berge(H, subset):
                    found.setdefault(c.key(identity), c)
    return list(found.values())


def _oracle_linear(H: Hypergraph, subset: Sequence[int]) -> CycleCopy | None:
    r = H.r
    L = len(subset)
    sets = [set(H.edges[i]) for i in subset]
    allv = set().union(*sets)
    if len(allv) != L * (r - 1):
        return None
    first, rest = subset[0], subset[1:]
    for perm in permutations(rest):
        order = (first,) + perm
        es = [set(H.edges[i]) for i in order]
        ok = True
        for a in range(L):
            for b in range(a + 1, L):
                inter = len(es[a] & es[b])
                adjacent = b == a + 1 or (a == 0 and b == L - 1)
                if inter != (1 if adjacent else 0):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        joints = [next(iter(es[i] & es[(i + 1) % L])) for i in range(L)]
        wit: list[int] = []
        for i in range(L):
            interior = sorted(es[i] - {joints[i], joints[i - 1]})
            wit.extend(interior)
            wit.append(joints[i])
        return CycleCopy(LINEAR, tuple(order), tuple(wit))
    return None


def _oracle_berge(H: Hypergraph, subset: Sequence[int]) -> Iterable[CycleCopy]:
    k = len(subset)
    first, rest = subset[0], subset[1:]
    out = []
    for perm in permutations(rest):
        order = (first,) + perm
        es = [set(H.edges[i]) for i in order]
        # core i sits between e_i and e_{i+1}
        choices = [sorted(es[i] & es[(i + 1) % k]) for i in range(k)]
        if any(not c for c in choices):
            continue
        for cores in product(*choices):
            if len(set(cores)) != k:
                continue
            out.append(CycleCopy(BERGE, tuple(order), tuple(cores)))
    return out
