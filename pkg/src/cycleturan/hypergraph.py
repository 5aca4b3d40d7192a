"""Uniform hypergraphs on dense integer vertex sets.

A :class:`Hypergraph` is immutable once built. Edges are sorted vertex tuples
with stable ids ``0..e(H)-1``; shadow maps are built lazily and cached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadArity,
    BadShadowSize,
    DuplicateEdge,
    HgFormatError,
    PartitionRetryExhausted,
    TooLarge,
    TooManyEdges,
    Undefined,
    ValidationError,
    VertexOutOfRange,
)

Edge = tuple[int, ...]

DEFAULT_PARTITION_ATTEMPTS = 64
DEFAULT_DENSITY_CAP = 1 << 20


def make_rng(seed: int) -> np.random.Generator:
    """The project-wide generator: PCG64 keyed by a 64-bit seed."""
    return np.random.Generator(np.random.PCG64(int(seed) & 0xFFFFFFFFFFFFFFFF))


class ShadowMap:
    """k-subsets of edges mapped to the ids of the edges containing them."""

    def __init__(self, k: int, entries: dict[Edge, list[int]]):
        self.k = k
        self.entries = entries

    def codegree(self, sigma: Iterable[int]) -> int:
        return len(self.entries.get(tuple(sorted(sigma)), ()))

    def neighbourhood(self, sigma: Iterable[int]) -> list[int]:
        return self.entries.get(tuple(sorted(sigma)), [])

    def max_codegree(self) -> int:
        return max((len(v) for v in self.entries.values()), default=0)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def items(self):
        return self.entries.items()


class Hypergraph:
    """An r-uniform hypergraph on vertices ``0..n-1``."""

    __slots__ = ("n", "r", "edges", "edge_index", "_shadows", "_incidence")

    def __init__(self, n: int, r: int, edges: Iterable[Sequence[int]] = ()):
        if r < 2:
            raise ValidationError(f"uniformity must be >= 2, got {r}")
        if n < r:
            raise ValidationError(f"need n >= r, got n={n}, r={r}")
        canon: list[Edge] = []
        index: dict[Edge, int] = {}
        for raw in edges:
            e = tuple(sorted(int(v) for v in raw))
            if len(e) != r or len(set(e)) != r:
                raise BadArity(f"edge {tuple(raw)} does not have {r} distinct vertices")
            if e[0] < 0 or e[-1] >= n:
                raise VertexOutOfRange(f"edge {tuple(raw)} has a vertex outside [0, {n})")
            if e in index:
                raise DuplicateEdge(f"duplicate edge {e}")
            index[e] = len(canon)
            canon.append(e)
        self.n = n
        self.r = r
        self.edges: tuple[Edge, ...] = tuple(canon)
        self.edge_index = index
        self._shadows: dict[int, ShadowMap] = {}
        self._incidence: list[list[int]] | None = None

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n, self.r, self.edges) == (other.n, other.r, other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.r, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, r={self.r}, e={len(self.edges)})"

    def edge_id(self, edge: Iterable[int]) -> int | None:
        return self.edge_index.get(tuple(sorted(edge)))

    def has_edge(self, edge: Iterable[int]) -> bool:
        return tuple(sorted(edge)) in self.edge_index

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def incidence(self) -> list[list[int]]:
        """Vertex -> ids of incident edges (the 1-shadow, indexed by vertex)."""
        if self._incidence is None:
            inc: list[list[int]] = [[] for _ in range(self.n)]
            for i, e in enumerate(self.edges):
                for v in e:
                    inc[v].append(i)
            self._incidence = inc
        return self._incidence

    def degree(self, v: int) -> int:
        return len(self.incidence()[v])

    def shadow(self, k: int) -> ShadowMap:
        if not 1 <= k < self.r:
            raise BadShadowSize(f"shadow size must satisfy 1 <= k < r={self.r}, got {k}")
        cached = self._shadows.get(k)
        if cached is None:
            entries: dict[Edge, list[int]] = {}
            for i, e in enumerate(self.edges):
                for sigma in combinations(e, k):
                    entries.setdefault(sigma, []).append(i)
            cached = ShadowMap(k, entries)
            self._shadows[k] = cached
        return cached

    def subgraph(self, edge_ids: Iterable[int]) -> "Hypergraph":
        """Spanning subgraph on the given edges; new id i is the i-th smallest old id."""
        return Hypergraph(self.n, self.r, (self.edges[i] for i in sorted(set(edge_ids))))

    def with_edges(self, extra: Iterable[Sequence[int]]) -> "Hypergraph":
        return Hypergraph(self.n, self.r, list(self.edges) + [tuple(e) for e in extra])

    def vertices(self) -> set[int]:
        return {v for e in self.edges for v in e}

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        return Hypergraph(self.n, self.r, (tuple(perm[v] for v in e) for e in self.edges))


def new_hypergraph(n: int, r: int, edges: Iterable[Sequence[int]]) -> Hypergraph:
    return Hypergraph(n, r, edges)


def complete_hypergraph(n: int, r: int) -> Hypergraph:
    return Hypergraph(n, r, combinations(range(n), r))


def _check_probability(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"probability must lie in [0, 1], got {p}")


def gen_gnrp(n: int, r: int, p: float, seed: int) -> Hypergraph:
    """Binomial random r-graph G^r(n, p).

    One uniform variate is drawn per potential edge in lexicographic order and
    the edge kept iff it is below ``p``, so hosts with a common seed are nested
    in ``p``.
    """
    _check_probability(p)
    if n < r:
        raise ValidationError(f"need n >= r, got n={n}, r={r}")
    total = math.comb(n, r)
    u = make_rng(seed).random(total)
    keep = np.flatnonzero(u < p)
    if len(keep) == total:
        return complete_hypergraph(n, r)
    return Hypergraph(n, r, (_unrank_lex(int(i), n, r) for i in keep))


def _unrank_lex(rank: int, n: int, r: int) -> Edge:
    """The rank-th r-subset of range(n) in lexicographic order."""
    out = []
    x = 0
    for k in range(r, 0, -1):
        while True:
            c = math.comb(n - x - 1, k - 1)
            if rank < c:
                break
            rank -= c
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def gen_with_edge_count(n: int, r: int, m: int, seed: int) -> Hypergraph:
    """Exactly m distinct edges drawn uniformly without replacement."""
    if n < r:
        raise ValidationError(f"need n >= r, got n={n}, r={r}")
    total = math.comb(n, r)
    if m < 0:
        raise ValidationError(f"edge count must be non-negative, got {m}")
    if m > total:
        raise TooManyEdges(f"cannot place {m} edges among C({n},{r})={total}")
    picks = make_rng(seed).choice(total, size=m, replace=False)
    return Hypergraph(n, r, (_unrank_lex(int(i), n, r) for i in sorted(picks)))


def shadows(H: Hypergraph, k: int) -> ShadowMap:
    return H.shadow(k)


def max_codegree(H: Hypergraph, j: int) -> int:
    """Delta_j(H): the largest number of edges through a common j-set."""
    if j == H.r:
        return 1 if H.edges else 0
    return H.shadow(j).max_codegree()


@dataclass(frozen=True)
class Partition:
    parts: tuple[frozenset[int], ...]
    assignment: tuple[int, ...]

    @classmethod
    def from_assignment(cls, assignment: Sequence[int], r: int) -> "Partition":
        parts: list[set[int]] = [set() for _ in range(r)]
        for v, a in enumerate(assignment):
            if not 0 <= a < r:
                raise ValidationError(f"vertex {v} assigned to part {a} outside [0, {r})")
            parts[a].add(v)
        return cls(tuple(frozenset(p) for p in parts), tuple(int(a) for a in assignment))

    @classmethod
    def from_parts(cls, parts: Sequence[Iterable[int]], n: int) -> "Partition":
        assignment = [-1] * n
        for i, part in enumerate(parts):
            for v in part:
                if assignment[v] != -1:
                    raise ValidationError(f"vertex {v} appears in two parts")
                assignment[v] = i
        if -1 in assignment:
            raise ValidationError(f"vertex {assignment.index(-1)} is not covered")
        return cls(tuple(frozenset(p) for p in parts), tuple(assignment))

    def part_of(self, v: int) -> int:
        return self.assignment[v]


def random_r_partition(H: Hypergraph, seed: int) -> Partition:
    labels = make_rng(seed).integers(0, H.r, size=H.n)
    return Partition.from_assignment(labels.tolist(), H.r)


def is_transversal(edge: Sequence[int], P: Partition) -> bool:
    return len({P.assignment[v] for v in edge}) == len(edge)


def induced_partite_subgraph(H: Hypergraph, P: Partition) -> Hypergraph:
    """Edges meeting every part exactly once."""
    if len(P.assignment) != H.n:
        raise ValidationError("partition does not cover the vertex set")
    return Hypergraph(H.n, H.r, (e for e in H.edges if is_transversal(e, P)))


def partite_reduction(
    H: Hypergraph, seed: int, attempts: int = DEFAULT_PARTITION_ATTEMPTS
) -> tuple[Hypergraph, Partition, int]:
    """Sample random r-partitions until the transversal part keeps r!/r^r of the edges.

    Returns ``(H', P, attempts_used)``.
    """
    target = math.factorial(H.r) / H.r**H.r * len(H)
    rng = make_rng(seed)
    for attempt in range(1, attempts + 1):
        sub_seed = int(rng.integers(0, 2**63 - 1))
        P = random_r_partition(H, sub_seed)
        Hp = induced_partite_subgraph(H, P)
        if len(Hp) >= target:
            return Hp, P, attempt
    raise PartitionRetryExhausted(
        f"no partition kept >= {target:.2f} edges in {attempts} attempts"
    )


def m_r_density(H: Hypergraph, cap: int = DEFAULT_DENSITY_CAP) -> Fraction:
    """max (e(G)-1)/(v(G)-r) over subgraphs with e(G) >= 2 and v(G) > r."""
    m = len(H)
    if m < 2:
        raise Undefined("m_r needs at least two edges")
    if (1 << m) > cap:
        raise TooLarge(f"2^{m} edge subsets exceed the cap {cap}")
    remap = {v: i for i, v in enumerate(sorted(H.vertices()))}
    if len(remap) > 64:
        raise TooLarge("more than 64 non-isolated vertices")
    masks = np.array(
        [sum(1 << remap[v] for v in e) for e in H.edges], dtype=np.uint64
    )
    unions = np.zeros(1 << m, dtype=np.uint64)
    counts = np.zeros(1 << m, dtype=np.int64)
    for i in range(m):
        lo, hi = 1 << i, 1 << (i + 1)
        unions[lo:hi] = unions[:lo] | masks[i]
        counts[lo:hi] = counts[:lo] + 1
    verts = _popcount64(unions)
    ok = (counts >= 2) & (verts > H.r)
    pairs = set(zip(counts[ok].tolist(), verts[ok].tolist()))
    if not pairs:
        raise Undefined("no subgraph with e(G) >= 2 and v(G) > r")
    return max(Fraction(e - 1, v - H.r) for e, v in pairs)


def _popcount64(a: np.ndarray) -> np.ndarray:
    a = a.copy()
    out = np.zeros(a.shape, dtype=np.int64)
    for shift in range(0, 64, 8):
        out += _BYTE_POP[((a >> np.uint64(shift)) & np.uint64(0xFF)).astype(np.int64)]
    return out


_BYTE_POP = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


# -- .hg text format ----------------------------------------------------------

def format_hg(H: Hypergraph) -> str:
    lines = [f"{H.r} {H.n} {len(H)}"]
    lines.extend(" ".join(map(str, e)) for e in sorted(H.edges))
    return "\n".join(lines) + "\n"


def parse_hg(text: str) -> Hypergraph:
    rows = text.splitlines()
    if not rows:
        raise HgFormatError("empty file", line=1)
    head = rows[0].split()
    if len(head) != 3:
        raise HgFormatError("header must be 'r n m'", line=1)
    try:
        r, n, m = (int(x) for x in head)
    except ValueError:
        raise HgFormatError("header must hold three integers", line=1) from None
    if r < 2 or n < r or m < 0:
        raise HgFormatError(f"invalid header values r={r} n={n} m={m}", line=1)
    body = rows[1:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != m:
        raise HgFormatError(f"header announces {m} edges, found {len(body)}", line=len(rows))
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, row in enumerate(body, start=2):
        parts = row.split()
        try:
            verts = [int(x) for x in parts]
        except ValueError:
            raise HgFormatError(f"non-integer vertex id in {row!r}", line=lineno) from None
        if len(verts) != r or len(set(verts)) != r:
            raise HgFormatError(f"expected {r} distinct vertex ids", line=lineno)
        if min(verts) < 0 or max(verts) >= n:
            raise HgFormatError(f"vertex id outside [0, {n})", line=lineno)
        e = tuple(sorted(verts))
        if e in seen:
            raise HgFormatError(f"duplicate edge {e}", line=lineno)
        seen.add(e)
        edges.append(e)
    return Hypergraph(n, r, edges)


def read_hg(path) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse_hg(fh.read())


def write_hg(H: Hypergraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_hg(H))
