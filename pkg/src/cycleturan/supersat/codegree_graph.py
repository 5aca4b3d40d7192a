"""Near-regular auxiliary graphs on shadow neighbourhoods.

The graph on d vertices is the circulant with offsets 1..t//2. When t is odd
a matching is added: the antipodal one for even d, and for odd d a maximum
matching along the orbit of offset (d-1)/2, which leaves exactly one vertex
at degree t-1. When d == t the graph is complete (every degree is t-1).
"""

from __future__ import annotations

from typing import Sequence

from ..errors import TooFewVertices


def circulant_adjacent(i: int, j: int, d: int, t: int) -> bool:
    """Adjacency of positions i, j in the canonical degree-(t or t-1) graph on d vertices."""
    if i == j:
        return False
    if t >= d:
        return True
    diff = (j - i) % d
    delta = min(diff, d - diff)
    if delta <= t // 2:
        return True
    if t % 2 == 0:
        return False
    if d % 2 == 0:
        return delta == d // 2
    # odd t, odd d: offset m = (d-1)/2 has inverse -2 mod d; pair orbit slots (2q, 2q+1)
    ki = (-2 * i) % d
    kj = (-2 * j) % d
    lo, hi = min(ki, kj), max(ki, kj)
    return hi == lo + 1 and lo % 2 == 0 and hi <= d - 2


class CodegreeGraph:
    """Graph on a neighbourhood N(sigma) where every vertex has degree t or t-1."""

    def __init__(self, vertices: Sequence[int], t: int):
        self.vertices = tuple(vertices)
        self.t = t
        self.pos = {v: i for i, v in enumerate(self.vertices)}

    def __len__(self) -> int:
        return len(self.vertices)

    def adjacent(self, a: int, b: int) -> bool:
        return circulant_adjacent(self.pos[a], self.pos[b], len(self.vertices), self.t)

    def neighbours(self, a: int) -> list[int]:
        i = self.pos[a]
        d = len(self.vertices)
        return [v for j, v in enumerate(self.vertices) if circulant_adjacent(i, j, d, self.t)]

    def degree(self, a: int) -> int:
        return len(self.neighbours(a))

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in self.vertices]

    def edge_list(self) -> list[tuple[int, int]]:
        out = []
        for a in self.vertices:
            for b in self.neighbours(a):
                if self.pos[a] < self.pos[b]:
                    out.append((a, b))
        return out


def build_codegree_graph(neighbourhood: Sequence[int], t: int) -> CodegreeGraph:
    d = len(neighbourhood)
    if t <= 0:
        raise TooFewVertices(f"target degree must be positive, got {t}")
    if d < t:
        raise TooFewVertices(f"cannot reach degree {t} or {t - 1} on {d} vertices")
    return CodegreeGraph(neighbourhood, t)
