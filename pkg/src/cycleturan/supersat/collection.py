"""Collections of cycle copies viewed as hypergraphs on the host's edges."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from ..cycles import CycleCopy, is_cycle_copy
from ..errors import ValidationError
from ..hypergraph import Hypergraph


@dataclass
class CycleCollection:
    host: Hypergraph
    copies: list[CycleCopy] = field(default_factory=list)
    truncated: bool = False
    _profile: list[int] | None = field(default=None, repr=False, compare=False)

    @property
    def host_edge_count(self) -> int:
        return len(self.host)

    def __len__(self) -> int:
        return len(self.copies)

    def __iter__(self):
        return iter(self.copies)

    @property
    def copy_length(self) -> int:
        return max((c.length for c in self.copies), default=0)

    def edge_sets(self) -> list[frozenset[int]]:
        return [frozenset(c.edge_ids) for c in self.copies]

    def distinct_edge_sets(self) -> list[frozenset[int]]:
        seen = {}
        for c in self.copies:
            seen.setdefault(frozenset(c.edge_ids), None)
        return list(seen)

    def profile(self) -> list[int]:
        if self._profile is None:
            self._profile = delta_profile(self, self.copy_length)
        return self._profile

    def all_valid(self) -> bool:
        return all(is_cycle_copy(self.host, c) for c in self.copies)

    def write_jsonl(self, fh) -> None:
        for c in self.copies:
            fh.write(json.dumps(c.to_json(), sort_keys=True) + "\n")
        footer = {
            "summary": {
                "size": len(self.copies),
                "delta_profile": self.profile(),
                "host_edges": self.host_edge_count,
                "truncated": self.truncated,
            }
        }
        fh.write(json.dumps(footer, sort_keys=True) + "\n")


def delta_profile(S: CycleCollection | Iterable[CycleCopy], j_max: int) -> list[int]:
    """[Delta_1, ..., Delta_{j_max}] of a collection.

    Aggregates over the j-subsets of each copy's edge set only.
    """
    copies = S.copies if isinstance(S, CycleCollection) else list(S)
    if copies and j_max > max(c.length for c in copies):
        raise ValidationError(f"j_max={j_max} exceeds the copy length")
    out = []
    for j in range(1, j_max + 1):
        counts: Counter = Counter()
        for c in copies:
            for sub in combinations(sorted(set(c.edge_ids)), j):
                counts[sub] += 1
        out.append(max(counts.values(), default=0))
    return out
