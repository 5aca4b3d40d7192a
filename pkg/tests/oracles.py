"""Brute-force reference implementations, written from the definitions only.

Nothing here imports the search code under test; the only package import
is the Hypergraph container itself.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations, permutations


def codegrees(edges, k):
    out = Counter()
    for e in edges:
        for sigma in combinations(sorted(e), k):
            out[sigma] += 1
    return out


def _is_linear_order(sets):
    L = len(sets)
    for i in range(L):
        for j in range(i + 1, L):
            inter = len(sets[i] & sets[j])
            consecutive = j == i + 1 or (i == 0 and j == L - 1)
            if consecutive and inter != 1:
                return False
            if not consecutive and inter != 0:
                return False
    return True


def is_linear_cycle(edge_sets):
    """Some cyclic order of these edges forms a linear cycle."""
    sets = [set(e) for e in edge_sets]
    if len(sets) < 3:
        return False
    r = len(sets[0])
    if len(set().union(*sets)) != len(sets) * (r - 1):
        return False
    first, rest = sets[0], sets[1:]
    return any(_is_linear_order([first, *order]) for order in permutations(rest))


def linear_cycle_edge_sets(edges, length):
    """Edge-id sets of all linear cycles of the given length."""
    return {
        frozenset(ids)
        for ids in combinations(range(len(edges)), length)
        if is_linear_cycle([edges[i] for i in ids])
    }


def is_berge_cycle(edge_sets):
    """Some ordering e_1..e_k and distinct cores v_1..v_k with v_{i-1}, v_i in e_i."""
    k = len(edge_sets)
    sets = [set(e) for e in edge_sets]
    for order in permutations(range(k)):
        seq = [sets[i] for i in order]

        def extend(i, cores):
            if i == k:
                return cores[0] in seq[0] and len(set(cores)) == k
            cands = seq[i] & seq[(i + 1) % k]
            return any(v not in cores and extend(i + 1, cores + [v]) for v in cands)

        if extend(0, []):
            return True
    return False


def berge_cycle_edge_sets(edges, length):
    return {
        frozenset(ids)
        for ids in combinations(range(len(edges)), length)
        if is_berge_cycle([edges[i] for i in ids])
    }


def free_subsets(m, copies):
    masks = [sum(1 << i for i in c) for c in copies]
    for s in range(1 << m):
        if all(s & c != c for c in masks):
            yield s


def max_free(m, copies):
    return max(bin(s).count("1") for s in free_subsets(m, copies))


def count_free(m, copies, size):
    return sum(1 for s in free_subsets(m, copies) if bin(s).count("1") == size)


def m_r(edges, r):
    best = None
    for k in range(2, len(edges) + 1):
        for sub in combinations(edges, k):
            v = len(set().union(*map(set, sub)))
            if v > r:
                val = (k - 1) / (v - r)
                best = val if best is None else max(best, val)
    return best


def delta_profile(copy_edge_sets, j_max):
    out = []
    for j in range(1, j_max + 1):
        cnt = Counter()
        for c in copy_edge_sets:
            for sub in combinations(sorted(c), j):
                cnt[sub] += 1
        out.append(max(cnt.values(), default=0))
    return out
