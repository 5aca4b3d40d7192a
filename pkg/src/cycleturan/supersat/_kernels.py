"""Compiled counting of greedily reachable C^3_{2l} copies.

Copies are enumerated once each by their joint cycle J (J[0] minimal,
J[1] < J[L-1]) and the private vertex P[k] of the edge through J[k-1], J[k].
"""

from __future__ import annotations

import numpy as np
from numba import njit

from ..hypergraph import Hypergraph


def dense_tables_r3(F: Hypergraph):
    """(eid, pos, codeg, nbr) arrays indexed by vertex triples / pairs."""
    n = F.n
    eid = np.full((n, n, n), -1, dtype=np.int32)
    pos = np.full((n, n, n), -1, dtype=np.int32)
    codeg = np.zeros((n, n), dtype=np.int32)
    sh = F.shadow(2)
    maxd = max((len(v) for _, v in sh.items()), default=1)
    nbr = np.full((n, n, maxd), -1, dtype=np.int32)
    for i, (a, b, c) in enumerate(F.edges):
        for x, y, z in ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
            eid[x, y, z] = i
    for (a, b), ids in sh.items():
        codeg[a, b] = codeg[b, a] = len(ids)
        for k, e in enumerate(ids):
            (z,) = set(F.edges[e]) - {a, b}
            pos[a, b, z] = pos[b, a, z] = k
            nbr[a, b, k] = nbr[b, a, k] = z
    return eid, pos, codeg, nbr


@njit(cache=True)
def _adj(i, j, d, t):
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
    ki = (d - (2 * i) % d) % d
    kj = (d - (2 * j) % d) % d
    lo = min(ki, kj)
    hi = max(ki, kj)
    return hi == lo + 1 and lo % 2 == 0 and hi <= d - 2


def _orientation_tables(L: int):
    """Index maps (orientation, i) -> joint / private slot for every rotation and reflection."""
    widx = np.zeros((2 * L, L), dtype=np.int64)
    vidx = np.zeros((2 * L, L + 1), dtype=np.int64)
    for s in range(L):
        for i in range(L):
            widx[2 * s, i] = (s + i) % L
            widx[2 * s + 1, i] = (s - i - 1) % L
        for i in range(1, L + 1):
            vidx[2 * s, i] = (s + i) % L
            vidx[2 * s + 1, i] = (s - i) % L
    ell = L // 2
    kpos = np.zeros(L + 1, dtype=np.int64)
    for i in range(2, ell + 1):
        kpos[i] = 2 * (i - 1)
    kpos[ell + 1] = 2 * ell - 2
    for i in range(ell + 2, L + 1):
        kpos[i] = 2 * (L + 1 - i) - 1
    return widx, vidx, kpos


@njit(cache=True)
def _reachable(J, P, L, t, eid, pos, codeg, w, v, S, widx, vidx, kpos):
    ell = L // 2
    for o in range(2 * L):
        for i in range(L):
            w[i] = J[widx[o, i]]
        S[0] = P[vidx[o, 1]]
        S[1] = w[0]
        S[2] = w[1]
        for m in range(1, ell):
            S[2 * m + 1] = w[L - m]
            S[2 * m + 2] = w[m + 1]
        ok = True
        for k in range(1, L - 1):
            a = S[k]
            b = S[k + 1]
            c = S[k + 2]
            if eid[a, b, c] < 0 or not _adj(pos[a, b, S[k - 1]], pos[a, b, c], codeg[a, b], t):
                ok = False
                break
        if not ok:
            continue
        for i in range(2, L + 1):
            k = kpos[i]
            a = w[i - 1]
            b = w[i] if i < L else w[0]
            z = S[k]
            if z == a or z == b:
                z = S[k + 1]
                if z == a or z == b:
                    z = S[k + 2]
            if not _adj(pos[a, b, z], pos[a, b, P[vidx[o, i]]], codeg[a, b], t):
                ok = False
                break
        if ok:
            return True
    return False


@njit(cache=True)
def _count(n, L, t, eid, pos, codeg, nbr, m, widx, vidx, kpos):
    loads = np.zeros(m, dtype=np.int64)
    total = 0
    J = np.zeros(L, dtype=np.int64)
    P = np.zeros(L, dtype=np.int64)
    E = np.zeros(L, dtype=np.int64)
    cand = np.zeros(L + 1, dtype=np.int64)
    idx = np.zeros(L + 1, dtype=np.int64)
    used = np.zeros(n, dtype=np.bool_)
    w = np.zeros(L, dtype=np.int64)
    v = np.zeros(L + 1, dtype=np.int64)
    S = np.zeros(L + 1, dtype=np.int64)
    for j0 in range(n):
        J[0] = j0
        used[j0] = True
        level = 1
        cand[1] = j0 + 1
        while level >= 1:
            x = cand[level]
            if x >= n:
                level -= 1
                if level >= 1:
                    used[J[level]] = False
                continue
            cand[level] = x + 1
            if used[x] or codeg[J[level - 1], x] == 0:
                continue
            J[level] = x
            if level == L - 1:
                if J[1] < x and codeg[x, j0] > 0:
                    used[x] = True
                    total += _privates(J, P, E, idx, L, t, eid, pos, codeg, nbr, used, loads,
                                       w, v, S, widx, vidx, kpos)
                    used[x] = False
                continue
            used[x] = True
            level += 1
            cand[level] = j0 + 1
        used[j0] = False
    return total, loads


@njit(cache=True)
def _privates(J, P, E, idx, L, t, eid, pos, codeg, nbr, used, loads, w, v, S, widx, vidx, kpos):
    found = 0
    k = 0
    idx[0] = 0
    while k >= 0:
        a = J[k - 1] if k > 0 else J[L - 1]
        b = J[k]
        if idx[k] >= codeg[a, b]:
            k -= 1
            if k >= 0:
                used[P[k]] = False
            continue
        z = nbr[a, b, idx[k]]
        idx[k] += 1
        if used[z]:
            continue
        P[k] = z
        E[k] = eid[a, b, z]
        if k == L - 1:
            if _reachable(J, P, L, t, eid, pos, codeg, w, v, S, widx, vidx, kpos):
                found += 1
                for q in range(L):
                    loads[E[q]] += 1
            continue
        used[z] = True
        k += 1
        idx[k] = 0
    return found


def count_reachable_r3(n, L, t, eid, pos, codeg, nbr, m):
    widx, vidx, kpos = _orientation_tables(L)
    return _count(n, L, t, eid, pos, codeg, nbr, m, widx, vidx, kpos)
