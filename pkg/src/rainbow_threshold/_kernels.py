"""Compiled kernel for the all-pairs dangerous-pair scan.

Mirrors ``colouring.independent_rainbow_packing`` exactly (lexicographic
enumeration truncated at ``limit``, greedy acceptance stopping at ``cap``)
over CSR arrays with sorted rows. The pure-Python path is the reference;
tests assert the two agree.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _edge_pos(indptr, indices, x, y):
    lo = indptr[x]
    hi = indptr[x + 1]
    while lo < hi:
        mid = (lo + hi) // 2
        w = indices[mid]
        if w == y:
            return mid
        if w < y:
            lo = mid + 1
        else:
            hi = mid
    return -1


@njit(cache=True)
def _pair_packing(indptr, indices, colour_at, u, v, r, cap, limit, taken, stamp):
    """Greedy packing size for one pair; ``taken[w] == stamp`` marks used inner vertices."""
    if r == 1:
        return 1 if _edge_pos(indptr, indices, u, v) >= 0 else 0
    path = np.empty(r + 1, dtype=np.int64)
    ptr = np.empty(r + 1, dtype=np.int64)
    masks = np.empty(r + 1, dtype=np.int64)
    path[0] = u
    ptr[0] = indptr[u]
    masks[0] = 0
    depth = 0
    found = 0
    accepted = 0
    while depth >= 0:
        x = path[depth]
        if ptr[depth] >= indptr[x + 1]:
            depth -= 1
            continue
        pos = ptr[depth]
        ptr[depth] += 1
        w = indices[pos]
        if w == v:
            continue
        on_path = False
        for i in range(depth + 1):
            if path[i] == w:
                on_path = True
                break
        if on_path:
            continue
        bit = np.int64(1) << colour_at[pos]
        if masks[depth] & bit:
            continue
        mask = masks[depth] | bit
        if depth + 2 == r:
            q = _edge_pos(indptr, indices, w, v)
            if q < 0 or mask & (np.int64(1) << colour_at[q]):
                continue
            found += 1
            ok = True
            for i in range(1, depth + 1):
                if taken[path[i]] == stamp:
                    ok = False
                    break
            if ok and taken[w] == stamp:
                ok = False
            if ok:
                for i in range(1, depth + 1):
                    taken[path[i]] = stamp
                taken[w] = stamp
                accepted += 1
                if accepted >= cap:
                    return accepted
            if limit > 0 and found >= limit:
                return accepted
            continue
        depth += 1
        path[depth] = w
        ptr[depth] = indptr[w]
        masks[depth] = mask
    return accepted


@njit(cache=True)
def packing_sizes(indptr, indices, colour_at, n, r, cap, limit):
    """Greedy packing size for every pair ``u < v`` (upper triangle of an n x n array)."""
    out = np.zeros((n, n), dtype=np.int64)
    taken = np.zeros(n, dtype=np.int64)
    stamp = 0
    for u in range(n):
        for v in range(u + 1, n):
            stamp += 1
            out[u, v] = _pair_packing(indptr, indices, colour_at, u, v, r, cap, limit, taken, stamp)
    return out


def all_pairs_packing(c, r: int, cap: int, limit: int | None) -> np.ndarray:
    """Greedy independent rainbow r-path packing sizes for all pairs of ``c.graph``."""
    indptr, indices, eids = c.graph.csr()
    colour_at = np.ascontiguousarray(c.colours[eids]) if len(eids) else np.zeros(0, np.int64)
    return packing_sizes(indptr, indices, colour_at, c.graph.n, r, cap, 0 if limit is None else limit)
