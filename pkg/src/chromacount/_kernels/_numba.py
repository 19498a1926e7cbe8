"""Numba-compiled kernels (int64 arithmetic; callers guard overflow)."""
from __future__ import annotations

import numpy as np
from numba import njit

_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_PHI64 = np.uint64(0x9E3779B97F4A7C15)


@njit(cache=True, inline="always")
def _mix(x):
    x = (x ^ (x >> np.uint64(30))) * _MIX1
    x = (x ^ (x >> np.uint64(27))) * _MIX2
    return x ^ (x >> np.uint64(31))


@njit(cache=True, nogil=True)
def coloring_matrix(seed, istart, count, nv):
    out = np.empty((count, nv), dtype=np.int8)
    sm = _mix(np.uint64(seed))
    for i in range(count):
        key = _mix(sm ^ _mix(np.uint64(istart + i) * _PHI64))
        for v in range(nv):
            word = _mix(key + np.uint64(v + 1) * _PHI64)
            out[i, v] = 1 if word & np.uint64(1) else -1
    return out


@njit(cache=True, nogil=True)
def mono_counts(copies, colors):
    S = colors.shape[0]
    N = copies.shape[0]
    r = copies.shape[1]
    out = np.zeros(S, dtype=np.int64)
    for s in range(S):
        t = 0
        for j in range(N):
            c0 = colors[s, copies[j, 0]]
            ok = True
            for col in range(1, r):
                if colors[s, copies[j, col]] != c0:
                    ok = False
                    break
            if ok:
                t += 1
        out[s] = t
    return out


@njit(cache=True, nogil=True)
def tally_distribution(masks, nv, fixmask, fixval):
    n_copies = masks.shape[0]
    hist = np.zeros(n_copies + 1, dtype=np.int64)
    total = np.uint32(1) << np.uint32(nv)
    fm = np.uint32(fixmask)
    fv = np.uint32(fixval)
    x = np.uint32(0)
    while x < total:
        if (x & fm) == fv:
            t = 0
            for j in range(n_copies):
                m = masks[j]
                sub = x & m
                if sub == np.uint32(0) or sub == m:
                    t += 1
            hist[t] += 1
        x += np.uint32(1)
        if x == np.uint32(0):  # wrapped (nv == 32 not supported upstream)
            break
    return hist


@njit(cache=True, nogil=True)
def triangle_census(indptr, indices):
    nv = indptr.shape[0] - 1
    n_edges = 0
    for u in range(nv):
        for k in range(indptr[u], indptr[u + 1]):
            if indices[k] > u:
                n_edges += 1
    eu = np.empty(n_edges, dtype=np.int64)
    ev = np.empty(n_edges, dtype=np.int64)
    de = np.zeros(n_edges, dtype=np.int64)
    d_vertex = np.zeros(nv, dtype=np.int64)
    e = 0
    n_tri3 = 0
    for u in range(nv):
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if v <= u:
                continue
            # sorted adjacency intersection
            i = indptr[u]
            j = indptr[v]
            cnt = 0
            while i < indptr[u + 1] and j < indptr[v + 1]:
                a = indices[i]
                b = indices[j]
                if a == b:
                    cnt += 1
                    i += 1
                    j += 1
                elif a < b:
                    i += 1
                else:
                    j += 1
            eu[e] = u
            ev[e] = v
            de[e] = cnt
            e += 1
            n_tri3 += cnt
            d_vertex[u] += cnt
            d_vertex[v] += cnt
    return n_tri3 // 3, d_vertex // 2, eu, ev, de


@njit(cache=True, nogil=True)
def triangle_list(indptr, indices, n_triangles):
    out = np.empty((n_triangles, 3), dtype=np.int64)
    nv = indptr.shape[0] - 1
    t = 0
    for u in range(nv):
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if v <= u:
                continue
            i = indptr[u]
            j = indptr[v]
            while i < indptr[u + 1] and j < indptr[v + 1]:
                a = indices[i]
                b = indices[j]
                if a == b:
                    if a > v:
                        out[t, 0] = u
                        out[t, 1] = v
                        out[t, 2] = a
                        t += 1
                    i += 1
                    j += 1
                elif a < b:
                    i += 1
                else:
                    j += 1
    return out[:t]


@njit(cache=True, nogil=True)
def c4_weighted(indptr, indices, weights):
    nv = indptr.shape[0] - 1
    stamp = np.full(nv, -1, dtype=np.int64)
    wmark = np.zeros(nv, dtype=np.int64)
    count = np.int64(0)
    psum = np.int64(0)
    pisum = np.int64(0)
    for v0 in range(nv):
        for k in range(indptr[v0], indptr[v0 + 1]):
            if weights[k] > 0:
                stamp[indices[k]] = v0
                wmark[indices[k]] = weights[k]
        for k1 in range(indptr[v0], indptr[v0 + 1]):
            v1 = indices[k1]
            w01 = weights[k1]
            if v1 <= v0 or w01 <= 0:
                continue
            for k2 in range(indptr[v1], indptr[v1 + 1]):
                v2 = indices[k2]
                w12 = weights[k2]
                if v2 <= v0 or w12 <= 0:
                    continue
                for k3 in range(indptr[v2], indptr[v2 + 1]):
                    v3 = indices[k3]
                    w23 = weights[k3]
                    if v3 <= v1 or v3 == v2 or w23 <= 0:
                        continue
                    if stamp[v3] != v0:
                        continue
                    w30 = wmark[v3]
                    prod = w01 * w12 * w23 * w30
                    count += 1
                    psum += prod
                    pisum += prod * (w01 * w01 + w12 * w12 + w23 * w23 + w30 * w30)
    return count, psum, pisum


@njit(cache=True, nogil=True)
def c6_weighted(indptr, indices, weights):
    nv = indptr.shape[0] - 1
    count = np.int64(0)
    psum = np.int64(0)
    # per-v0 back-2 buckets keyed by v4, linked lists over a head array
    head = np.full(nv, -1, dtype=np.int64)
    touched = np.empty(nv, dtype=np.int64)
    max_deg = 0
    for v in range(nv):
        d = indptr[v + 1] - indptr[v]
        if d > max_deg:
            max_deg = d
    cap = max_deg * max_deg
    ent_next = np.empty(cap, dtype=np.int64)
    ent_v5 = np.empty(cap, dtype=np.int64)
    ent_w = np.empty(cap, dtype=np.int64)
    for v0 in range(nv):
        n_touched = 0
        n_ent = 0
        for k5 in range(indptr[v0], indptr[v0 + 1]):
            v5 = indices[k5]
            w50 = weights[k5]
            if v5 <= v0 or w50 <= 0:
                continue
            for k4 in range(indptr[v5], indptr[v5 + 1]):
                v4 = indices[k4]
                w45 = weights[k4]
                if v4 <= v0 or w45 <= 0:
                    continue
                if head[v4] == -1:
                    touched[n_touched] = v4
                    n_touched += 1
                ent_next[n_ent] = head[v4]
                ent_v5[n_ent] = v5
                ent_w[n_ent] = w45 * w50
                head[v4] = n_ent
                n_ent += 1
        if n_ent > 0:
            for k1 in range(indptr[v0], indptr[v0 + 1]):
                v1 = indices[k1]
                w01 = weights[k1]
                if v1 <= v0 or w01 <= 0:
                    continue
                for k2 in range(indptr[v1], indptr[v1 + 1]):
                    v2 = indices[k2]
                    w12 = weights[k2]
                    if v2 <= v0 or w12 <= 0:
                        continue
                    for k3 in range(indptr[v2], indptr[v2 + 1]):
                        v3 = indices[k3]
                        w23 = weights[k3]
                        if v3 <= v0 or v3 == v1 or v3 == v2 or w23 <= 0:
                            continue
                        w0123 = w01 * w12 * w23
                        for k4 in range(indptr[v3], indptr[v3 + 1]):
                            v4 = indices[k4]
                            w34 = weights[k4]
                            if v4 <= v0 or v4 == v1 or v4 == v2 or w34 <= 0:
                                continue
                            e = head[v4]
                            while e != -1:
                                v5 = ent_v5[e]
                                if v5 > v1 and v5 != v2 and v5 != v3:
                                    count += 1
                                    psum += w0123 * w34 * ent_w[e]
                                e = ent_next[e]
        for t in range(n_touched):
            head[touched[t]] = -1
    return count, psum
