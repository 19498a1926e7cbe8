"""Pure Python / numpy implementations of the hot kernels.

These are the reference semantics for the numba backend in ``_numba.py``.
Cycle sums use Python integers, so they are exact for arbitrarily large
influence values (the numba backend is int64-bounded and callers guard
against overflow before dispatching to it).
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_PHI64 = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """SplitMix64 finalizer; the counter-based mixing primitive."""
    x &= MASK64
    x = ((x ^ (x >> 30)) * _MIX1) & MASK64
    x = ((x ^ (x >> 27)) * _MIX2) & MASK64
    return x ^ (x >> 31)


def sample_key(seed: int, index: int) -> int:
    """Per-sample 64-bit key derived from (seed, sample index)."""
    return splitmix64(splitmix64(seed & MASK64) ^ splitmix64((index * _PHI64) & MASK64))


def counter_uniform(seed: int, i: int, j: int) -> float:
    """Deterministic uniform in [0,1) keyed by (seed, i, j)."""
    k = splitmix64(sample_key(seed, i) ^ splitmix64((j * _MIX1) & MASK64))
    return k / 2.0**64


def coloring_matrix(seed, istart, count, nv):
    """count x nv matrix of +-1 colors; row i uses counter (seed, istart+i)."""
    idx = np.arange(istart, istart + count, dtype=np.uint64)
    keys = _splitmix_np(
        _splitmix_np(np.uint64(seed & MASK64) * np.ones(count, dtype=np.uint64))
        ^ _splitmix_np(idx * np.uint64(_PHI64))
    )
    verts = (np.arange(1, nv + 1, dtype=np.uint64) * np.uint64(_PHI64))[None, :]
    words = _splitmix_np(keys[:, None] + verts)
    return np.where(words & np.uint64(1), np.int8(1), np.int8(-1))


def _splitmix_np(x):
    x = (x ^ (x >> np.uint64(30))) * np.uint64(_MIX1)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(_MIX2)
    return x ^ (x >> np.uint64(31))


def mono_counts(copies, colors):
    """Number of monochromatic copies per coloring row.

    copies: (N, r) int array of copy vertex ids; colors: (S, nv) +-1 matrix.
    """
    S = colors.shape[0]
    out = np.zeros(S, dtype=np.int64)
    if copies.shape[0] == 0:
        return out
    first = colors[:, copies[:, 0]]
    mono = np.ones((S, copies.shape[0]), dtype=bool)
    for col in range(1, copies.shape[1]):
        mono &= colors[:, copies[:, col]] == first
    np.sum(mono, axis=1, out=out)
    return out


def tally_distribution(masks, nv, fixmask, fixval):
    """Histogram of T over all colorings x with (x & fixmask) == fixval.

    Colorings are nv-bit integers (bit v set = vertex v colored +1); a copy
    with vertex mask m is monochromatic iff x&m in {0, m}.  Returns an int64
    array h with h[t] = number of admissible colorings where T = t.
    """
    n_copies = len(masks)
    hist = np.zeros(n_copies + 1, dtype=np.int64)
    total = 1 << nv
    masks_arr = np.asarray(masks, dtype=np.uint32)
    chunk = 1 << 16
    for lo in range(0, total, chunk):
        xs = np.arange(lo, min(lo + chunk, total), dtype=np.uint32)
        xs = xs[(xs & np.uint32(fixmask)) == np.uint32(fixval)]
        if xs.size == 0:
            continue
        t = np.zeros(xs.size, dtype=np.int64)
        for m in masks_arr:
            sub = xs & m
            t += (sub == 0) | (sub == m)
        hist += np.bincount(t, minlength=n_copies + 1)
    return hist


def triangle_census(indptr, indices):
    """(n_labeled_embeddings/6 analog) exact triangle counts per edge/vertex.

    Returns (n_triangles, d_vertex, eu, ev, d_edge) where (eu[i], ev[i]) runs
    over edges with eu < ev and d_edge[i] is the number of triangles through
    that edge.
    """
    nv = len(indptr) - 1
    adj = [indices[indptr[v]:indptr[v + 1]] for v in range(nv)]
    eu, ev, de = [], [], []
    d_vertex = np.zeros(nv, dtype=np.int64)
    n_tri3 = 0
    for u in range(nv):
        for v in adj[u]:
            if v <= u:
                continue
            common = np.intersect1d(adj[u], adj[v], assume_unique=True)
            cnt = int(len(common))
            eu.append(u)
            ev.append(int(v))
            de.append(cnt)
            n_tri3 += cnt
            d_vertex[u] += cnt
            d_vertex[v] += cnt
    # each triangle contributes 3 edges; vertex accumulators counted each
    # triangle at a vertex twice (once per incident edge inside it)
    assert n_tri3 % 3 == 0
    return (
        n_tri3 // 3,
        d_vertex // 2,
        np.asarray(eu, dtype=np.int64),
        np.asarray(ev, dtype=np.int64),
        np.asarray(de, dtype=np.int64),
    )


def triangle_list(indptr, indices):
    """All triangles as sorted vertex triples (u < v < w)."""
    nv = len(indptr) - 1
    adj = [indices[indptr[v]:indptr[v + 1]] for v in range(nv)]
    out = []
    for u in range(nv):
        for v in adj[u]:
            if v <= u:
                continue
            common = np.intersect1d(adj[u], adj[v], assume_unique=True)
            for w in common:
                if w > v:
                    out.append((u, int(v), int(w)))
    return out


def _adjacency_weight_maps(indptr, indices, weights):
    nv = len(indptr) - 1
    maps = []
    for v in range(nv):
        row = {}
        for k in range(indptr[v], indptr[v + 1]):
            w = int(weights[k])
            if w > 0:
                row[int(indices[k])] = w
        maps.append(row)
    return maps


def c4_weighted(indptr, indices, weights):
    """Weighted 4-cycle sums over cycles whose edges all carry weight > 0.

    Returns (count, sum of edge-weight products,
             sum of product * (sum of squared edge weights on the cycle)).
    Each unordered 4-cycle is visited once: from its minimum vertex v0 with
    the two v0-neighbours ordered v1 < v3.
    """
    nv = len(indptr) - 1
    amap = _adjacency_weight_maps(indptr, indices, weights)
    count = 0
    psum = 0
    pisum = 0
    for v0 in range(nv):
        row0 = amap[v0]
        for v1, w01 in row0.items():
            if v1 <= v0:
                continue
            for v2, w12 in amap[v1].items():
                if v2 <= v0 or v2 == v0:
                    continue
                for v3, w23 in amap[v2].items():
                    if v3 <= v1 or v3 == v2:
                        continue
                    w30 = row0.get(v3)
                    if w30 is None:
                        continue
                    prod = w01 * w12 * w23 * w30
                    count += 1
                    psum += prod
                    pisum += prod * (w01 * w01 + w12 * w12 + w23 * w23 + w30 * w30)
    return count, psum, pisum


def c6_weighted(indptr, indices, weights):
    """Weighted 6-cycle sum over cycles whose edges all carry weight > 0.

    Returns (count, sum of edge-weight products).  Each unordered 6-cycle is
    visited once: minimum vertex v0, forward path v0-v1-v2-v3 joined with a
    backward 2-path v0-v5-v4, orientation fixed by v1 < v5.
    """
    nv = len(indptr) - 1
    amap = _adjacency_weight_maps(indptr, indices, weights)
    count = 0
    psum = 0
    for v0 in range(nv):
        row0 = amap[v0]
        # back-2 buckets: v4 -> list of (v5, w45*w50)
        buckets: dict[int, list[tuple[int, int]]] = {}
        for v5, w50 in row0.items():
            if v5 <= v0:
                continue
            for v4, w45 in amap[v5].items():
                if v4 <= v0 or v4 == v0:
                    continue
                buckets.setdefault(v4, []).append((v5, w45 * w50))
        for v1, w01 in row0.items():
            if v1 <= v0:
                continue
            for v2, w12 in amap[v1].items():
                if v2 <= v0 or v2 == v0:
                    continue
                for v3, w23 in amap[v2].items():
                    if v3 <= v0 or v3 == v1 or v3 == v2:
                        continue
                    w0123 = w01 * w12 * w23
                    for v4, w34 in amap[v3].items():
                        if v4 <= v0 or v4 == v1 or v4 == v2 or v4 == v3:
                            continue
                        bl = buckets.get(v4)
                        if bl is None:
                            continue
                        for v5, wtail in bl:
                            if v5 <= v1 or v5 == v2 or v5 == v3:
                                continue
                            count += 1
                            psum += w0123 * w34 * wtail
    return count, psum
