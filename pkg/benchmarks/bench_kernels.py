#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-Python/numpy fallbacks.

Usage: python benchmarks/bench_kernels.py [--quick]

Covers the four hot loops: triangle census, weighted 4-/6-cycle sums,
counter-based coloring generation, and monochromatic-copy counting.
The numba path is used automatically by the package; the fallback is what
CHROMACOUNT_BACKEND=python selects.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

import chromacount as cc
from chromacount._kernels import _fallback

try:
    from chromacount._kernels import _numba
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def timed(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def edge_weights(g, idx):
    indptr, indices = g.csr
    w = np.zeros(len(indices), dtype=np.int64)
    for v in range(g.vertex_count):
        for k in range(int(indptr[v]), int(indptr[v + 1])):
            u = int(indices[k])
            key = (min(u, v), max(u, v))
            w[k] = idx.d.get(key, 0)
    return indptr, indices, w


def bench(name, numba_fn, py_fn, args, fmt=lambda r: ""):
    if HAVE_NUMBA:
        numba_fn(*args)  # compile outside the timing
        t_n, r_n = timed(numba_fn, *args)
    else:
        t_n, r_n = float("nan"), None
    t_p, r_p = timed(py_fn, *args, repeat=1)
    speedup = t_p / t_n if HAVE_NUMBA else float("nan")
    print(f"{name:<28} numba {t_n * 1e3:9.2f} ms   python {t_p * 1e3:9.2f} ms"
          f"   speedup {speedup:7.1f}x   {fmt(r_n if HAVE_NUMBA else r_p)}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="smaller sizes")
    opts = ap.parse_args()

    tri = cc.triangle_pattern()
    scale = 4 if opts.quick else 1

    print("== triangle census ==")
    g = cc.disjoint_triangles(100_000 // scale)
    indptr, indices = g.csr
    bench("census dt(1e5)", _numba.triangle_census if HAVE_NUMBA else None,
          _fallback.triangle_census, (indptr, indices),
          fmt=lambda r: f"N={int(r[0])}")

    print("== weighted cycle sums ==")
    g = cc.exbad_full(8 // (2 if opts.quick else 1), 1.0518, 1.956)
    idx = cc.enumerate_copies(g, tri)
    indptr, indices, w = edge_weights(g, idx)
    bench(f"c4 exbad({g.meta['hub_count']} hubs)",
          _numba.c4_weighted if HAVE_NUMBA else None,
          _fallback.c4_weighted, (indptr, indices, w),
          fmt=lambda r: f"cycles={int(r[0])}")
    bench(f"c6 exbad({g.meta['hub_count']} hubs)",
          _numba.c6_weighted if HAVE_NUMBA else None,
          _fallback.c6_weighted, (indptr, indices, w),
          fmt=lambda r: f"cycles={int(r[0])}")

    print("== monte carlo ==")
    g = cc.book_graph(200)
    idx = cc.enumerate_copies(g, tri)
    copies = np.asarray(idx.copies, dtype=np.int64)
    nv = g.vertex_count
    count = 100_000 // scale
    bench(f"colorings {count}x{nv}",
          _numba.coloring_matrix if HAVE_NUMBA else None,
          _fallback.coloring_matrix, (7, 0, count, nv))
    colors = _fallback.coloring_matrix(7, 0, count, nv)
    bench(f"mono counts {count} samples",
          _numba.mono_counts if HAVE_NUMBA else None,
          _fallback.mono_counts, (copies, colors),
          fmt=lambda r: f"mean T={float(np.mean(r)):.2f}")

    print("== brute-force tally ==")
    g = cc.book_graph(18)
    idx = cc.enumerate_copies(g, tri)
    masks = np.array([sum(1 << v for v in c) for c in idx.copies], dtype=np.uint32)
    bench(f"tally 2^{g.vertex_count - 1} colorings",
          _numba.tally_distribution if HAVE_NUMBA else None,
          _fallback.tally_distribution, (masks, g.vertex_count, 1, 0),
          fmt=lambda r: f"atoms={int(np.count_nonzero(r))}")


if __name__ == "__main__":
    main()
