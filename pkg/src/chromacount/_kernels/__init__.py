"""Kernel backend selection.

Hot loops (copy census, cycle sums, Monte Carlo colorings, brute-force
tallies) run through numba @njit kernels by default.  Setting the
environment variable CHROMACOUNT_BACKEND=python selects the pure
Python/numpy implementations instead (slower, but dependency-light and
exact for arbitrarily large integers).
"""
from __future__ import annotations

import os

import numpy as np

from . import _fallback

splitmix64 = _fallback.splitmix64
sample_key = _fallback.sample_key
counter_uniform = _fallback.counter_uniform

_requested = os.environ.get("CHROMACOUNT_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "python"):
    raise ValueError(f"CHROMACOUNT_BACKEND must be 'numba' or 'python', got {_requested!r}")

if _requested == "numba":
    try:
        from . import _numba as _impl
        USING_NUMBA = True
    except ImportError:
        _impl = _fallback
        USING_NUMBA = False
else:
    _impl = _fallback
    USING_NUMBA = False


def backend_name() -> str:
    return "numba" if USING_NUMBA else "python"


def coloring_matrix(seed: int, istart: int, count: int, nv: int) -> np.ndarray:
    return _impl.coloring_matrix(seed, istart, count, nv)


def mono_counts(copies: np.ndarray, colors: np.ndarray) -> np.ndarray:
    copies = np.ascontiguousarray(copies, dtype=np.int64)
    colors = np.ascontiguousarray(colors, dtype=np.int8)
    if copies.shape[0] == 0:
        return np.zeros(colors.shape[0], dtype=np.int64)
    return _impl.mono_counts(copies, colors)


def tally_distribution(masks, nv: int, fixmask: int = 1, fixval: int = 0) -> np.ndarray:
    """Histogram of monochromatic-copy counts over admissible bit colorings."""
    masks = np.asarray(masks, dtype=np.uint32)
    return _impl.tally_distribution(masks, nv, fixmask, fixval)


def triangle_census(indptr, indices):
    return _impl.triangle_census(indptr, indices)


def triangle_list(indptr, indices, n_triangles: int) -> np.ndarray:
    if USING_NUMBA:
        return _impl.triangle_list(indptr, indices, n_triangles)
    tri = _fallback.triangle_list(indptr, indices)
    return np.asarray(tri, dtype=np.int64).reshape(len(tri), 3)


def c4_weighted(indptr, indices, weights, exact: bool = False):
    """(count, sum of products, sum of product*edge-square-sum) over 4-cycles.

    exact=True forces the big-int Python path regardless of backend; the
    numba path is int64 and callers must pre-check magnitude bounds.
    """
    if exact or not USING_NUMBA:
        return _fallback.c4_weighted(indptr, indices, weights)
    c, p, pi = _impl.c4_weighted(indptr, indices, weights)
    return int(c), int(p), int(pi)


def c6_weighted(indptr, indices, weights, exact: bool = False):
    """(count, sum of products) over 6-cycles with all-positive weights."""
    if exact or not USING_NUMBA:
        return _fallback.c6_weighted(indptr, indices, weights)
    c, p = _impl.c6_weighted(indptr, indices, weights)
    return int(c), int(p)
