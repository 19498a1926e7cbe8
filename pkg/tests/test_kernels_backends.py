"""Backend equivalence: the numba kernels must match the pure-Python
fallbacks exactly, and both must match naive itertools oracles."""
from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

import chromacount as cc
from chromacount._kernels import _fallback

numba_impl = pytest.importorskip("chromacount._kernels._numba")


def naive_cycle_sum(g, weights_map, length):
    count = 0
    psum = 0
    seen = set()
    for verts in itertools.combinations(range(g.vertex_count), length):
        for perm in itertools.permutations(verts[1:]):
            cyc = (verts[0],) + perm
            if cyc[1] > cyc[-1]:
                continue
            edges = [tuple(sorted((cyc[i], cyc[(i + 1) % length])))
                     for i in range(length)]
            if len(set(edges)) != length:
                continue
            if not all(weights_map.get(e, 0) > 0 for e in edges):
                continue
            key = frozenset(edges)
            if key in seen:
                continue
            seen.add(key)
            count += 1
            p = 1
            for e in edges:
                p *= weights_map[e]
            psum += p
    return count, psum


def weight_csr(g, weights_map):
    indptr, indices = g.csr
    w = np.zeros(len(indices), dtype=np.int64)
    for v in range(g.vertex_count):
        for k in range(int(indptr[v]), int(indptr[v + 1])):
            u = int(indices[k])
            w[k] = weights_map.get((min(u, v), max(u, v)), 0)
    return indptr, indices, w


def graph_cases():
    rng = random.Random(77)
    cases = [cc.complete_graph(5), cc.complete_graph(6), cc.book_graph(5),
             cc.windmill_graph(3), cc.exbad_B(2, 0.8), cc.cycle_graph(6),
             cc.cycle_graph(7), cc.exbad_S(2)]
    for i in range(6):
        cases.append(cc.erdos_renyi(rng.randint(6, 10), rng.uniform(0.3, 0.8),
                                    seed=500 + i))
    return cases


@pytest.mark.parametrize("gi", range(len(graph_cases())))
def test_cycle_kernels_three_way(gi, triangle):
    g = graph_cases()[gi]
    idx = cc.enumerate_copies(g, triangle)
    dmap = {e: idx.influence(e) for e in g.edges}
    ones = {e: 1 for e in g.edges}
    for wm in (dmap, ones):
        indptr, indices, w = weight_csr(g, wm)
        for length, numba_fn, py_fn in (
                (4, numba_impl.c4_weighted, _fallback.c4_weighted),
                (6, numba_impl.c6_weighted, _fallback.c6_weighted)):
            naive = naive_cycle_sum(g, wm, length)
            nres = numba_fn(indptr, indices, w)
            pres = py_fn(indptr, indices, w)
            assert (int(nres[0]), int(nres[1])) == naive
            assert (pres[0], pres[1]) == naive


def test_c4_inner_sum_backends_match(triangle):
    for g in graph_cases():
        idx = cc.enumerate_copies(g, triangle)
        indptr, indices, w = weight_csr(g, {e: idx.influence(e) for e in g.edges})
        nres = numba_impl.c4_weighted(indptr, indices, w)
        pres = _fallback.c4_weighted(indptr, indices, w)
        assert tuple(int(x) for x in nres) == tuple(pres)


def test_triangle_census_backends_match():
    for g in graph_cases():
        indptr, indices = g.csr
        n_n, dv_n, eu_n, ev_n, de_n = numba_impl.triangle_census(indptr, indices)
        n_p, dv_p, eu_p, ev_p, de_p = _fallback.triangle_census(indptr, indices)
        assert int(n_n) == int(n_p)
        assert np.array_equal(dv_n, dv_p)
        assert np.array_equal(eu_n, eu_p) and np.array_equal(ev_n, ev_p)
        assert np.array_equal(de_n, de_p)


def test_triangle_list_backends_match():
    for g in graph_cases():
        indptr, indices = g.csr
        n, _, _, _, _ = _fallback.triangle_census(indptr, indices)
        a = numba_impl.triangle_list(indptr, indices, int(n))
        b = _fallback.triangle_list(indptr, indices)
        assert sorted(map(tuple, a.tolist())) == sorted(b)


def test_coloring_matrix_backends_match():
    for seed in (0, 1, 987654321):
        for istart in (0, 17):
            a = numba_impl.coloring_matrix(seed, istart, 64, 29)
            b = _fallback.coloring_matrix(seed, istart, 64, 29)
            assert np.array_equal(a, b)
            assert set(np.unique(a)) <= {-1, 1}


def test_coloring_matrix_counter_property():
    # row i of a big batch equals the single-sample call at index i
    big = _fallback.coloring_matrix(5, 0, 40, 13)
    for i in (0, 7, 39):
        single = _fallback.coloring_matrix(5, i, 1, 13)
        assert np.array_equal(big[i], single[0])


def test_mono_counts_backends_match(triangle):
    g = cc.book_graph(6)
    idx = cc.enumerate_copies(g, triangle)
    copies = np.asarray(idx.copies, dtype=np.int64)
    colors = _fallback.coloring_matrix(3, 0, 100, g.vertex_count)
    a = numba_impl.mono_counts(copies, colors)
    b = _fallback.mono_counts(copies, colors)
    assert np.array_equal(a, b)


def test_tally_backends_match(triangle):
    g = cc.windmill_graph(4)
    idx = cc.enumerate_copies(g, triangle)
    masks = np.array([sum(1 << v for v in c) for c in idx.copies], dtype=np.uint32)
    for fixmask, fixval in ((1, 0), (3, 1), (0, 0)):
        a = numba_impl.tally_distribution(masks, g.vertex_count, fixmask, fixval)
        b = _fallback.tally_distribution(masks, g.vertex_count, fixmask, fixval)
        assert np.array_equal(a, b)


def test_python_backend_env_flag(tmp_path):
    import subprocess
    import sys
    code = (
        "import chromacount as cc\n"
        "from chromacount import _kernels\n"
        "assert _kernels.backend_name() == 'python'\n"
        "g = cc.complete_graph(4)\n"
        "idx = cc.enumerate_copies(g, cc.triangle_pattern())\n"
        "rep = cc.triangle_fourth_closed_form(g, cc.triangle_pattern(), idx)\n"
        "assert rep.normalized_even[4] == cc.moments.Fraction(14, 3)\n"
        "print('ok')\n"
    )
    import os
    env = dict(os.environ, CHROMACOUNT_BACKEND="python")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "ok"


def test_big_weights_route_to_exact_python():
    # weights large enough that the guard must use big-int arithmetic
    g = cc.book_graph(3)
    big = 2**21
    wm = {e: big for e in g.edges}
    indptr, indices, w64 = weight_csr(g, {e: 1 for e in g.edges})
    indptr2, indices2, _ = weight_csr(g, wm)
    count_small, psum_small, _ = _fallback.c4_weighted(indptr, indices, w64)
    count_big, psum_big, _ = _fallback.c4_weighted(
        indptr2, indices2, np.full(len(indices2), big, dtype=np.int64))
    assert count_big == count_small
    assert psum_big == psum_small * big**4
