from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

import chromacount as cc


@pytest.fixture(scope="session")
def triangle():
    return cc.triangle_pattern()


def corpus_graphs():
    """The small host corpus used across exact-identity tests."""
    out = {
        "K3": cc.complete_graph(3),
        "K4": cc.complete_graph(4),
        "dt1": cc.disjoint_triangles(1),
        "dt2": cc.disjoint_triangles(2),
        "dt3": cc.disjoint_triangles(3),
        "path6": cc.path_graph(6),
        "cycle6": cc.cycle_graph(6),
    }
    for k in range(3, 9):
        out[f"book{k}"] = cc.book_graph(k)
    for k in range(3, 7):
        out[f"windmill{k}"] = cc.windmill_graph(k)
    for n in range(4, 7):
        out[f"dt{n}"] = cc.disjoint_triangles(n)
    return out


def bruteforce_T_distribution(g, copies):
    """Independent oracle: histogram of T over all 2^v colorings (v small)."""
    hist: dict[int, int] = {}
    for signs in itertools.product((-1, 1), repeat=g.vertex_count):
        t = 0
        for verts in copies:
            c0 = signs[verts[0]]
            if all(signs[v] == c0 for v in verts[1:]):
                t += 1
        hist[t] = hist.get(t, 0) + 1
    return hist


def moments_from_hist(hist: dict[int, int], k_max: int):
    total = sum(hist.values())
    mean = Fraction(sum(t * c for t, c in hist.items()), total)
    out = {1: Fraction(0)}
    for k in range(2, k_max + 1):
        out[k] = sum(c * (t - mean) ** k for t, c in hist.items()) / Fraction(total)
    return mean, out
