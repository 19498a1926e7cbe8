from __future__ import annotations

import itertools
import math
import random

import pytest

import chromacount as cc
from chromacount.errors import CapabilityError, DegenerateVarianceError, UsageError
from chromacount.patterns import influential_sets

from conftest import corpus_graphs


def brute_automorphism_count(g):
    n = g.vertex_count
    edges = set(g.edges)
    count = 0
    for perm in itertools.permutations(range(n)):
        if all(((perm[u], perm[v]) in edges) or ((perm[v], perm[u]) in edges)
               for u, v in edges):
            count += 1
    return count


@pytest.mark.parametrize("pattern,expected", [
    ("triangle", 6),
    ("edge", 2),
    ("path:3", 2),
    ("path:4", 2),
    ("cycle:4", 8),
    ("cycle:5", 10),
    ("complete:4", 24),
])
def test_automorphism_counts(pattern, expected):
    assert cc.parse_pattern(pattern).automorphism_count == expected


def test_automorphisms_match_bruteforce_small():
    for spec in ("path:3", "cycle:4", "complete:3", "path:5"):
        h = cc.parse_pattern(spec)
        assert h.automorphism_count == brute_automorphism_count(h.graph)


def test_pattern_caps_and_connectivity():
    with pytest.raises(CapabilityError):
        cc.Pattern(cc.complete_graph(9))
    with pytest.raises(UsageError):
        cc.Pattern(cc.disjoint_triangles(2))
    with pytest.raises(UsageError):
        cc.parse_pattern("blob")


def test_k4_triangle_index(triangle):
    idx = cc.enumerate_copies(cc.complete_graph(4), triangle)
    assert idx.n_copies == 4
    for pair in itertools.combinations(range(4), 2):
        assert idx.influence(pair) == 2
    for v in range(4):
        assert idx.influence(v) == 3


def test_k3_edge_pattern():
    idx = cc.enumerate_copies(cc.complete_graph(3), cc.edge_pattern())
    assert idx.n_copies == 3
    assert all(idx.influence(v) == 2 for v in range(3))


def test_general_enumerator_matches_triangle_fast_path(triangle):
    # same pattern through the generic backtracking path (cycle:3)
    h_generic = cc.parse_pattern("cycle:3")
    for name, g in corpus_graphs().items():
        fast = cc.enumerate_copies(g, triangle)
        slow = cc.enumerate_copies(g, h_generic)
        assert fast.n_copies == slow.n_copies, name
        assert fast.d == slow.d, name


def test_path_and_cycle_counts():
    # K4: paths on 3 vertices = 4 * 3 = 12; 4-cycles = 3
    k4 = cc.complete_graph(4)
    assert cc.enumerate_copies(k4, cc.parse_pattern("path:3")).n_copies == 12
    assert cc.enumerate_copies(k4, cc.parse_pattern("cycle:4")).n_copies == 3
    assert cc.enumerate_copies(k4, cc.parse_pattern("complete:4")).n_copies == 1


def sum_identity(idx, r, m):
    total = sum(c for w, c in idx.d.items() if len(w) == m)
    return total == math.comb(r, m) * idx.n_copies


@pytest.mark.parametrize("name", list(corpus_graphs()))
def test_influence_sum_identities(name, triangle):
    g = corpus_graphs()[name]
    idx = cc.enumerate_copies(g, triangle)
    for m in (1, 2, 3):
        assert sum_identity(idx, 3, m), (name, m)


def test_influence_sum_identities_other_patterns():
    g = cc.complete_graph(5)
    for spec in ("path:3", "cycle:4", "complete:4"):
        h = cc.parse_pattern(spec)
        idx = cc.enumerate_copies(g, h)
        for m in range(1, h.r + 1):
            assert sum_identity(idx, h.r, m), (spec, m)


def test_influence_monotonicity():
    g = cc.book_graph(5)
    idx = cc.enumerate_copies(g, cc.triangle_pattern())
    for w, c in idx.d.items():
        for v in w:
            smaller = tuple(x for x in w if x != v)
            if smaller:
                assert idx.d.get(smaller, 0) >= c


def test_enumeration_order_independence(triangle):
    rng = random.Random(3)
    for g in (cc.book_graph(4), cc.windmill_graph(3), cc.erdos_renyi(12, 0.4, 2)):
        idx = cc.enumerate_copies(g, triangle)
        perm = list(range(g.vertex_count))
        rng.shuffle(perm)
        g2 = g.relabeled(perm)
        idx2 = cc.enumerate_copies(g2, triangle)
        assert idx2.n_copies == idx.n_copies
        for size in (1, 2, 3):
            a = sorted(c for w, c in idx.d.items() if len(w) == size)
            b = sorted(c for w, c in idx2.d.items() if len(w) == size)
            assert a == b


def test_influential_sets_book100(triangle):
    g = cc.book_graph(100)
    idx = cc.enumerate_copies(g, triangle)
    var = cc.variance_from_index(idx)
    sigma = float(var) ** 0.5
    sets = influential_sets(idx, sigma, idx.n_copies, eps=1.0, g=g, eps_strong=0.9)
    assert (0, 1) in sets.edges
    assert abs(sets.max_pair_ratio - 400 / math.sqrt(100**2 + 200)) < 1e-12
    assert sets.strong_pairs == ((0, 1),)


def test_influential_sets_dt100_none(triangle):
    g = cc.disjoint_triangles(100)
    idx = cc.enumerate_copies(g, triangle)
    sigma = float(cc.variance_from_index(idx)) ** 0.5
    sets = influential_sets(idx, sigma, idx.n_copies, eps=0.5, g=g)
    assert sets.pairs == ()
    assert abs(sets.max_pair_ratio - 4 / math.sqrt(300)) < 1e-12


def test_influence_ratio_bound(triangle):
    # sigma^2 >= D_e^2/16 forces D_e/sigma <= 4 for triangles
    for name, g in corpus_graphs().items():
        idx = cc.enumerate_copies(g, triangle)
        var = cc.variance_from_index(idx)
        if var == 0:
            continue
        sigma = float(var) ** 0.5
        assert idx.max_pair_influence() / sigma <= 4.0 + 1e-12, name


def test_influential_sets_zero_variance(triangle):
    g = cc.path_graph(4)
    idx = cc.enumerate_copies(g, triangle)
    with pytest.raises(DegenerateVarianceError):
        influential_sets(idx, 0.0, 0, eps=0.5)


def test_copy_cap_triggers_fallback(triangle):
    g = cc.disjoint_triangles(10)
    idx = cc.enumerate_copies(g, triangle, copy_cap=5)
    assert idx.copies is None
    assert idx.subset_sizes_limited
    assert idx.n_copies == 10
    assert set(idx.subset_sizes) == {1, 2}
