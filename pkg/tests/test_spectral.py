from __future__ import annotations

import math
import random

import numpy as np
import pytest

import chromacount as cc
from chromacount.errors import CapabilityError, DegenerateVarianceError

from conftest import corpus_graphs


def book_top_eigenvalue_oracle(k: int) -> tuple[float, float]:
    """2x2 symmetry reduction: the nonzero spectrum of the book form is
    {-k/(8 sigma)} plus the eigenvalues of [[a, sqrt(2k) b], [sqrt(2k) b, 0]]
    with a = k/(2 sqrt(k^2+2k)), b = 1/(2 sqrt(k^2+2k))."""
    a = k / (2 * math.sqrt(k * k + 2 * k))
    b = 1 / (2 * math.sqrt(k * k + 2 * k))
    off = math.sqrt(2 * k) * b
    disc = math.sqrt(a * a + 4 * off * off)
    lam_plus = (a + disc) / 2
    return lam_plus, -a  # top eigenvalue and the antisymmetric -k/(8 sigma)


def test_k3_spectrum_exact(triangle):
    g = cc.complete_graph(3)
    spec = cc.triangle_spectrum(g, cc.enumerate_copies(g, triangle))
    expected = [1 / math.sqrt(3), -1 / (2 * math.sqrt(3)), -1 / (2 * math.sqrt(3))]
    assert np.allclose(spec.eigenvalues, expected, atol=1e-9)
    assert spec.method == "dense"


def test_book50_spectrum_vs_reduction_oracle(triangle):
    g = cc.book_graph(50)
    spec = cc.triangle_spectrum(g, cc.enumerate_copies(g, triangle))
    lam1, lam2 = book_top_eigenvalue_oracle(50)
    assert abs(spec.eigenvalues[0] - lam1) < 1e-9
    assert abs(spec.eigenvalues[1] - lam2) < 1e-9
    assert abs(spec.eigenvalues[0] - 0.50918) < 1e-3
    nonzero = [x for x in spec.eigenvalues if abs(x) > 1e-9]
    assert len(nonzero) == 3


def test_disjoint_triangles_spectrum_scaling(triangle):
    n = 50
    g = cc.disjoint_triangles(n)
    spec = cc.triangle_spectrum(g, cc.enumerate_copies(g, triangle))
    assert abs(spec.eigenvalues[0]) <= 2 / math.sqrt(3 * n) + 1e-12


@pytest.mark.parametrize("name", [n for n, g in corpus_graphs().items()])
def test_two_sum_squares_is_one(name, triangle):
    g = corpus_graphs()[name]
    idx = cc.enumerate_copies(g, triangle)
    if idx.n_copies == 0:
        return
    spec = cc.triangle_spectrum(g, idx)
    assert 1 - 1e-6 <= spec.two_sum_squares() <= 1 + 1e-9


def test_spectrum_degenerate(triangle):
    g = cc.path_graph(5)
    with pytest.raises(DegenerateVarianceError):
        cc.triangle_spectrum(g, cc.enumerate_copies(g, triangle))


def test_quadratic_form_reproduces_standardized_count(triangle):
    rng = random.Random(5)
    for name in ("K4", "book5", "windmill3", "dt3"):
        g = corpus_graphs()[name]
        idx = cc.enumerate_copies(g, triangle)
        form = cc.spectral.TriangleForm.from_index(g, idx)
        mean = idx.n_copies / 4
        for _ in range(100):
            x = [rng.choice((-1, 1)) for _ in range(g.vertex_count)]
            t = cc.forms.monochromatic_count_from_copies(idx.copies, x)
            z = (t - mean) / form.sigma
            assert abs(form.evaluate(x) - z) < 1e-9


def test_matrix_spectrum_consistency_with_gaussian_fourth(triangle):
    for name in ("K3", "book3"):
        g = corpus_graphs()[name]
        idx = cc.enumerate_copies(g, triangle)
        spec = cc.triangle_spectrum(g, idx)
        via_spec = cc.gaussian_fourth_from_spectrum(spec)
        kernel = cc.exact_moments_kernel(cc.build_form(idx), k=4, kernel="gaussian")
        assert abs(via_spec - float(kernel.normalized_even[4])) < 1e-6 * via_spec


def test_decompose_book_same_signs(triangle):
    k = 6
    g = cc.book_graph(k)
    idx = cc.enumerate_copies(g, triangle)
    dec = cc.decompose(g, idx, (0, 1), (1, 1))
    sigma = math.sqrt((k * k + 2 * k) / 16)
    assert abs(dec.constant - k / (4 * sigma)) < 1e-12
    for p in range(2, k + 2):
        assert abs(dec.linear[p] - 2 / (4 * sigma)) < 1e-12
    assert dec.quadratic_pairs == {}


def test_decompose_book_opposite_signs(triangle):
    k = 6
    g = cc.book_graph(k)
    idx = cc.enumerate_copies(g, triangle)
    dec = cc.decompose(g, idx, (0, 1), (1, -1))
    sigma = math.sqrt((k * k + 2 * k) / 16)
    assert abs(dec.constant + k / (4 * sigma)) < 1e-12
    assert all(abs(cv) < 1e-15 for cv in dec.linear.values())


def test_decompose_empty_conditioning_is_full_form(triangle):
    g = cc.complete_graph(4)
    idx = cc.enumerate_copies(g, triangle)
    dec = cc.decompose(g, idx, (), ())
    assert dec.constant == 0.0
    assert dec.linear == {}
    assert len(dec.quadratic_pairs) == 6


def test_decomposition_resums_to_standardized_count(triangle):
    rng = random.Random(9)
    for name in ("K4", "book4", "windmill4"):
        g = corpus_graphs()[name]
        idx = cc.enumerate_copies(g, triangle)
        form = cc.spectral.TriangleForm.from_index(g, idx)
        conditioned = (0, 1)
        for _ in range(100):
            x = [rng.choice((-1, 1)) for _ in range(g.vertex_count)]
            dec = cc.decompose(g, idx, conditioned, tuple(x[v] for v in conditioned))
            assert abs(dec.evaluate(x) - form.evaluate(x)) < 1e-9


def test_mixture_book100(triangle):
    g = cc.book_graph(100)
    idx = cc.enumerate_copies(g, triangle)
    comps = cc.mixture_limit(g, idx, (0, 1))
    assert len(comps) == 4
    sigma = math.sqrt((100**2 + 200) / 16)
    want = 100 / (4 * sigma)
    assert abs(want - 0.990) < 1e-3
    means = sorted(c.mean for c in comps)
    assert abs(means[0] + want) < 1e-12 and abs(means[-1] - want) < 1e-12
    for c in comps:
        if c.assignment[0] != c.assignment[1]:
            assert c.variance < 1e-12


def test_mixture_unconditioned_single_component(triangle):
    g = cc.disjoint_triangles(200)
    idx = cc.enumerate_copies(g, triangle)
    comps = cc.mixture_limit(g, idx, ())
    assert len(comps) == 1
    assert comps[0].mean == 0.0
    assert abs(comps[0].variance - 1.0) < 1e-9
    # degenerate-to-normal scenario: top eigenvalue small, no influential pair
    spec = cc.triangle_spectrum(g, idx)
    assert abs(spec.eigenvalues[0]) < 0.1
    sigma = math.sqrt(float(cc.variance_from_index(idx)))
    sets = cc.influential_sets(idx, sigma, idx.n_copies, eps=0.25, g=g)
    assert sets.pairs == ()


def test_mixture_k3_singleton(triangle):
    g = cc.complete_graph(3)
    idx = cc.enumerate_copies(g, triangle)
    comps = cc.mixture_limit(g, idx, (0,))
    assert len(comps) == 2
    assert all(c.mean == 0.0 for c in comps)
    assert abs(comps[0].variance - comps[1].variance) < 1e-15


def test_mixture_cap(triangle):
    g = cc.disjoint_triangles(7)
    idx = cc.enumerate_copies(g, triangle)
    with pytest.raises(CapabilityError):
        cc.mixture_limit(g, idx, tuple(range(17)))
