"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; every tolerance is pinned here, nothing is deferred.
"""
from __future__ import annotations

import math
import time
from fractions import Fraction

import numpy as np
import pytest

import chromacount as cc
from chromacount.diagnostics import Thresholds, verdict
from chromacount.moments import exbad_printed_fourth

from conftest import bruteforce_T_distribution, moments_from_hist


def _report(num: int, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] acceptance criterion {num}" + (f": {detail}" if detail else ""))
    assert ok, f"criterion {num} failed: {detail}"


def _corpus():
    graphs = {"K3": cc.complete_graph(3), "K4": cc.complete_graph(4)}
    for k in range(3, 9):
        graphs[f"book{k}"] = cc.book_graph(k)
    for k in range(3, 7):
        graphs[f"windmill{k}"] = cc.windmill_graph(k)
    for n in range(1, 7):
        graphs[f"dt{n}"] = cc.disjoint_triangles(n)
    graphs["path8"] = cc.path_graph(8)
    graphs["cycle8"] = cc.cycle_graph(8)
    return graphs


@pytest.fixture(scope="module", autouse=True)
def warmup():
    # compile the jit kernels once so criterion timings measure steady state
    g = cc.disjoint_triangles(2)
    tri = cc.triangle_pattern()
    idx = cc.enumerate_copies(g, tri)
    cc.triangle_fourth_closed_form(g, tri, idx)
    cc.triangle_sixth_asymptotic(g, tri, idx)
    cc.sample_T(g, tri, 4, seed=0)
    cc.exact_distribution(g, tri, idx)
    yield


def test_criterion_01_exact_variance_identity(triangle):
    t0 = time.perf_counter()
    for name, g in _corpus().items():
        idx = cc.enumerate_copies(g, triangle)
        form = cc.build_form(idx)
        var_form = cc.variance(form)
        hist = bruteforce_T_distribution(g, idx.copies or [])
        _, mom = moments_from_hist(hist, 2)
        assert var_form == mom[2], name
        s2 = sum(c * c for w, c in idx.d.items() if len(w) == 2)
        assert var_form == Fraction(s2, 16), name
    elapsed = time.perf_counter() - t0
    _report(1, elapsed < 30, f"exact variance equality on corpus in {elapsed:.2f}s")


def test_criterion_02_fourth_moment_triple_agreement(triangle):
    checked = 0
    for name, g in _corpus().items():
        if g.vertex_count > 16:
            continue
        idx = cc.enumerate_copies(g, triangle)
        if idx.n_copies == 0:
            continue
        bf = cc.exact_moments_bruteforce(g, idx, k=4)
        tk = cc.exact_moments_kernel(cc.build_form(idx), k=4, kernel="rademacher")
        cf = cc.triangle_fourth_closed_form(g, triangle, idx)
        assert bf.normalized_even[4] == tk.normalized_even[4] == cf.normalized_even[4], name
        checked += 1
    k3 = cc.exact_moments_bruteforce(
        cc.complete_graph(3), cc.enumerate_copies(cc.complete_graph(3), triangle), 4)
    k4 = cc.exact_moments_bruteforce(
        cc.complete_graph(4), cc.enumerate_copies(cc.complete_graph(4), triangle), 4)
    ok = (k3.normalized_even[4] == Fraction(7, 3)
          and k4.normalized_even[4] == Fraction(14, 3))
    _report(2, ok and checked >= 12,
            f"bruteforce = kernel = closed form on {checked} hosts; "
            "E[Z^4](K3)=7/3, E[Z^4](K4)=14/3")


def test_criterion_03_closed_form_scalability(triangle):
    n = 10**5
    t0 = time.perf_counter()
    g = cc.disjoint_triangles(n)
    idx = cc.enumerate_copies(g, triangle)
    rep = cc.triangle_fourth_closed_form(g, triangle, idx)
    elapsed = time.perf_counter() - t0
    exact = rep.fourth_discrepancy == Fraction(-2, 3 * n)
    _report(3, exact and elapsed < 5.0,
            f"E[Z^4]-3 = -2/(3e5) exactly in {elapsed:.2f}s")


def test_criterion_04_lemma_erratum_reproduction(triangle):
    quad = [frozenset({0, 1, 2})] * 4
    corrected = cc.pie4(quad, 3)
    printed = cc.pie4_printed(quad, 3)
    g = cc.pyramid_stack(4)
    idx = cc.enumerate_copies(g, triangle)
    census = cc.good_join_census(g, triangle, idx, cc.variance_from_index(idx))
    ok = (corrected == Fraction(21, 256) and printed == Fraction(22, 256)
          and census.identical_quadruple_corrected == Fraction(21, 256)
          and census.identical_quadruple_printed == Fraction(22, 256))
    _report(4, ok, "pie4 identical copies: corrected 21/256, printed 22/256, "
                   "both surfaced in JoinCensus")


def test_criterion_05_gaussian_kernel_consistency(triangle):
    k3 = cc.complete_graph(3)
    idx = cc.enumerate_copies(k3, triangle)
    kernel = cc.exact_moments_kernel(cc.build_form(idx), k=4, kernel="gaussian")
    spec = cc.triangle_spectrum(k3, idx)
    spectral = cc.gaussian_fourth_from_spectrum(spec)
    norm_ok = abs(float(kernel.normalized_even[4]) - spectral) <= 1e-6 * spectral
    unnorm = kernel.central[4] * 4**4
    dominance = True
    for name, g in _corpus().items():
        gidx = cc.enumerate_copies(g, triangle)
        if gidx.n_copies == 0:
            continue
        form = cc.build_form(gidx)
        gk = cc.exact_moments_kernel(form, k=4, kernel="gaussian")
        rk = cc.exact_moments_kernel(form, k=4, kernel="rademacher")
        dominance &= gk.central[4] >= rk.central[4]
    ok = norm_ok and unnorm == 81 and kernel.normalized_even[4] == 9 and dominance
    _report(5, ok, "K3 gaussian fourth = 81 unnormalized / 9 normalized, "
                   "matches spectral chi-square; gaussian >= rademacher on corpus")


def test_criterion_06_spectra(triangle):
    k3 = cc.complete_graph(3)
    spec3 = cc.triangle_spectrum(k3, cc.enumerate_copies(k3, triangle))
    want = np.array([1 / math.sqrt(3), -1 / (2 * math.sqrt(3)),
                     -1 / (2 * math.sqrt(3))])
    k3_ok = np.max(np.abs(spec3.eigenvalues - want)) < 1e-9

    book = cc.book_graph(50)
    spec50 = cc.triangle_spectrum(book, cc.enumerate_copies(book, triangle))
    a = 50 / (2 * math.sqrt(50**2 + 100))
    b = 1 / (2 * math.sqrt(50**2 + 100))
    oracle = np.linalg.eigvalsh(np.array([[a, math.sqrt(100) * b],
                                          [math.sqrt(100) * b, 0.0]]))
    lam1_ok = abs(spec50.eigenvalues[0] - oracle.max()) < 1e-9
    lam1_value_ok = abs(spec50.eigenvalues[0] - 0.50918) <= 1e-3

    sums_ok = True
    for name, g in _corpus().items():
        idx = cc.enumerate_copies(g, triangle)
        if idx.n_copies == 0:
            continue
        s = cc.triangle_spectrum(g, idx).two_sum_squares()
        sums_ok &= 1 - 1e-6 <= s <= 1 + 1e-9
    _report(6, k3_ok and lam1_ok and lam1_value_ok and sums_ok,
            "K3 spectrum exact to 1e-9; book(50) lambda1 = 0.50918 via 2x2 "
            "oracle; 2*sum(lambda^2) = 1 on corpus")


def test_criterion_07_book_conditional_distribution(triangle):
    ok = True
    for k in range(1, 21):
        g = cc.book_graph(k)
        same = dict(cc.exact_distribution(g, triangle, condition={0: 1, 1: 1}).atoms)
        for t in range(k + 1):
            ok &= same.get(t, Fraction(0)) == Fraction(math.comb(k, t), 2**k)
        diff = cc.exact_distribution(g, triangle, condition={0: 1, 1: -1})
        ok &= diff.atoms == [(0, Fraction(1))]
        full = dict(cc.exact_distribution(g, triangle).atoms)
        for t in range(k + 1):
            want = Fraction(math.comb(k, t), 2 ** (k + 1))
            if t == 0:
                want += Fraction(1, 2)
            ok &= full.get(t, Fraction(0)) == want
    _report(7, ok, "T(book(k)) | shared-edge colors = (1/2) delta_0 + "
                   "(1/2) Bin(k,1/2), atom-by-atom exact, k <= 20")


def test_criterion_08_monte_carlo_contrast(triangle):
    t0 = time.perf_counter()
    run_dt = cc.sample_T(cc.disjoint_triangles(200), triangle, 10**5, seed=2026)
    t_dt = time.perf_counter() - t0
    t0 = time.perf_counter()
    run_book = cc.sample_T(cc.book_graph(200), triangle, 10**5, seed=2026)
    t_book = time.perf_counter() - t0
    ok = (run_dt.dkol <= 0.06 and run_book.dkol >= 0.15
          and t_dt < 60 and t_book < 60)
    _report(8, ok, f"dkol(dt200) = {run_dt.dkol:.4f} <= 0.06, "
                   f"dkol(book200) = {run_book.dkol:.4f} >= 0.15, "
                   f"runtimes {t_dt:.1f}s/{t_book:.1f}s")


def test_criterion_09_verdict_regression(triangle):
    def get(g):
        idx = cc.enumerate_copies(g, triangle)
        var = cc.variance_from_index(idx)
        fourth = cc.triangle_fourth_closed_form(g, triangle, idx).normalized_even[4]
        return verdict(g, triangle, idx, var, fourth, Thresholds())

    v_book = get(cc.book_graph(100))
    v_dt = get(cc.disjoint_triangles(400))
    v_wind = get(cc.windmill_graph(100))
    ok = (v_book.classification == "clt_precluded" and v_book.rule == "Thm 4.1(1)"
          and v_dt.classification == "clt_supported" and v_dt.rule == "Thm 1.2(2)"
          and v_wind.classification == "clt_supported"
          and any("single influential vertex" in n for n in v_wind.notes)
          and v_book.evidence["strongly_influential_pairs"] == [[0, 1]]
          and v_book.evidence["strong_rule"] == "Prop 6.2")
    _report(9, ok, "book100 precluded [Thm 4.1(1)] + strong pair [Prop 6.2]; "
                   "dt400 supported [Thm 1.2(2)]; windmill100 supported "
                   "with single-vertex note")


def test_criterion_10_exbad_family_reproduction(triangle):
    g = cc.exbad_full(4, 3 / 16, 2)
    idx = cc.enumerate_copies(g, triangle)
    split_ok = (idx.n_copies == 36
                and cc.enumerate_copies(cc.exbad_S(4), triangle).n_copies == 16
                and cc.enumerate_copies(cc.exbad_P(4, 2), triangle).n_copies == 8
                and cc.enumerate_copies(cc.exbad_B(4, 3 / 16), triangle).n_copies == 12)

    b, c = 1.0518, 1.956
    rows = cc.exbad_moment_table([4, 8, 16], b, c)
    table_ok = [r["n"] for r in rows] == [4, 8, 16]
    for r in rows:
        table_ok &= r["fourth_target"] == 3.0 and r["sixth_target"] == 15.0
        # the exact-vs-printed gap is quantified, not asserted away
        table_ok &= "fourth_exact_minus_printed" in r
        table_ok &= "sixth_estimate_minus_printed" in r
    # spot check: the quantified gap at n=4 equals a direct recomputation
    g4 = cc.exbad_full(4, b, c)
    idx4 = cc.enumerate_copies(g4, triangle)
    rep4 = cc.triangle_fourth_closed_form(g4, triangle, idx4)
    s2 = rep4.extras["sum_d2"]
    direct_gap = rep4.normalized_even[4] - exbad_printed_fourth(4, b, c, s2)
    row_gap = Fraction(int(rows[0]["fourth_exact_minus_printed"]["num"]),
                       int(rows[0]["fourth_exact_minus_printed"]["den"]))
    _report(10, split_ok and table_ok and direct_gap == row_gap,
            "36 triangles split 16/8/12; convergence table at n=4,8,16 with "
            "targets 3 and 15 recorded and the printed-formula gap quantified")
