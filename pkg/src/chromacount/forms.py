"""Multilinear polynomial view of the monochromatic count.

The count statistic equals an exact-rational multilinear form in the +-1
vertex colors: constant term N/2^(r-1) and coefficient D_w/2^(r-1) on each
even-size vertex subset w.  All identities here are exact, so everything is
kept in Fractions; floats appear only downstream (spectral/simulation).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import CapabilityError, DegenerateVarianceError
from .graphs import Graph
from .patterns import InfluenceIndex, Pattern, enumerate_copies


def indicator_poly(r: int) -> dict[tuple[int, ...], int]:
    """Coefficient table of the r-vertex monochromatic indicator polynomial.

    Coefficient 2 on every even-size subset of range(r), including the empty
    set; odd sizes vanish.  Evaluates to 2^r on the two constant sign
    vectors and 0 on every other one.
    """
    if not 2 <= r <= 8:
        raise CapabilityError("indicator polynomial supported for 2..8 vertices")
    coeffs = {(): 2}
    for m in range(2, r + 1, 2):
        for subset in combinations(range(r), m):
            coeffs[subset] = 2
    return coeffs


def evaluate_indicator(coeffs: dict[tuple[int, ...], int], signs) -> int:
    total = 0
    for subset, c in coeffs.items():
        prod = c
        for v in subset:
            prod *= signs[v]
        total += prod
    return total


@dataclass(frozen=True)
class MultilinearForm:
    """Exact-rational multilinear representation of the count statistic."""

    r: int
    n_copies: int
    constant: Fraction
    coeffs: dict[tuple[int, ...], Fraction]
    vertex_influence: dict[int, int] = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return self.r

    def monomials(self):
        return self.coeffs.items()


def build_form(idx: InfluenceIndex) -> MultilinearForm:
    """Form with coefficients D_w / 2^(r-1) on even-size subsets."""
    r = idx.r
    needed = [m for m in range(2, r + 1, 2)]
    missing = [m for m in needed if m not in idx.subset_sizes]
    if missing:
        raise CapabilityError(
            f"influence index lacks even subset sizes {missing} (fallback-limited)")
    denom = 2 ** (r - 1)
    coeffs = {w: Fraction(c, denom) for w, c in idx.d.items()
              if len(w) % 2 == 0 and c > 0}
    vertex_influence = {w[0]: c for w, c in idx.d.items() if len(w) == 1}
    return MultilinearForm(r=r, n_copies=idx.n_copies,
                           constant=Fraction(idx.n_copies, denom),
                           coeffs=coeffs, vertex_influence=vertex_influence)


def evaluate_form(form: MultilinearForm, coloring) -> Fraction:
    """Exact polynomial evaluation at a +-1 coloring."""
    total = form.constant
    for w, a in form.coeffs.items():
        sign = 1
        for v in w:
            sign *= coloring[v]
        total += a if sign > 0 else -a
    return total


def monochromatic_count(g: Graph, h: Pattern, coloring) -> int:
    """T: copies of h lying inside a single color class of the coloring.

    Implemented by enumerating copies within each induced color-class
    subgraph; connectedness of the pattern makes this equal to the
    polynomial evaluation (both paths are kept and cross-asserted in tests).
    """
    x = np.asarray(coloring)
    if x.shape[0] != g.vertex_count:
        raise ValueError("coloring length does not match vertex count")
    total = 0
    for color in (1, -1):
        keep = [v for v in range(g.vertex_count) if x[v] == color]
        pos = {v: i for i, v in enumerate(keep)}
        sub_edges = [(pos[u], pos[v]) for u, v in g.edges
                     if u in pos and v in pos]
        sub = Graph.from_edges(len(keep), sub_edges)
        if sub.vertex_count >= h.r:
            total += enumerate_copies(sub, h).n_copies
    return total


def monochromatic_count_from_copies(copies, coloring) -> int:
    """T from the cached copy list (fast path used by the simulator)."""
    x = np.asarray(coloring)
    total = 0
    for verts in copies:
        c0 = x[verts[0]]
        if all(x[v] == c0 for v in verts[1:]):
            total += 1
    return total


def variance(form: MultilinearForm) -> Fraction:
    """Exact Var(T) = sum of squared non-constant coefficients.

    Zero is a distinguished degenerate value (no copies, or a forced count).
    """
    return sum((a * a for a in form.coeffs.values()), Fraction(0))


def variance_from_index(idx: InfluenceIndex) -> Fraction:
    """Variance without materializing Fractions per coefficient."""
    needed = [m for m in range(2, idx.r + 1, 2)]
    missing = [m for m in needed if m not in idx.subset_sizes]
    if missing:
        raise CapabilityError(
            f"influence index lacks even subset sizes {missing} (fallback-limited)")
    total = sum(c * c for w, c in idx.d.items() if len(w) % 2 == 0)
    return Fraction(total, 4 ** (idx.r - 1))


def sigma_value(var: Fraction) -> float:
    if var <= 0:
        raise DegenerateVarianceError("count statistic has zero variance")
    return float(var) ** 0.5


def mean_from_form(form: MultilinearForm) -> Fraction:
    return form.constant


def boolean_influence(form: MultilinearForm, v: int) -> tuple[Fraction, Fraction]:
    """(influence of vertex v, its counting upper bound D_v^2 / 2^(r-1)).

    The influence is the sum of squared coefficients over monomials
    containing v; the bound always dominates it and both are returned so
    callers can assert the inequality.
    """
    inf = sum((a * a for w, a in form.coeffs.items() if v in w), Fraction(0))
    d_v = form.vertex_influence.get(v, 0)
    bound = Fraction(d_v * d_v, 2 ** (form.r - 1))
    if inf > bound:
        raise AssertionError(f"influence {inf} exceeds its bound {bound}")
    return inf, bound
