"""Triangle-count quadratic form: spectrum, conditioning, mixture limit.

The standardized centered triangle count is the quadratic form x.A.x with
A[u,v] = D_uv / (8 sigma) off-diagonal and zero diagonal; with that
convention x.A.x matches the exact (1/(4 sigma)) sum of D_e x_u x_v over
edges, and the unconditioned Gaussian variance 2*sum(lambda^2) equals 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapabilityError, DegenerateVarianceError, UsageError
from .forms import variance_from_index
from .graphs import Graph
from .patterns import InfluenceIndex

DENSE_EIG_LIMIT = 2000
MAX_CONDITIONED = 16


def _check_triangle_index(idx: InfluenceIndex):
    if idx.r != 3:
        raise UsageError("spectral analysis applies to the triangle pattern only")


@dataclass
class TriangleForm:
    """Coefficient matrix of the standardized triangle quadratic form."""

    n_vertices: int
    sigma: float
    variance: Fraction
    pair_entries: dict[tuple[int, int], int]   # D_uv on edges with D > 0

    @classmethod
    def from_index(cls, g: Graph, idx: InfluenceIndex) -> "TriangleForm":
        _check_triangle_index(idx)
        var = variance_from_index(idx)
        if var <= 0:
            raise DegenerateVarianceError("no triangles: degenerate quadratic form")
        pairs = {w: c for w, c in idx.d.items() if len(w) == 2 and c > 0}
        return cls(n_vertices=g.vertex_count, sigma=math.sqrt(float(var)),
                   variance=var, pair_entries=pairs)

    def matrix(self, exclude: frozenset = frozenset()) -> tuple[np.ndarray, list[int]]:
        """Dense coefficient matrix on the vertices outside `exclude`."""
        keep = [v for v in range(self.n_vertices) if v not in exclude]
        pos = {v: i for i, v in enumerate(keep)}
        a = np.zeros((len(keep), len(keep)))
        scale = 1.0 / (8.0 * self.sigma)
        for (u, v), d in self.pair_entries.items():
            if u in pos and v in pos:
                a[pos[u], pos[v]] = d * scale
                a[pos[v], pos[u]] = d * scale
        return a, keep

    def evaluate(self, coloring) -> float:
        """(T - E T)/sigma at a +-1 coloring, via the pair entries."""
        x = np.asarray(coloring, dtype=np.float64)
        acc = 0.0
        for (u, v), d in self.pair_entries.items():
            acc += d * x[u] * x[v]
        return acc / (4.0 * self.sigma)

    def reduced_gaussian_variance(self, exclude: frozenset = frozenset()) -> float:
        """Exact 2*sum(lambda^2) of the quadratic part outside `exclude`."""
        total = sum(d * d for (u, v), d in self.pair_entries.items()
                    if u not in exclude and v not in exclude)
        return total / (16.0 * self.sigma**2)


@dataclass
class Spectrum:
    eigenvalues: np.ndarray       # sorted by |lambda| desc, then value desc
    computed: int                 # how many eigenvalues were computed
    total_dimension: int
    method: str                   # dense | iterative

    @property
    def top(self) -> float:
        return float(self.eigenvalues[0]) if len(self.eigenvalues) else 0.0

    def two_sum_squares(self) -> float:
        return 2.0 * float(np.sum(self.eigenvalues**2))


def _order_eigenvalues(vals: np.ndarray) -> np.ndarray:
    order = sorted(range(len(vals)), key=lambda i: (-abs(vals[i]), -vals[i]))
    return vals[order]


def triangle_spectrum(g: Graph, idx: InfluenceIndex,
                      exclude: frozenset = frozenset(),
                      iterative_k: int = 24) -> Spectrum:
    """Eigenvalues of the coefficient matrix, largest magnitude first.

    Dense solve up to 2000 active vertices; beyond that the extremal
    eigenvalues are computed iteratively and the count is recorded.
    """
    form = TriangleForm.from_index(g, idx)
    active = [v for v in range(g.vertex_count) if v not in exclude]
    dim = len(active)
    if dim <= DENSE_EIG_LIMIT:
        a, _ = form.matrix(exclude)
        vals = np.linalg.eigvalsh(a)
        return Spectrum(_order_eigenvalues(vals), dim, dim, "dense")
    import scipy.sparse as sp
    import scipy.sparse.linalg as spla
    pos = {v: i for i, v in enumerate(active)}
    rows, cols, data = [], [], []
    scale = 1.0 / (8.0 * form.sigma)
    for (u, v), d in form.pair_entries.items():
        if u in pos and v in pos:
            rows += [pos[u], pos[v]]
            cols += [pos[v], pos[u]]
            data += [d * scale, d * scale]
    mat = sp.csr_matrix((data, (rows, cols)), shape=(dim, dim))
    k = min(iterative_k, dim - 2)
    vals = spla.eigsh(mat, k=k, which="LM", return_eigenvectors=False,
                      tol=1e-9)
    return Spectrum(_order_eigenvalues(np.asarray(vals)), k, dim, "iterative")


@dataclass
class PartialColoringDecomposition:
    """Split of the standardized form under a partial +-1 assignment."""

    conditioned: tuple[int, ...]
    assignment: tuple[int, ...]
    constant: float                         # conditioned-pair part
    linear: dict[int, float]                # coefficient per free vertex
    sigma_rho_sq: float                     # variance of the linear part
    quadratic_pairs: dict[tuple[int, int], int]
    sigma: float

    def evaluate(self, coloring) -> float:
        """Re-sum constant + linear + quadratic at a full +-1 coloring."""
        x = np.asarray(coloring, dtype=np.float64)
        acc = self.constant
        for v, cv in self.linear.items():
            acc += cv * x[v]
        for (u, v), d in self.quadratic_pairs.items():
            acc += d * x[u] * x[v] / (4.0 * self.sigma)
        return acc


def decompose(g: Graph, idx: InfluenceIndex, conditioned, assignment) -> PartialColoringDecomposition:
    """Constant/linear/quadratic split after fixing colors on `conditioned`.

    constant = sum over conditioned pairs of D_uv rho_u rho_v / (4 sigma);
    each free vertex v gets linear coefficient
    sum over conditioned u of D_uv rho_u / (4 sigma); the quadratic part
    keeps the pairs outside the conditioned set.
    """
    form = TriangleForm.from_index(g, idx)
    conditioned = tuple(conditioned)
    if len(set(conditioned)) != len(conditioned):
        raise UsageError("conditioned vertices must be distinct")
    rho = {v: s for v, s in zip(conditioned, assignment)}
    if any(s not in (-1, 1) for s in rho.values()):
        raise UsageError("assignments must be +-1")
    inside = set(conditioned)
    constant = 0.0
    linear: dict[int, float] = {}
    quad: dict[tuple[int, int], int] = {}
    denom = 4.0 * form.sigma
    for (u, v), d in form.pair_entries.items():
        u_in, v_in = u in inside, v in inside
        if u_in and v_in:
            constant += d * rho[u] * rho[v] / denom
        elif u_in:
            linear[v] = linear.get(v, 0.0) + d * rho[u] / denom
        elif v_in:
            linear[u] = linear.get(u, 0.0) + d * rho[v] / denom
        else:
            quad[(u, v)] = d
    sigma_rho_sq = sum(c * c for c in linear.values())
    return PartialColoringDecomposition(
        conditioned=conditioned, assignment=tuple(assignment),
        constant=constant, linear=linear, sigma_rho_sq=sigma_rho_sq,
        quadratic_pairs=quad, sigma=form.sigma)


@dataclass
class MixtureComponent:
    assignment: tuple[int, ...]
    mean: float
    variance: float
    weight: float


def mixture_limit(g: Graph, idx: InfluenceIndex, conditioned) -> list[MixtureComponent]:
    """Predicted Gaussian-mixture limit after conditioning.

    One component per assignment rho of the conditioned set: mean is the
    conditioned-pair constant, variance is the linear-part variance plus
    the exact Gaussian variance of the reduced quadratic part (no
    eigenvalue truncation), weight 2^-|I|.
    """
    conditioned = tuple(conditioned)
    if len(conditioned) > MAX_CONDITIONED:
        raise CapabilityError(f"conditioning capped at {MAX_CONDITIONED} vertices")
    form = TriangleForm.from_index(g, idx)
    eta_sq = form.reduced_gaussian_variance(frozenset(conditioned))
    out = []
    weight = 0.5 ** len(conditioned)
    for bits in range(1 << len(conditioned)):
        assignment = tuple(1 if bits & (1 << i) else -1
                           for i in range(len(conditioned)))
        dec = decompose(g, idx, conditioned, assignment)
        out.append(MixtureComponent(assignment=assignment, mean=dec.constant,
                                    variance=dec.sigma_rho_sq + eta_sq,
                                    weight=weight))
    return out


def gaussian_fourth_from_spectrum(spec: Spectrum) -> float:
    """E[(sum lambda (M^2-1))^4] from eigenvalues: 60 S4 + 24 sum_{i<j} l_i^2 l_j^2."""
    lam2 = spec.eigenvalues**2
    s2 = float(np.sum(lam2))
    s4 = float(np.sum(lam2**2))
    return 60.0 * s4 + 12.0 * (s2 * s2 - s4)
