"""Monte Carlo sampling of the count statistic and normality distances.

Sample i's coloring is derived from a counter-based generator keyed by
(seed, i), so runs are reproducible bit for bit regardless of how the
sample range is partitioned across workers.  Standardization always uses
the exact mean and standard deviation, never sample estimates.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.special import erfc as _erfc

from . import _kernels
from .errors import DegenerateVarianceError, UsageError
from .forms import monochromatic_count
from .graphs import Graph
from .moments import distribution_histogram, rational_json
from .patterns import InfluenceIndex, Pattern, enumerate_copies


def normal_cdf(t: float) -> float:
    """Standard normal CDF via the complementary error function."""
    return 0.5 * math.erfc(-t / math.sqrt(2.0))


@dataclass
class SampleRun:
    """One Monte Carlo run with its provenance and summary statistics."""

    seed: int
    count: int
    workers: int
    exact_mean: float
    exact_sigma: float
    empirical_mean: float
    empirical_variance: float
    standardized_moments: dict[int, float]
    dkol: float
    standardized_sorted: np.ndarray = field(repr=False)
    raw_counts: np.ndarray = field(repr=False)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "count": self.count,
            "workers": self.workers,
            "exact_mean": self.exact_mean,
            "exact_sigma": self.exact_sigma,
            "empirical_mean": self.empirical_mean,
            "empirical_variance": self.empirical_variance,
            "standardized_moments": {str(k): v
                                     for k, v in self.standardized_moments.items()},
            "empirical_dkol": self.dkol,
        }


def _sample_chunk(copies_arr, seed, start, count, nv):
    colors = _kernels.coloring_matrix(seed, start, count, nv)
    return _kernels.mono_counts(copies_arr, colors)


def sample_T(g: Graph, h: Pattern, count: int, seed: int = 0,
             idx: InfluenceIndex | None = None, workers: int = 1,
             exact_mean: Fraction | None = None,
             exact_var: Fraction | None = None) -> SampleRun:
    """Sample the monochromatic count `count` times.

    T is evaluated against the cached copy list (monochromatic membership
    per copy); when the list is unavailable the per-sample color classes
    are re-enumerated, which is far slower but uncapped.
    """
    if count < 1:
        raise UsageError("sample count must be >= 1")
    if idx is None:
        idx = enumerate_copies(g, h)
    if exact_mean is None:
        exact_mean = Fraction(idx.n_copies, 2 ** (h.r - 1))
    if exact_var is None:
        from .forms import variance_from_index
        exact_var = variance_from_index(idx)
    if exact_var <= 0:
        raise DegenerateVarianceError("zero variance: nothing to standardize")
    nv = g.vertex_count
    if idx.copies is not None:
        copies_arr = np.asarray(idx.copies, dtype=np.int64).reshape(idx.n_copies, h.r)
        chunk = max(1, min(count, 1 << 14))
        starts = list(range(0, count, chunk))
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(
                    lambda s: _sample_chunk(copies_arr, seed, s,
                                            min(chunk, count - s), nv),
                    starts))
        else:
            parts = [_sample_chunk(copies_arr, seed, s, min(chunk, count - s), nv)
                     for s in starts]
        counts = np.concatenate(parts)
    else:
        counts = np.empty(count, dtype=np.int64)
        for i in range(count):
            colors = _kernels.coloring_matrix(seed, i, 1, nv)[0]
            counts[i] = monochromatic_count(g, h, colors)
    mu = float(exact_mean)
    sigma = math.sqrt(float(exact_var))
    z = (counts - mu) / sigma
    z_sorted = np.sort(z)
    std_moments = {k: float(np.mean(z**k)) for k in range(1, 7)}
    run = SampleRun(
        seed=seed, count=count, workers=workers, exact_mean=mu,
        exact_sigma=sigma, empirical_mean=float(np.mean(counts)),
        empirical_variance=float(np.var(counts)),
        standardized_moments=std_moments,
        dkol=_dkol_sorted(z_sorted),
        standardized_sorted=z_sorted, raw_counts=counts)
    return run


def _dkol_sorted(z_sorted: np.ndarray) -> float:
    """KS statistic against the standard normal, both one-sided gaps.

    The sampled statistic is lattice-valued, so both |i/N - Phi| and
    |(i-1)/N - Phi| at each order statistic are required.
    """
    n = len(z_sorted)
    phi = 0.5 * _erfc(-z_sorted / math.sqrt(2.0))
    hi = np.arange(1, n + 1) / n
    lo = np.arange(0, n) / n
    return float(np.max(np.maximum(np.abs(hi - phi), np.abs(lo - phi))))


def empirical_dkol(run: SampleRun) -> float:
    if run.count == 0:
        raise UsageError("empty sample run")
    return run.dkol


def moment_report(run: SampleRun, k: int = 6):
    """Empirical central moments packaged as a monte-carlo MomentReport.

    The rationals are the exact binary representations of the computed
    floats; extras record the sample count so they are never mistaken for
    exact-identity values.
    """
    from .moments import MomentReport, _normalize

    counts = run.raw_counts.astype(np.float64)
    emp_mean = counts.mean()
    central = {j: Fraction(float(np.mean((counts - emp_mean) ** j)))
               for j in range(2, k + 1)}
    rep = MomentReport(kernel="rademacher", method="monte-carlo", order=k,
                       mean=Fraction(float(emp_mean)), central=central,
                       variance=central[2],
                       extras={"samples": run.count, "seed": run.seed,
                               "empirical": True})
    _normalize(rep)
    return rep


@dataclass
class ExactDistribution:
    """Full distribution of T with exact atom probabilities."""

    atoms: list[tuple[int, Fraction]]
    mean: Fraction
    variance: Fraction
    dkol: float | None
    conditioned_on: dict[int, int] | None = None

    def to_json(self) -> dict:
        return {
            "atoms": [{"value": t, "prob": rational_json(p)} for t, p in self.atoms],
            "mean": rational_json(self.mean),
            "variance": rational_json(self.variance),
            "exact_dkol": self.dkol,
            "conditioned_on": self.conditioned_on,
        }


def exact_distribution(g: Graph, h: Pattern, idx: InfluenceIndex | None = None,
                       condition: dict[int, int] | None = None) -> ExactDistribution:
    """Exact atoms of T by full enumeration (hosts up to 26 vertices).

    With `condition` mapping vertices to +-1 colors, the conditional
    distribution given those colors is returned.  The Kolmogorov distance
    checks both one-sided limits of the standardized CDF at every atom;
    standardization uses the unconditional mean and variance.
    """
    if idx is None:
        idx = enumerate_copies(g, h)
    hist = distribution_histogram(g, idx, fixed=condition)
    denom = int(hist.sum())
    if denom == 0:
        raise UsageError("conditioning is unsatisfiable")
    atoms = [(t, Fraction(int(c), denom)) for t, c in enumerate(hist) if c]
    mean = sum((p * t for t, p in atoms), Fraction(0))
    var = sum((p * (t - mean) ** 2 for t, p in atoms), Fraction(0))
    # standardize against the unconditional moments
    full_hist = hist if condition is None else distribution_histogram(g, idx)
    full_denom = int(full_hist.sum())
    full_atoms = [(t, Fraction(int(c), full_denom)) for t, c in enumerate(full_hist) if c]
    full_mean = sum((p * t for t, p in full_atoms), Fraction(0))
    full_var = sum((p * (t - full_mean) ** 2 for t, p in full_atoms), Fraction(0))
    dk = None
    if full_var > 0:
        sigma = math.sqrt(float(full_var))
        dk = 0.0
        cdf = Fraction(0)
        for t, p in atoms:
            z = (t - float(full_mean)) / sigma
            phi = normal_cdf(z)
            dk = max(dk, abs(float(cdf) - phi))          # left limit
            cdf += p
            dk = max(dk, abs(float(cdf) - phi))          # right value
    return ExactDistribution(atoms=atoms, mean=mean, variance=var, dkol=dk,
                             conditioned_on=condition)


def histogram_csv(run: SampleRun, bins: int = 60) -> str:
    """'bin_left,bin_right,count' rows over the standardized samples."""
    z = run.standardized_sorted
    lo, hi = float(z[0]), float(z[-1])
    if lo == hi:
        hi = lo + 1.0
    counts, edges = np.histogram(z, bins=bins, range=(lo, hi))
    lines = ["bin_left,bin_right,count"]
    for i, c in enumerate(counts):
        lines.append(f"{edges[i]:.6g},{edges[i + 1]:.6g},{int(c)}")
    return "\n".join(lines) + "\n"
