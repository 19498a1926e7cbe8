"""Exact and asymptotic moments of the standardized monochromatic count.

Three independent routes are kept and cross-asserted:
  * brute force over all colorings (the oracle, hosts up to 26 vertices),
  * tuple-kernel sums over ordered monomial tuples (Rademacher/Gaussian),
  * triangle closed forms driven by weighted cycle sums (scales to large
    hosts; the fourth-moment form is exact, the sixth is an itemized
    asymptotic estimate with genuinely omitted terms).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb, factorial, floor

import numpy as np

from . import _kernels
from .errors import CapabilityError, DegenerateVarianceError, UsageError
from .forms import MultilinearForm
from .graphs import Graph
from .patterns import InfluenceIndex, Pattern

BRUTEFORCE_VERTEX_CAP = 26
DEFAULT_KERNEL_CAPS = {2: 10**6, 3: 3000, 4: 3000, 5: 64, 6: 32}
DEFAULT_JOIN_CAP = 10**9
INT64_GUARD = 2**62


def rational_json(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator), "float": float(x)}


@dataclass
class MomentReport:
    """Central and normalized moments with their provenance."""

    kernel: str            # rademacher | gaussian
    method: str            # bruteforce | tuple-kernel | closed-form | monte-carlo
    order: int
    mean: Fraction
    central: dict[int, Fraction]
    variance: Fraction
    normalized_even: dict[int, Fraction] = field(default_factory=dict)
    normalized_float: dict[int, float] = field(default_factory=dict)
    extras: dict = field(default_factory=dict)

    @property
    def fourth_discrepancy(self) -> Fraction | None:
        z4 = self.normalized_even.get(4)
        return None if z4 is None else z4 - 3

    def to_json(self) -> dict:
        out = {
            "kernel": self.kernel,
            "method": self.method,
            "order": self.order,
            "mean": rational_json(self.mean),
            "variance": rational_json(self.variance),
            "central": {str(k): rational_json(v) for k, v in self.central.items()},
            "normalized": {str(k): (rational_json(v) if isinstance(v, Fraction)
                                    else v)
                           for k, v in {**self.normalized_float,
                                        **self.normalized_even}.items()},
        }
        if self.fourth_discrepancy is not None:
            out["fourth_discrepancy"] = rational_json(self.fourth_discrepancy)
        if self.extras:
            out["extras"] = {k: (rational_json(v) if isinstance(v, Fraction) else v)
                             for k, v in self.extras.items()}
        return out


def _normalize(report: MomentReport):
    var = report.variance
    if var == 0:
        return
    sig = float(var) ** 0.5
    for k, mu in report.central.items():
        if k == 2:
            continue
        if k % 2 == 0:
            report.normalized_even[k] = mu / var ** (k // 2)
        else:
            report.normalized_float[k] = float(mu) / sig**k
    report.normalized_even[2] = Fraction(1)


def distribution_histogram(g: Graph, idx: InfluenceIndex,
                           fixed: dict[int, int] | None = None) -> np.ndarray:
    """Coloring counts per value of T (optionally with some colors fixed)."""
    if g.vertex_count > BRUTEFORCE_VERTEX_CAP:
        raise CapabilityError(
            f"brute force capped at {BRUTEFORCE_VERTEX_CAP} vertices; "
            "use the tuple kernel, closed form, or monte-carlo instead")
    if idx.copies is None:
        raise CapabilityError("copy list unavailable (cache cap exceeded)")
    masks = np.zeros(max(len(idx.copies), 1), dtype=np.uint32)
    for j, verts in enumerate(idx.copies):
        m = 0
        for v in verts:
            m |= 1 << v
        masks[j] = m
    masks = masks[: len(idx.copies)]
    if fixed:
        fixmask = 0
        fixval = 0
        for v, s in fixed.items():
            fixmask |= 1 << v
            if s > 0:
                fixval |= 1 << v
        return _kernels.tally_distribution(masks, g.vertex_count, fixmask, fixval)
    # fix vertex 0 = +1: global flip symmetry halves the work
    half = _kernels.tally_distribution(masks, g.vertex_count, 1, 0)
    return half * 2


def _moments_from_histogram(hist, denom: int, k_max: int):
    total = int(hist.sum())
    assert total == denom
    mean = Fraction(sum(int(c) * t for t, c in enumerate(hist)), denom)
    central = {}
    for k in range(2, k_max + 1):
        acc = Fraction(0)
        for t, c in enumerate(hist):
            if c:
                acc += int(c) * (t - mean) ** k
        central[k] = acc / denom
    return mean, central


def exact_moments_bruteforce(g: Graph, idx: InfluenceIndex, k: int = 4) -> MomentReport:
    """Oracle: exact central moments by iterating every coloring."""
    if not 2 <= k <= 8:
        raise UsageError("brute-force moment order must be 2..8")
    hist = distribution_histogram(g, idx)
    denom = 2 ** g.vertex_count
    mean, central = _moments_from_histogram(hist, denom, k)
    report = MomentReport(kernel="rademacher", method="bruteforce", order=k,
                          mean=mean, central=central, variance=central[2])
    _normalize(report)
    return report


# ---------------------------------------------------------------------------
# tuple-kernel engine


def _int_monomials(form: MultilinearForm):
    """Monomials as (frozenset, integer numerator) with common denominator 2^(r-1)."""
    denom = 2 ** (form.r - 1)
    mono = []
    for w, a in form.coeffs.items():
        num = a * denom
        if num.denominator != 1:
            raise AssertionError("form coefficients are not D/2^(r-1) rationals")
        if num != 0:
            mono.append((frozenset(w), int(num)))
    return mono, denom


def _double_factorial(m: int) -> int:
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def _leaf_factor(mults: dict[int, int], kernel: str) -> int:
    if kernel == "rademacher":
        return 1 if all(m % 2 == 0 for m in mults.values()) else 0
    out = 1
    for m in mults.values():
        if m % 2:
            return 0
        out *= _double_factorial(m - 1)
    return out


def _kernel_k2(mono):
    return sum(num * num for _, num in mono)


def _kernel_k3(mono, lookup):
    total = 0
    for w1, n1 in mono:
        for w2, n2 in mono:
            n3 = lookup.get(w1 ^ w2)
            if n3:
                total += n1 * n2 * n3
    return total


def _kernel_k4_rademacher(mono):
    classes: dict[frozenset, int] = {}
    for w1, n1 in mono:
        for w2, n2 in mono:
            key = w1 ^ w2
            classes[key] = classes.get(key, 0) + n1 * n2
    return sum(v * v for v in classes.values())


def _kernel_k4_gaussian(mono):
    # Pairs-of-pairs with equal odd-vertex signature; a vertex covered by
    # both monomials of both pairs has multiplicity 4 and contributes a
    # double-factorial factor 3 = sum over subsets of weight 2^|S|.
    classes: dict[tuple[frozenset, frozenset], int] = {}
    for w1, n1 in mono:
        for w2, n2 in mono:
            sig = w1 ^ w2
            both = w1 & w2
            prod = n1 * n2
            for m in range(len(both) + 1):
                for sub in combinations(sorted(both), m):
                    key = (sig, frozenset(sub))
                    classes[key] = classes.get(key, 0) + prod
    total = 0
    for (sig, sub), q in classes.items():
        total += (1 << len(sub)) * q * q
    return total


def _kernel_dfs(mono, lookup, k: int, kernel: str):
    """Ordered k-tuple sum via depth (k-1) search plus a final parity lookup."""
    total = 0
    idx_count = len(mono)
    chosen = [0] * (k - 1)
    wmax = max(len(w) for w, _ in mono)

    def rec(depth: int, acc: int, odd: frozenset):
        nonlocal total
        if depth == k - 1:
            # last monomial must equal the odd-multiplicity set exactly
            n_last = lookup.get(odd)
            if not n_last:
                return
            mults: dict[int, int] = {}
            for i in chosen:
                for v in mono[i][0]:
                    mults[v] = mults.get(v, 0) + 1
            for v in odd:
                mults[v] = mults.get(v, 0) + 1
            f = _leaf_factor(mults, kernel)
            if f:
                total += acc * n_last * f
            return
        picks_left = k - depth - 1  # further picks incl. the final lookup
        for i in range(idx_count):
            w, n = mono[i]
            new_odd = odd ^ w
            if len(new_odd) > picks_left * wmax:
                continue
            chosen[depth] = i
            rec(depth + 1, acc * n, new_odd)

    rec(0, 1, frozenset())
    return total


def exact_moments_kernel(form: MultilinearForm, k: int = 4,
                         kernel: str = "rademacher",
                         caps: dict[int, int] | None = None) -> MomentReport:
    """Exact central moments by summing ordered k-tuples of monomials.

    Per-vertex multiplicities decide each tuple's contribution: Rademacher
    keeps even-multiplicity tuples with weight 1; Gaussian weighs each even
    multiplicity m by (m-1)!!.  Work is capped per order (the k=4 default is
    3000 monomials via the meet-in-the-middle path).
    """
    if kernel not in ("rademacher", "gaussian"):
        raise UsageError(f"unknown kernel {kernel!r}")
    if not 2 <= k <= 6:
        raise UsageError("tuple-kernel moment order must be 2..6")
    caps = caps or DEFAULT_KERNEL_CAPS
    mono, denom = _int_monomials(form)
    central: dict[int, Fraction] = {}
    for order in range(2, k + 1):
        cap = caps.get(order, 0)
        if len(mono) > cap:
            raise CapabilityError(
                f"{len(mono)} monomials exceeds tuple-kernel cap {cap} at order {order}")
        lookup = {w: n for w, n in mono}
        if order == 2:
            raw = _kernel_k2(mono)
        elif order == 3:
            raw = _kernel_k3(mono, lookup)
        elif order == 4 and kernel == "rademacher":
            raw = _kernel_k4_rademacher(mono)
        elif order == 4:
            raw = _kernel_k4_gaussian(mono)
        else:
            raw = _kernel_dfs(mono, lookup, order, kernel)
        central[order] = Fraction(raw, denom**order)
    report = MomentReport(kernel=kernel, method="tuple-kernel", order=k,
                          mean=form.constant, central=central,
                          variance=central[2])
    _normalize(report)
    return report


# ---------------------------------------------------------------------------
# triangle closed forms


def _edge_weight_csr(g: Graph, idx: InfluenceIndex) -> np.ndarray:
    indptr, indices = g.csr
    weights = np.zeros(len(indices), dtype=np.int64)
    for v in range(g.vertex_count):
        for kk in range(int(indptr[v]), int(indptr[v + 1])):
            u = int(indices[kk])
            key = (v, u) if v < u else (u, v)
            weights[kk] = idx.d.get(key, 0)
    return weights


def _require_triangle(h: Pattern):
    if not h.is_triangle:
        raise UsageError("closed forms apply to the triangle pattern only")


def _edge_influences(idx: InfluenceIndex) -> list[int]:
    return [c for w, c in idx.d.items() if len(w) == 2 and c > 0]


def triangle_fourth_closed_form(g: Graph, h: Pattern, idx: InfluenceIndex) -> MomentReport:
    """Exact fourth moment of the standardized triangle count.

    For the centered quadratic T' (4 times the centered count, coefficients
    D_e on edges), the ordered 4-tuples of edges with all vertex
    multiplicities even are: one edge repeated four times, two edges twice
    each, or the edge set of a 4-cycle.  Hence
        E[T'^4] = 3*(sum D_e^2)^2 - 2*sum D_e^4 + 24*sum over 4-cycles prod D_e
    exactly (no remainder), and E[Z^4] divides by (sum D_e^2)^2.
    """
    _require_triangle(h)
    des = _edge_influences(idx)
    s2 = sum(d * d for d in des)
    if s2 == 0:
        raise DegenerateVarianceError("no triangles: fourth moment undefined")
    s4 = sum(d**4 for d in des)
    maxd = max(des)
    indptr, indices = g.csr
    weights = _edge_weight_csr(g, idx)
    need_exact = 4 * s2 * s2 * (1 + maxd * maxd) >= INT64_GUARD
    c4_count, c4_prod, c4_prod_inner = _kernels.c4_weighted(
        indptr, indices, weights, exact=need_exact)
    unnorm = 3 * s2 * s2 - 2 * s4 + 24 * c4_prod
    z4 = Fraction(unnorm, s2 * s2)
    var = Fraction(s2, 16)
    mu4 = z4 * var * var
    report = MomentReport(kernel="rademacher", method="closed-form", order=4,
                          mean=Fraction(idx.n_copies, 4),
                          central={2: var, 4: mu4}, variance=var,
                          extras={
                              "sum_d2": s2, "sum_d4": s4,
                              "c4_count": c4_count, "c4_weighted_sum": c4_prod,
                              "c4_inner_weighted_sum": c4_prod_inner,
                          })
    _normalize(report)
    return report


def triangle_fourth_gaussian_closed_form(g: Graph, h: Pattern,
                                         idx: InfluenceIndex) -> Fraction:
    """Exact Gaussian fourth moment E[Ztilde(N)^4] for the triangle form.

    Same tuple classification as the Rademacher closed form, but a vertex
    of multiplicity four now carries the double-factorial weight 3: repeats
    of one edge weigh 9, adjacent two-edge pairs weigh 3, giving
        E = (3 S2^2 - 6 S4 + 6 sum_u s_u^2 + 24 C4) / S2^2,
    with s_u the sum of squared influences of edges at u.
    """
    _require_triangle(h)
    des_map = {w: c for w, c in idx.d.items() if len(w) == 2 and c > 0}
    s2 = sum(d * d for d in des_map.values())
    if s2 == 0:
        raise DegenerateVarianceError("no triangles: fourth moment undefined")
    s4 = sum(d**4 for d in des_map.values())
    su = [0] * g.vertex_count
    for (u, v), d in des_map.items():
        su[u] += d * d
        su[v] += d * d
    sum_su2 = sum(x * x for x in su)
    maxd = max(des_map.values())
    indptr, indices = g.csr
    weights = _edge_weight_csr(g, idx)
    need_exact = 4 * s2 * s2 * (1 + maxd * maxd) >= INT64_GUARD
    _, c4_prod, _ = _kernels.c4_weighted(indptr, indices, weights,
                                         exact=need_exact)
    return Fraction(3 * s2 * s2 - 6 * s4 + 6 * sum_su2 + 24 * c4_prod, s2 * s2)


@dataclass
class SixthMomentEstimate:
    """Itemized asymptotic sixth-moment terms for the triangle count.

    The four displayed terms are evaluated exactly, but their sum is an
    estimate: even 6-edge configurations such as pairs of edge-disjoint
    triangles are genuinely omitted, so the brute-force or simulated value
    is the reference.
    """

    sum_d2: int
    sum_d6: int
    c4_count: int
    c4_prod_inner: int
    c6_count: int
    c6_prod: int
    is_asymptotic: bool = True

    @property
    def term_c6(self) -> int:
        return 720 * self.c6_prod

    @property
    def term_c4(self) -> int:
        return -240 * self.c4_prod_inner

    @property
    def term_s2_cubed(self) -> int:
        return 15 * self.sum_d2**3

    @property
    def term_d6(self) -> int:
        return 16 * self.sum_d6

    @property
    def estimate_unnormalized(self) -> int:
        return self.term_c6 + self.term_c4 + self.term_s2_cubed + self.term_d6

    @property
    def estimate_normalized(self) -> Fraction:
        return Fraction(self.estimate_unnormalized, self.sum_d2**3)

    def to_json(self) -> dict:
        return {
            "is_asymptotic": True,
            "terms": {
                "c6_cycles": {"count": self.c6_count, "value": str(self.term_c6)},
                "c4_cycles": {"count": self.c4_count, "value": str(self.term_c4)},
                "s2_cubed": {"value": str(self.term_s2_cubed)},
                "d6": {"value": str(self.term_d6)},
            },
            "estimate_unnormalized": str(self.estimate_unnormalized),
            "estimate_normalized": rational_json(self.estimate_normalized),
        }


def triangle_sixth_asymptotic(g: Graph, h: Pattern, idx: InfluenceIndex) -> SixthMomentEstimate:
    """Evaluate the four displayed sixth-moment terms exactly, itemized."""
    _require_triangle(h)
    des = _edge_influences(idx)
    s2 = sum(d * d for d in des)
    if s2 == 0:
        raise DegenerateVarianceError("no triangles: sixth moment undefined")
    s6 = sum(d**6 for d in des)
    maxd = max(des)
    indptr, indices = g.csr
    weights = _edge_weight_csr(g, idx)
    need_exact = 4 * s2 * s2 * (1 + maxd * maxd) >= INT64_GUARD or \
        4 * s2**3 >= INT64_GUARD
    c4_count, _c4_prod, c4_prod_inner = _kernels.c4_weighted(
        indptr, indices, weights, exact=need_exact)
    c6_count, c6_prod = _kernels.c6_weighted(indptr, indices, weights,
                                             exact=need_exact)
    return SixthMomentEstimate(sum_d2=s2, sum_d6=s6, c4_count=c4_count,
                               c4_prod_inner=c4_prod_inner,
                               c6_count=c6_count, c6_prod=c6_prod)


# ---------------------------------------------------------------------------
# inclusion-exclusion over copy tuples (good joins)


def _components_union(sets) -> list[frozenset]:
    """Connected components of the overlap graph on the given vertex sets."""
    comps: list[set] = []
    for s in sets:
        hits = [c for c in comps if c & s]
        merged = set(s)
        for c in hits:
            merged |= c
            comps.remove(c)
        comps.append(merged)
    return [frozenset(c) for c in comps]


def pie4(sets, r: int) -> Fraction:
    """E of the product of four centered monochromatic indicators.

    Corrected inclusion-exclusion: each subset A of the four copies
    contributes (-1)^(4-|A|) 2^((1-r)(4-|A|)) times the probability that
    every copy in A is monochromatic, which factorizes as 2^(1-|V(C)|) over
    the connected components C of A's overlap graph.
    """
    sets = [frozenset(s) for s in sets]
    if len(sets) != 4 or any(len(s) != r for s in sets):
        raise UsageError("pie4 expects four vertex sets of the pattern size")
    total = Fraction(0)
    for asize in range(5):
        for picks in combinations(range(4), asize):
            chosen = [sets[i] for i in picks]
            prob = Fraction(1)
            for c in _components_union(chosen):
                prob *= Fraction(2, 2 ** len(c))
            sign = -1 if (4 - asize) % 2 else 1
            total += sign * Fraction(1, 2 ** ((r - 1) * (4 - asize))) * prob
    return total


def pie4_printed(sets, r: int) -> Fraction:
    """Uncorrected closed form, kept for the erratum comparison.

    Its constant term 2^(5-4r) overstates the empty-subset contribution by
    2^(4-4r), and it treats every union as a single connected component.
    """
    sets = [frozenset(s) for s in sets]
    union_all = frozenset().union(*sets)
    total = -Fraction(2 ** 5, 2 ** (4 * r))
    for i, j in combinations(range(4), 2):
        total += Fraction(2**3, 2 ** (2 * r)) * Fraction(1, 2 ** len(sets[i] | sets[j]))
    for i in range(4):
        rest = frozenset().union(*(sets[j] for j in range(4) if j != i))
        total -= Fraction(2**2, 2**r) * Fraction(1, 2 ** len(rest))
    total += Fraction(2, 2 ** len(union_all))
    return total


def pair_expectation(s1, s2, r: int) -> Fraction:
    """E[Z_s1 Z_s2] for two copies (0 when vertex-disjoint)."""
    s1, s2 = frozenset(s1), frozenset(s2)
    if not s1 & s2:
        return Fraction(0)
    return Fraction(2, 2 ** len(s1 | s2)) - Fraction(4, 4**r)


def is_good_join(sets, r: int) -> bool:
    """Cardinality test for a 4-multiset of copies forming a good join.

    Every copy must overlap the union of the others in at least two
    vertices, and the total union must fit within every 2+2 pairing's
    union sizes minus two.
    """
    sets = [frozenset(s) for s in sets]
    union_all = frozenset().union(*sets)
    for i in range(4):
        rest = frozenset().union(*(sets[j] for j in range(4) if j != i))
        if len(union_all) - len(rest) > r - 2:
            return False
    pairings = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
    best = min(len(sets[a] | sets[b]) + len(sets[c] | sets[d]) - 2
               for (a, b), (c, d) in pairings)
    return len(union_all) <= best


def _pairing_sum(sets, r: int) -> Fraction:
    """E12*E34 + E13*E24 + E14*E23 (invariant under reordering the tuple)."""
    e = {}
    for i, j in combinations(range(4), 2):
        e[(i, j)] = pair_expectation(sets[i], sets[j], r)
    return (e[(0, 1)] * e[(2, 3)] + e[(0, 2)] * e[(1, 3)]
            + e[(0, 3)] * e[(1, 2)])


def _is_connected_quadruple(sets) -> bool:
    return len(_components_union(sets)) == 1


def _multiset_perm_count(indices) -> int:
    mult: dict[int, int] = {}
    for i in indices:
        mult[i] = mult.get(i, 0) + 1
    denom = 1
    for m in mult.values():
        denom *= factorial(m)
    return factorial(4) // denom


@dataclass
class JoinCensus:
    """Classification of copy 4-tuples and the fourth-moment decomposition.

    fourth_discrepancy is exact:
      var^2 * (E[Z^4] - 3) = sum over connected ordered 4-tuples of
          (E[prod Z] - pairing sum),
    disconnected tuples cancel termwise.  The good-join restricted sums are
    reported alongside for transparency, together with the corrected and
    printed values of the identical-quadruple inclusion-exclusion constant.
    """

    n_copies: int
    r: int
    multisets_connected: int
    good_join_multisets: int
    good_join_ordered: int
    profile_counts: dict[str, int]
    sum_quad_connected: Fraction          # ordered sum of E[prod Z]
    sum_pairing_connected: Fraction       # ordered sum of the 3 pair products
    sum_quad_good: Fraction               # same, restricted to good joins
    fourth_discrepancy: Fraction          # (sum_quad - sum_pairing) / var^2
    identical_quadruple_corrected: Fraction
    identical_quadruple_printed: Fraction

    def to_json(self) -> dict:
        return {
            "n_copies": self.n_copies,
            "multisets_connected": self.multisets_connected,
            "good_join_multisets": self.good_join_multisets,
            "good_join_ordered": self.good_join_ordered,
            "profiles": dict(sorted(self.profile_counts.items())),
            "sum_quad_connected": rational_json(self.sum_quad_connected),
            "sum_pairing_connected": rational_json(self.sum_pairing_connected),
            "sum_quad_good_joins": rational_json(self.sum_quad_good),
            "fourth_discrepancy": rational_json(self.fourth_discrepancy),
            "identical_quadruple": {
                "corrected": rational_json(self.identical_quadruple_corrected),
                "printed": rational_json(self.identical_quadruple_printed),
            },
        }


def _profile_label(sets) -> str:
    ov = sorted(len(sets[i] & sets[j]) for i, j in combinations(range(4), 2))
    union = len(frozenset().union(*sets))
    return "ov" + "".join(str(x) for x in ov) + f"_u{union}"


def good_join_census(g: Graph, h: Pattern, idx: InfluenceIndex,
                     var: Fraction, cap: int = DEFAULT_JOIN_CAP) -> JoinCensus:
    """Enumerate overlap-connected 4-multisets of copies and classify them."""
    if idx.copies is None:
        raise CapabilityError("good-join census needs the cached copy list")
    n = idx.n_copies
    if n**4 > cap:
        raise CapabilityError(f"{n}^4 ordered tuples exceed the census cap {cap}")
    if var == 0:
        raise DegenerateVarianceError("zero variance: census undefined")
    r = h.r
    sets = [frozenset(c) for c in idx.copies]
    # overlap adjacency between copies (shared vertex)
    by_vertex: dict[int, list[int]] = {}
    for i, s in enumerate(sets):
        for v in s:
            by_vertex.setdefault(v, []).append(i)
    neighbors: list[set[int]] = [set() for _ in range(n)]
    for members in by_vertex.values():
        for i in members:
            neighbors[i].update(members)
    # components via BFS
    comp_of = [-1] * n
    comps: list[list[int]] = []
    for i in range(n):
        if comp_of[i] != -1:
            continue
        comp = [i]
        comp_of[i] = len(comps)
        stack = [i]
        while stack:
            x = stack.pop()
            for y in neighbors[x]:
                if comp_of[y] == -1:
                    comp_of[y] = len(comps)
                    comp.append(y)
                    stack.append(y)
        comps.append(comp)

    sum_quad = Fraction(0)
    sum_pairing = Fraction(0)
    sum_quad_good = Fraction(0)
    connected_multisets = 0
    good_multisets = 0
    good_ordered = 0
    profiles: dict[str, int] = {}
    for comp in comps:
        for picks in combinations_with_replacement(sorted(comp), 4):
            quad = [sets[i] for i in picks]
            if not _is_connected_quadruple(quad):
                continue
            connected_multisets += 1
            perm = _multiset_perm_count(picks)
            ep = pie4(quad, r)
            psum = _pairing_sum(quad, r)
            sum_quad += perm * ep
            sum_pairing += perm * psum
            label = _profile_label(quad)
            profiles[label] = profiles.get(label, 0) + 1
            if is_good_join(quad, r):
                good_multisets += 1
                good_ordered += perm
                sum_quad_good += perm * ep
    discrepancy = (sum_quad - sum_pairing) / (var * var)
    ident = [frozenset(range(r))] * 4
    return JoinCensus(
        n_copies=n, r=r, multisets_connected=connected_multisets,
        good_join_multisets=good_multisets, good_join_ordered=good_ordered,
        profile_counts=profiles, sum_quad_connected=sum_quad,
        sum_pairing_connected=sum_pairing, sum_quad_good=sum_quad_good,
        fourth_discrepancy=discrepancy,
        identical_quadruple_corrected=pie4(ident, r),
        identical_quadruple_printed=pie4_printed(ident, r))


def fourth_central_moment_by_pie(idx: InfluenceIndex, r: int) -> Fraction:
    """E[(T - E T)^4] as the unrestricted ordered sum of pie4 values."""
    if idx.copies is None:
        raise CapabilityError("needs the cached copy list")
    sets = [frozenset(c) for c in idx.copies]
    total = Fraction(0)
    for picks in combinations_with_replacement(range(len(sets)), 4):
        total += _multiset_perm_count(picks) * pie4([sets[i] for i in picks], r)
    return total


# ---------------------------------------------------------------------------
# the printed specializations of the three-part family


def exbad_printed_fourth(n: int, b: float, c: float, s2: int) -> Fraction:
    """The displayed fourth-moment specialization, taken literally.

    Uses the floored hub/apex counts; omits the hub component's D^4 sum,
    which the exact route includes (the two cancel against the hub 4-cycle
    term, so taking the display literally leaves that term uncancelled).
    """
    m = floor(b * n * n)
    apex = floor(c * n)
    unnorm = 3 * s2 * s2 - 2 * (4 * n**4 + apex**4) + 24 * (n**4 + comb(m, 2))
    return Fraction(unnorm, s2 * s2)


def exbad_printed_sixth(n: int, b: float, c: float, s2: int) -> Fraction:
    apex = floor(c * n)
    unnorm = -240 * 4 * n**6 + 15 * s2**3 + 16 * (4 * n**6 + apex**6)
    return Fraction(unnorm, s2**3)


def exbad_moment_table(ns, b: float, c: float) -> list[dict]:
    """Convergence table: exact vs printed moments, targets 3 and 15 recorded."""
    from .graphs import exbad_full
    from .patterns import enumerate_copies, triangle_pattern

    tri = triangle_pattern()
    rows = []
    for n in ns:
        g = exbad_full(n, b, c)
        idx = enumerate_copies(g, tri)
        fourth = triangle_fourth_closed_form(g, tri, idx)
        sixth = triangle_sixth_asymptotic(g, tri, idx)
        s2 = fourth.extras["sum_d2"]
        z4 = fourth.normalized_even[4]
        printed4 = exbad_printed_fourth(n, b, c, s2)
        printed6 = exbad_printed_sixth(n, b, c, s2)
        z6_est = sixth.estimate_normalized
        rows.append({
            "n": n,
            "hub_count": g.meta["hub_count"],
            "apex_count": g.meta["apex_count"],
            "n_triangles": idx.n_copies,
            "sum_d2": s2,
            "fourth_exact": rational_json(z4),
            "fourth_printed_formula": rational_json(printed4),
            "fourth_exact_minus_printed": rational_json(z4 - printed4),
            "fourth_target": 3.0,
            "sixth_itemized_estimate": rational_json(z6_est),
            "sixth_printed_formula": rational_json(printed6),
            "sixth_estimate_minus_printed": rational_json(z6_est - printed6),
            "sixth_target": 15.0,
            "sixth_terms": sixth.to_json()["terms"],
        })
    return rows
