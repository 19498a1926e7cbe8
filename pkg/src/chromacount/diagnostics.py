"""Verdict engine and bound-kernel evaluation.

Kernels are the bracketed quantities of the quantitative normality bounds,
reported as plain numbers: the absolute constants of those bounds are
implicit, so no kernel value is ever claimed to bound a distance.  Rule
identifiers ("Thm 4.1(1)", "Prop 6.2", ...) are the fixed vocabulary of
the verdict schema.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CapabilityError, DegenerateVarianceError
from .forms import build_form, variance_from_index
from .graphs import Graph
from .moments import (
    exact_moments_kernel,
    rational_json,
    triangle_fourth_closed_form,
    triangle_fourth_gaussian_closed_form,
    triangle_sixth_asymptotic,
)
from .patterns import InfluenceIndex, Pattern, enumerate_copies, influential_sets
from .simulate import sample_T
from .spectral import mixture_limit, triangle_spectrum

RULE_STRONG_PAIR = "Prop 6.2"
RULE_TRIANGLE_EDGE = "Thm 4.1(1)"
RULE_TRIANGLE_SUPPORTED = "Thm 1.2(2)"
RULE_GENERAL_SUPPORTED = "Thm 5.1"
RULE_CONJECTURE = "Conjecture 1.5"
NOTE_SINGLE_VERTEX = ("single influential vertex: conditioning on its color "
                      "preserves the normal limit")

SCHEMA = "chromacount/1"


@dataclass
class Thresholds:
    eps_pair: float = 0.25
    eps_vertex: float = 0.25
    eps_strong: float = 0.1
    moment_tol: float = 0.05
    influential_vertex_bound: int = 16

    def to_json(self) -> dict:
        return self.__dict__.copy()


@dataclass
class BoundKernels:
    """Numeric values of every bound kernel, with formula identifiers."""

    m_vertex: float
    m_pair: float
    m_edge: float
    fourth_discrepancy: float | None          # Rademacher E[Z^4]-3
    gaussian_fourth_discrepancy: float | None
    m4: float | None
    w1: float | None
    d2: float | None
    kol_general: float | None                 # min(w1^(1/2), d2^(1/3)) per vertex
    kol_triangle: float | None                # d2-kernel^(1/2) (triangle only)
    triangle_sqrt: float | None               # (M_edge^(1/2)+Delta)^(1/5)
    triangle_squared: float | None            # (M_edge^2+Delta)^(1/5) variant
    general: float | None                     # (M_pair^2+Delta)^(1/20)
    unavailable: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {k: v for k, v in self.__dict__.items() if k != "unavailable"}
        out["formulas"] = {
            "m4": "sqrt(max(E[Zg^4]-3,0)) + max(E[Zg^4]-3,0)^(1/4)",
            "w1": "max_v[(D_v^2/Var)^(1/4) + D_v*m4]",
            "d2": "max_v[(D_v^2/Var)^(1/4) + m4]",
            "kol_general": "max_v min(w1_v^(1/2), d2_v^(1/3))",
            "kol_triangle": "max_v[(D_v^2/Var)^(1/4) + m4]^(1/2)",
            "triangle_sqrt": "(M_edge^(1/2) + max(E[Z^4]-3,0))^(1/5)",
            "triangle_squared": "(M_edge^2 + max(E[Z^4]-3,0))^(1/5)",
            "general": "(M_pair^2 + max(E[Z^4]-3,0))^(1/20)",
        }
        out["unavailable"] = list(self.unavailable)
        return out


def bound_kernels(g: Graph, h: Pattern, idx: InfluenceIndex,
                  var: Fraction,
                  fourth: Fraction | None,
                  gaussian_fourth: Fraction | None) -> BoundKernels:
    """Evaluate the kernels from exact inputs; missing moments degrade gracefully."""
    if var <= 0:
        raise DegenerateVarianceError("zero variance: kernels undefined")
    sigma = float(var) ** 0.5
    var_f = float(var)
    m_vertex = idx.max_vertex_influence() / sigma
    m_pair = idx.max_pair_influence() / sigma
    edge_pairs = [c for w, c in idx.d.items() if len(w) == 2 and g.has_edge(*w)]
    m_edge = (max(edge_pairs) / sigma) if edge_pairs else 0.0
    unavailable = []

    delta_r = None if fourth is None else max(float(fourth - 3), 0.0)
    if fourth is None:
        unavailable.append("fourth_discrepancy")
    delta_g = None if gaussian_fourth is None else max(float(gaussian_fourth - 3), 0.0)
    m4 = None
    if delta_g is not None:
        m4 = delta_g**0.5 + delta_g**0.25
    else:
        unavailable += ["gaussian_fourth_discrepancy", "m4", "w1", "d2",
                        "kol_general", "kol_triangle"]

    w1 = d2 = kol_general = kol_triangle = None
    if m4 is not None:
        w1 = d2 = kol_general = kol_triangle = 0.0
        for w, dv in idx.d.items():
            if len(w) != 1:
                continue
            base = (dv * dv / var_f) ** 0.25
            w1_v = base + dv * m4
            d2_v = base + m4
            w1 = max(w1, w1_v)
            d2 = max(d2, d2_v)
            kol_general = max(kol_general, min(w1_v**0.5, d2_v ** (1.0 / 3.0)))
            kol_triangle = max(kol_triangle, d2_v**0.5)
        if not h.is_triangle:
            kol_triangle = None

    triangle_sqrt = triangle_squared = None
    if h.is_triangle and delta_r is not None:
        triangle_sqrt = (m_edge**0.5 + delta_r) ** 0.2
        triangle_squared = (m_edge**2 + delta_r) ** 0.2
    general = None
    if delta_r is not None:
        general = (m_pair**2 + delta_r) ** 0.05
    else:
        unavailable += ["triangle_sqrt", "triangle_squared", "general"]

    return BoundKernels(
        m_vertex=m_vertex, m_pair=m_pair, m_edge=m_edge,
        fourth_discrepancy=None if fourth is None else float(fourth - 3),
        gaussian_fourth_discrepancy=(None if gaussian_fourth is None
                                     else float(gaussian_fourth - 3)),
        m4=m4, w1=w1, d2=d2, kol_general=kol_general,
        kol_triangle=kol_triangle, triangle_sqrt=triangle_sqrt,
        triangle_squared=triangle_squared, general=general,
        unavailable=unavailable)


@dataclass
class Verdict:
    classification: str          # clt_supported | clt_precluded | inconclusive
    rule: str
    notes: list[str]
    evidence: dict

    def to_json(self) -> dict:
        return {"classification": self.classification, "rule": self.rule,
                "notes": self.notes, "evidence": self.evidence}


def verdict(g: Graph, h: Pattern, idx: InfluenceIndex, var: Fraction,
            fourth: Fraction | None,
            thresholds: Thresholds | None = None,
            lambda1: float | None = None) -> Verdict:
    """Decision tree over influence structure and the fourth moment.

    Triangle hosts with an influential edge and a bounded influential-vertex
    set are classified by the sharp triangle rule before the strong-pair
    rule fires; the strong-pair flag is always recorded in the evidence.
    """
    th = thresholds or Thresholds()
    if var <= 0:
        return Verdict("inconclusive", "degenerate",
                       ["zero variance: statistic is constant"],
                       {"variance": 0.0})
    sigma = float(var) ** 0.5
    sets = influential_sets(idx, sigma, idx.n_copies, th.eps_pair, g=g,
                            eps_strong=th.eps_strong)
    vertices = [v for v in sets.vertices
                if idx.influence(v) >= th.eps_vertex * sigma]
    evidence = {
        "max_vertex_ratio": sets.max_vertex_ratio,
        "max_pair_ratio": sets.max_pair_ratio,
        "strong_influence_ratio": (idx.max_pair_influence() / idx.n_copies
                                   if idx.n_copies else 0.0),
        "influential_vertex_count": len(vertices),
        "influential_vertices": list(vertices),
        "influential_pairs": [list(p) for p in sets.pairs],
        "influential_edges": [list(p) for p in sets.edges],
        "strongly_influential_pairs": [list(p) for p in sets.strong_pairs],
        "strong_rule": RULE_STRONG_PAIR if sets.strong_pairs else None,
        "fourth_discrepancy": None if fourth is None else float(fourth - 3),
        "lambda1": lambda1,
        "n_copies": idx.n_copies,
    }
    notes = []
    if sets.strong_pairs:
        notes.append(f"strongly influential pair present ({RULE_STRONG_PAIR})")

    if h.is_triangle and sets.edges and len(vertices) <= th.influential_vertex_bound:
        return Verdict("clt_precluded", RULE_TRIANGLE_EDGE, notes, evidence)
    if sets.strong_pairs:
        return Verdict("clt_precluded", RULE_STRONG_PAIR, notes, evidence)
    if not sets.pairs and fourth is not None and abs(float(fourth - 3)) <= th.moment_tol:
        rule = RULE_TRIANGLE_SUPPORTED if h.is_triangle else RULE_GENERAL_SUPPORTED
        if len(vertices) == 1:
            notes.append(NOTE_SINGLE_VERTEX)
        elif vertices:
            notes.append(f"{len(vertices)} influential vertices present")
        return Verdict("clt_supported", rule, notes, evidence)
    if sets.pairs and not h.is_triangle:
        notes.append(f"influential pair with non-triangle pattern: {RULE_CONJECTURE} "
                     "conjectures no CLT")
        return Verdict("inconclusive", RULE_CONJECTURE, notes, evidence)
    notes.append("no rule fired at the configured thresholds")
    return Verdict("inconclusive", "none", notes, evidence)


def _conditioning_set(idx: InfluenceIndex, sigma: float, eps: float,
                      cap: int) -> tuple[int, ...]:
    """Vertices participating in eps-influential pairs, capped."""
    verts: set[int] = set()
    for w, c in idx.d.items():
        if len(w) == 2 and c >= eps * sigma:
            verts.update(w)
    return tuple(sorted(verts))[:cap]


def report(g: Graph, h: Pattern, thresholds: Thresholds | None = None,
           samples: int = 0, seed: int = 0, kernel_order: int = 4,
           deterministic: bool = False) -> dict:
    """Aggregate diagnostics into one JSON document.

    Component capability errors are recorded as "unavailable" markers
    instead of aborting the report.
    """
    th = thresholds or Thresholds()
    t0 = time.time()
    out: dict = {
        "schema": SCHEMA,
        "graph": {
            "vertices": g.vertex_count,
            "edges": g.edge_count,
            "meta": {k: v for k, v in g.meta.items() if not k.startswith("_")},
        },
        "pattern": {"name": h.name, "r": h.r,
                    "automorphisms": h.automorphism_count},
        "thresholds": th.to_json(),
    }
    idx = enumerate_copies(g, h)
    out["copies"] = {"count": idx.n_copies,
                     "subset_sizes_limited": idx.subset_sizes_limited}
    try:
        var = variance_from_index(idx)
    except CapabilityError as exc:
        out["variance"] = {"unavailable": str(exc)}
        return out
    out["variance"] = rational_json(var) if var > 0 else {"degenerate": True}
    out["mean"] = rational_json(Fraction(idx.n_copies, 2 ** (h.r - 1)))
    if var == 0:
        out["verdict"] = verdict(g, h, idx, var, None, th).to_json()
        if not deterministic:
            out["timings"] = {"total_s": time.time() - t0}
        return out
    sigma = float(var) ** 0.5

    sets = influential_sets(idx, sigma, idx.n_copies, th.eps_pair, g=g,
                            eps_strong=th.eps_strong)
    out["influence"] = {
        "max_vertex_ratio": sets.max_vertex_ratio,
        "max_pair_ratio": sets.max_pair_ratio,
        "influential_vertices": list(sets.vertices),
        "influential_pairs": [list(p) for p in sets.pairs],
        "strongly_influential_pairs": [list(p) for p in sets.strong_pairs],
    }

    fourth = None
    gaussian_fourth = None
    moment_block: dict = {}
    if h.is_triangle:
        cf = triangle_fourth_closed_form(g, h, idx)
        fourth = cf.normalized_even[4]
        moment_block["fourth"] = cf.to_json()
        gaussian_fourth = triangle_fourth_gaussian_closed_form(g, h, idx)
        moment_block["gaussian_fourth"] = rational_json(gaussian_fourth)
        try:
            moment_block["sixth_asymptotic"] = triangle_sixth_asymptotic(
                g, h, idx).to_json()
        except CapabilityError as exc:
            moment_block["sixth_asymptotic"] = {"unavailable": str(exc)}
    else:
        try:
            form = build_form(idx)
            kr = exact_moments_kernel(form, k=kernel_order, kernel="rademacher")
            fourth = kr.normalized_even.get(4)
            moment_block["fourth"] = kr.to_json()
            kg = exact_moments_kernel(form, k=4, kernel="gaussian")
            gaussian_fourth = kg.normalized_even.get(4)
            moment_block["gaussian_fourth"] = rational_json(gaussian_fourth)
        except CapabilityError as exc:
            moment_block["fourth"] = {"unavailable": str(exc)}
    out["moments"] = moment_block

    try:
        out["bound_kernels"] = bound_kernels(g, h, idx, var, fourth,
                                             gaussian_fourth).to_json()
    except DegenerateVarianceError as exc:
        out["bound_kernels"] = {"unavailable": str(exc)}

    lambda1 = None
    if h.is_triangle:
        spec = triangle_spectrum(g, idx)
        lambda1 = spec.top
        out["spectrum"] = {
            "top": [float(x) for x in spec.eigenvalues[:10]],
            "computed": spec.computed,
            "dimension": spec.total_dimension,
            "method": spec.method,
            "two_sum_squares": spec.two_sum_squares(),
        }
        cond = _conditioning_set(idx, sigma, th.eps_pair,
                                 th.influential_vertex_bound)
        if cond:
            comps = mixture_limit(g, idx, cond)
            means = sorted(c.mean for c in comps)
            out["mixture"] = {
                "conditioned_on": list(cond),
                "components": [{"assignment": list(c.assignment),
                                "mean": c.mean, "variance": c.variance,
                                "weight": c.weight} for c in comps],
                "separation": means[-1] - means[0],
            }
        else:
            out["mixture"] = {"conditioned_on": [],
                              "components": [{"assignment": [], "mean": 0.0,
                                              "variance": None,
                                              "weight": 1.0}],
                              "separation": 0.0}

    out["verdict"] = verdict(g, h, idx, var, fourth, th, lambda1=lambda1).to_json()

    if samples > 0:
        run = sample_T(g, h, samples, seed=seed, idx=idx)
        out["simulation"] = run.to_json()

    if not deterministic:
        out["generated_at"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
        out["timings"] = {"total_s": round(time.time() - t0, 6)}
    return out


def csv_summary_row(rep: dict) -> tuple[str, str]:
    """(header, row) pair for flat batch sweeps."""
    kern = rep.get("bound_kernels", {})
    verd = rep.get("verdict", {})
    fields = [
        ("vertices", rep["graph"]["vertices"]),
        ("edges", rep["graph"]["edges"]),
        ("pattern", rep["pattern"]["name"]),
        ("copies", rep["copies"]["count"]),
        ("variance", rep["variance"].get("float", 0.0)
         if isinstance(rep["variance"], dict) else rep["variance"]),
        ("m_pair", kern.get("m_pair", "")),
        ("fourth_discrepancy", kern.get("fourth_discrepancy", "")),
        ("classification", verd.get("classification", "")),
        ("rule", verd.get("rule", "")),
    ]
    header = ",".join(name for name, _ in fields)
    row = ",".join(str(val) for _, val in fields)
    return header, row
