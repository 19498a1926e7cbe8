"""Pattern graphs, copy enumeration, and the influence index.

Copies are unlabeled subgraph embeddings (non-induced): the labeled
backtracking search finds each copy |Aut(H)| times, and exactly one of
those labelings is canonical, so unlabeled copies are visited once each.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

from . import _kernels
from .errors import CapabilityError, DegenerateVarianceError, UsageError
from .graphs import Graph, complete_graph, cycle_graph, load_edge_list, path_graph

MAX_PATTERN_VERTICES = 8
DEFAULT_COPY_CAP = 10**7
DEFAULT_SUBSET_BUDGET = 2 * 10**7


def automorphisms(g: Graph) -> list[tuple[int, ...]]:
    """All vertex permutations preserving the edge set (exhaustive, r <= 8)."""
    r = g.vertex_count
    if r > MAX_PATTERN_VERTICES:
        raise CapabilityError(f"automorphism search capped at {MAX_PATTERN_VERTICES} vertices")
    edges = set(g.edges)
    out = []
    for perm in permutations(range(r)):
        if all(((perm[u], perm[v]) in edges or (perm[v], perm[u]) in edges)
               for u, v in edges):
            out.append(perm)
    return out


def _is_connected(g: Graph) -> bool:
    if g.vertex_count == 0:
        return False
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.vertex_count


@dataclass(frozen=True)
class Pattern:
    """Small connected reference graph with cached automorphism data."""

    graph: Graph
    name: str = "pattern"

    def __post_init__(self):
        r = self.graph.vertex_count
        if not 2 <= r <= MAX_PATTERN_VERTICES:
            raise CapabilityError(f"pattern must have 2..{MAX_PATTERN_VERTICES} vertices, got {r}")
        if not _is_connected(self.graph):
            raise UsageError("pattern must be connected")

    @property
    def r(self) -> int:
        return self.graph.vertex_count

    @property
    def automorphisms(self) -> list[tuple[int, ...]]:
        cached = self.graph.meta.get("_auts")
        if cached is None:
            cached = automorphisms(self.graph)
            self.graph.meta["_auts"] = cached
        return cached

    @property
    def automorphism_count(self) -> int:
        return len(self.automorphisms)

    @property
    def is_triangle(self) -> bool:
        return self.r == 3 and self.graph.edge_count == 3

    @property
    def is_edge(self) -> bool:
        return self.r == 2


def triangle_pattern() -> Pattern:
    return Pattern(complete_graph(3), "triangle")


def edge_pattern() -> Pattern:
    return Pattern(complete_graph(2), "edge")


def parse_pattern(spec: str) -> Pattern:
    """CLI pattern specifiers: edge, triangle, path:k, cycle:k, complete:k, file:<path>."""
    spec = spec.strip()
    if spec == "edge":
        return edge_pattern()
    if spec == "triangle":
        return triangle_pattern()
    if ":" in spec:
        head, arg = spec.split(":", 1)
        if head == "file":
            with open(arg, "rb") as fh:
                return Pattern(load_edge_list(fh), name=f"file:{arg}")
        try:
            k = int(arg)
        except ValueError:
            raise UsageError(f"bad pattern size in {spec!r}") from None
        if head == "path":
            return Pattern(path_graph(k), name=spec)
        if head == "cycle":
            return Pattern(cycle_graph(k), name=spec)
        if head == "complete":
            return Pattern(complete_graph(k), name=spec)
    raise UsageError(f"unknown pattern specifier {spec!r}")


@dataclass
class InfluenceIndex:
    """Copy counts D_w for vertex tuples w, plus the cached copy list.

    d[w] (w a sorted vertex tuple, 1 <= |w| <= r) is the number of copies
    whose vertex set contains w.  When the subset budget is exceeded only
    sizes {1, 2} and even sizes are stored and subset_sizes_limited is set.
    """

    r: int
    pattern_name: str
    n_copies: int
    d: dict[tuple[int, ...], int]
    copies: list[tuple[int, ...]] | None
    subset_sizes: tuple[int, ...]
    subset_sizes_limited: bool = False
    labeled_embeddings: int = 0
    meta: dict = field(default_factory=dict)

    def influence(self, w) -> int:
        if isinstance(w, int):
            w = (w,)
        return self.d.get(tuple(sorted(w)), 0)

    def by_size(self, size: int) -> dict[tuple[int, ...], int]:
        if size not in self.subset_sizes:
            raise CapabilityError(
                f"influence index stores subset sizes {self.subset_sizes}, not {size}")
        return {w: c for w, c in self.d.items() if len(w) == size}

    def max_vertex_influence(self) -> int:
        return max((c for w, c in self.d.items() if len(w) == 1), default=0)

    def max_pair_influence(self) -> int:
        return max((c for w, c in self.d.items() if len(w) == 2), default=0)


def _subset_sizes_for(r: int, limited: bool) -> tuple[int, ...]:
    if not limited:
        return tuple(range(1, r + 1))
    keep = {1, 2} | {m for m in range(2, r + 1) if m % 2 == 0}
    return tuple(sorted(keep))


def _index_from_copies(r: int, name: str, copies: list[tuple[int, ...]],
                       labeled: int, subset_budget: int,
                       copy_cap: int) -> InfluenceIndex:
    n = len(copies)
    limited = n * ((1 << r) - 1) > subset_budget
    sizes = _subset_sizes_for(r, limited)
    sizeset = set(sizes)
    d: dict[tuple[int, ...], int] = {}
    for verts in copies:
        for m in sizeset:
            for w in combinations(verts, m):
                d[w] = d.get(w, 0) + 1
    keep_copies = copies if n <= copy_cap else None
    return InfluenceIndex(r=r, pattern_name=name, n_copies=n, d=d,
                          copies=keep_copies, subset_sizes=sizes,
                          subset_sizes_limited=limited, labeled_embeddings=labeled)


def _search_order(h: Graph) -> list[int]:
    """Pattern vertex order: max degree first, then always adjacent to the prefix."""
    r = h.vertex_count
    order = [max(range(r), key=lambda v: h.degree(v))]
    placed = set(order)
    while len(order) < r:
        cands = [v for v in range(r) if v not in placed
                 and any(u in placed for u in h.adjacency[v])]
        nxt = max(cands, key=lambda v: (sum(u in placed for u in h.adjacency[v]),
                                        h.degree(v), -v))
        order.append(nxt)
        placed.add(nxt)
    return order


def _enumerate_general(g: Graph, h: Pattern):
    """Backtracking embedding search; yields canonical labeled embeddings."""
    hg = h.graph
    r = h.r
    order = _search_order(hg)
    auts = h.automorphisms
    # for each position t, pattern neighbors of order[t] already placed
    back_edges = []
    pos_of = {hv: t for t, hv in enumerate(order)}
    for t, hv in enumerate(order):
        back_edges.append([pos_of[u] for u in hg.adjacency[hv] if pos_of[u] < t])
    deg_h = [hg.degree(hv) for hv in order]
    adj_sets = g.adjacency_sets
    labeled = 0
    copies: list[tuple[int, ...]] = []

    assignment = [0] * r
    used = set()

    def canonical(mapping: dict[int, int]) -> bool:
        image = tuple(mapping[v] for v in range(r))
        return all(image <= tuple(image[p[v]] for v in range(r)) for p in auts)

    def extend(t: int):
        nonlocal labeled
        if t == r:
            labeled += 1
            mapping = {order[i]: assignment[i] for i in range(r)}
            if canonical(mapping):
                copies.append(tuple(sorted(assignment)))
            return
        anchors = back_edges[t]
        base = adj_sets[assignment[anchors[0]]]
        for cand in base:
            if cand in used or g.degree(cand) < deg_h[t]:
                continue
            ok = all(cand in adj_sets[assignment[a]] for a in anchors[1:])
            if ok:
                assignment[t] = cand
                used.add(cand)
                extend(t + 1)
                used.discard(cand)

    for v0 in range(g.vertex_count):
        if g.degree(v0) < deg_h[0]:
            continue
        assignment[0] = v0
        used.add(v0)
        extend(1)
        used.discard(v0)
    return copies, labeled


def enumerate_copies(g: Graph, h: Pattern, copy_cap: int = DEFAULT_COPY_CAP,
                     subset_budget: int = DEFAULT_SUBSET_BUDGET) -> InfluenceIndex:
    """Count copies of h in g and build the influence index.

    Labeled embeddings are counted and divided by |Aut(H)| (exactly); fast
    kernel paths cover edge and triangle patterns on large hosts.
    """
    if h.is_edge:
        copies = [tuple(e) for e in g.edges]
        idx = _index_from_copies(2, h.name, copies, 2 * len(copies),
                                 subset_budget, copy_cap)
        return idx
    if h.is_triangle:
        indptr, indices = g.csr
        n_tri, d_vertex, eu, ev, de = _kernels.triangle_census(indptr, indices)
        n_tri = int(n_tri)
        d: dict[tuple[int, ...], int] = {}
        for v in range(g.vertex_count):
            if d_vertex[v]:
                d[(int(v),)] = int(d_vertex[v])
        for i in range(len(eu)):
            if de[i]:
                d[(int(eu[i]), int(ev[i]))] = int(de[i])
        copies = None
        limited = n_tri * 7 > subset_budget
        if n_tri <= copy_cap:
            tri = _kernels.triangle_list(indptr, indices, n_tri)
            copies = [tuple(int(x) for x in row) for row in tri]
            if not limited:
                for t in copies:
                    d[t] = d.get(t, 0) + 1
        else:
            limited = True
        return InfluenceIndex(r=3, pattern_name=h.name, n_copies=n_tri, d=d,
                              copies=copies,
                              subset_sizes=_subset_sizes_for(3, limited),
                              subset_sizes_limited=limited,
                              labeled_embeddings=6 * n_tri)
    copies, labeled = _enumerate_general(g, h)
    if labeled % h.automorphism_count != 0:
        raise AssertionError("labeled embedding count not divisible by |Aut(H)|")
    if labeled // h.automorphism_count != len(copies):
        raise AssertionError("canonical filter disagrees with labeled count")
    return _index_from_copies(h.r, h.name, copies, labeled, subset_budget, copy_cap)


@dataclass(frozen=True)
class InfluentialSets:
    """Vertices/pairs meeting the influence thresholds of the verdict rules."""

    epsilon: float
    vertices: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    edges: tuple[tuple[int, int], ...]
    strong_pairs: tuple[tuple[int, int], ...]
    max_vertex_ratio: float
    max_pair_ratio: float


def influential_sets(idx: InfluenceIndex, sigma: float, n_copies: int,
                     eps: float, g: Graph | None = None,
                     eps_strong: float | None = None) -> InfluentialSets:
    """Classify eps-influential vertices/pairs/edges and strong pairs.

    A vertex v qualifies iff D_v >= eps * sigma; a pair (u, v) iff
    D_uv >= eps * sigma (flagged as an edge when g has the edge); a pair is
    strongly influential iff D_uv >= eps_strong * N.
    """
    if sigma <= 0:
        raise DegenerateVarianceError("zero variance: no influence thresholds")
    verts = sorted(w[0] for w, c in idx.d.items() if len(w) == 1 and c >= eps * sigma)
    pairs = sorted(w for w, c in idx.d.items() if len(w) == 2 and c >= eps * sigma)
    edges = tuple(p for p in pairs if g is not None and g.has_edge(*p))
    strong = ()
    if eps_strong is not None:
        strong = tuple(sorted(
            w for w, c in idx.d.items()
            if len(w) == 2 and c >= eps_strong * n_copies))
    max_v = idx.max_vertex_influence() / sigma
    max_p = idx.max_pair_influence() / sigma
    return InfluentialSets(eps, tuple(verts), tuple(pairs), edges, strong,
                           max_v, max_p)
