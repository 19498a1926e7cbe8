"""Host-graph representation, family generators, and edge-list I/O.

All generators emit deterministic dense 0-based labelings so that reports
built from the same parameters are reproducible byte for byte.
"""
from __future__ import annotations

import io
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from math import floor
from typing import Iterable, Sequence

import numpy as np

from ._kernels import counter_uniform
from .errors import GraphFormatError, UsageError

FAMILY_TAGS = (
    "complete",
    "cycle",
    "path",
    "star",
    "disjoint_triangles",
    "book",
    "windmill",
    "pyramid_stack",
    "exbad_S",
    "exbad_P",
    "exbad_B",
    "exbad_full",
    "disjoint_union",
    "erdos_renyi",
)


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices 0..vertex_count-1."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]],
                   meta: dict | None = None) -> "Graph":
        dedup = set()
        for u, v in edges:
            if u == v:
                raise GraphFormatError(f"self-loop on vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphFormatError(f"edge ({u}, {v}) outside vertex range 0..{vertex_count - 1}")
            dedup.add((u, v) if u < v else (v, u))
        sorted_edges = tuple(sorted(dedup))
        adj: list[list[int]] = [[] for _ in range(vertex_count)]
        for u, v in sorted_edges:
            adj[u].append(v)
            adj[v].append(u)
        adjacency = tuple(tuple(sorted(nb)) for nb in adj)
        return cls(vertex_count, sorted_edges, adjacency, meta or {})

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(nb) for nb in self.adjacency)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) arrays over sorted neighbor lists."""
        indptr = np.zeros(self.vertex_count + 1, dtype=np.int64)
        for v, nb in enumerate(self.adjacency):
            indptr[v + 1] = indptr[v] + len(nb)
        indices = np.empty(indptr[-1], dtype=np.int64)
        pos = 0
        for nb in self.adjacency:
            for w in nb:
                indices[pos] = w
                pos += 1
        return indptr, indices

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency_sets[u]

    def relabeled(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex v renamed perm[v]."""
        return Graph.from_edges(self.vertex_count,
                                [(perm[u], perm[v]) for u, v in self.edges])


@dataclass(frozen=True)
class FamilySpec:
    """Parameters for generate_family; unused fields stay at their defaults."""

    family: str
    n: int = 0
    k: int = 0
    b: float = 0.0
    c: float = 0.0
    p: float = 0.0
    seed: int = 0
    rounding: str = "floor"
    parts: tuple["FamilySpec", ...] = ()

    def __post_init__(self):
        if self.family not in FAMILY_TAGS:
            raise UsageError(f"unknown graph family {self.family!r}")
        if self.rounding != "floor":
            raise UsageError("only floor rounding is supported for fractional sizes")


def load_edge_list(data) -> Graph:
    """Parse the edge-list text format.

    Format: optional header line "v N" declaring the vertex count, comment
    lines starting with '#', then one "u v" pair per line (0-indexed).
    Duplicate edge lines are deduplicated with a warning; self-loops and
    unparsable tokens are rejected with their line number.
    """
    if isinstance(data, bytes):
        text = data.decode("utf-8")
    elif isinstance(data, str):
        text = data
    else:
        raw = data.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw

    declared_n: int | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    duplicates = 0
    max_id = -1
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "v" and declared_n is None and not edges:
            if len(parts) != 2:
                raise GraphFormatError(f"line {lineno}: malformed header {line!r}")
            try:
                declared_n = int(parts[1])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: malformed header {line!r}") from None
            if declared_n < 0:
                raise GraphFormatError(f"line {lineno}: negative vertex count")
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: unparsable token in {line!r}") from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"line {lineno}: negative vertex id")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop on vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        edges.append(key)
        max_id = max(max_id, u, v)

    n = declared_n if declared_n is not None else max_id + 1
    if max_id >= n:
        raise GraphFormatError(f"edge references vertex {max_id} but header declared {n}")
    if duplicates:
        warnings.warn(f"edge list contained {duplicates} duplicate edge line(s)",
                      stacklevel=2)
    g = Graph.from_edges(max(n, 0), edges)
    g.meta["duplicate_edge_lines"] = duplicates
    return g


def save_edge_list(g: Graph, stream) -> None:
    """Write the graph in the edge-list text format (with a 'v N' header)."""
    close = False
    if isinstance(stream, str):
        stream = open(stream, "w", encoding="utf-8")
        close = True
    try:
        stream.write(f"v {g.vertex_count}\n")
        for u, v in g.edges:
            stream.write(f"{u} {v}\n")
    finally:
        if close:
            stream.close()


def edge_list_text(g: Graph) -> str:
    buf = io.StringIO()
    save_edge_list(g, buf)
    return buf.getvalue()


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    """Disjoint union; vertex ids of later graphs are offset."""
    edges: list[tuple[int, int]] = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.vertex_count
    return Graph.from_edges(offset, edges)


def _require_positive(value: int, name: str):
    if value <= 0:
        raise UsageError(f"family parameter {name} must be positive, got {value}")


def complete_graph(n: int) -> Graph:
    _require_positive(n, "n")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise UsageError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    _require_positive(n, "n")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n: int) -> Graph:
    """Star with n leaves; center is vertex 0."""
    _require_positive(n, "n")
    return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)])


def disjoint_triangles(n: int) -> Graph:
    """n vertex-disjoint triangles on vertices (3i, 3i+1, 3i+2)."""
    _require_positive(n, "n")
    edges = []
    for i in range(n):
        a = 3 * i
        edges += [(a, a + 1), (a, a + 2), (a + 1, a + 2)]
    return Graph.from_edges(3 * n, edges)


def book_graph(k: int) -> Graph:
    """k triangles sharing the edge (0, 1); apexes are 2..k+1."""
    _require_positive(k, "k")
    edges = [(0, 1)]
    for i in range(k):
        p = 2 + i
        edges += [(0, p), (1, p)]
    return Graph.from_edges(k + 2, edges)


def windmill_graph(k: int) -> Graph:
    """k triangles sharing only the center vertex 0."""
    _require_positive(k, "k")
    edges = []
    for i in range(k):
        a, b = 1 + 2 * i, 2 + 2 * i
        edges += [(0, a), (0, b), (a, b)]
    return Graph.from_edges(2 * k + 1, edges)


def pyramid_stack(s: int) -> Graph:
    """s triangles glued at a common edge (same construction as book)."""
    return book_graph(s)


def exbad_S(n: int) -> Graph:
    """Four bonded books arranged around a 4-cycle.

    Vertices 0..3 form the cycle; each cycle edge carries n apex triangles.
    """
    _require_positive(n, "n")
    edges = [(k, (k + 1) % 4) for k in range(4)]
    nxt = 4
    for k in range(4):
        for _ in range(n):
            edges += [(k, nxt), (nxt, (k + 1) % 4)]
            nxt += 1
    return Graph.from_edges(nxt, edges)


def exbad_P(n: int, c: float) -> Graph:
    """Book with floor(c*n) apex triangles over the shared edge (0, 1)."""
    pages = floor(c * n)
    if pages < 1:
        raise UsageError(f"exbad_P needs floor(c*n) >= 1, got {pages}")
    g = book_graph(pages)
    g.meta["apex_count"] = pages
    return g


def exbad_B(n: int, b: float) -> Graph:
    """floor(b*n^2) hub vertices; each hub pair carries two 2-triangle gadgets.

    Hubs are 0..m-1.  For each pair i<j, a gadget is a center adjacent to
    both hubs plus one private leaf per hub, forming two triangles that
    share only the center.  Every edge lies in exactly one triangle.
    """
    m = floor(b * n * n)
    if m < 2:
        raise UsageError(f"exbad_B needs floor(b*n^2) >= 2 hubs, got {m}")
    edges = []
    nxt = m
    for i in range(m):
        for j in range(i + 1, m):
            for _side in range(2):
                center, leaf_i, leaf_j = nxt, nxt + 1, nxt + 2
                nxt += 3
                edges += [
                    (i, center), (i, leaf_i), (leaf_i, center),
                    (j, center), (j, leaf_j), (leaf_j, center),
                ]
    g = Graph.from_edges(nxt, edges)
    g.meta["hub_count"] = m
    return g


def exbad_full(n: int, b: float, c: float) -> Graph:
    """Disjoint union of exbad_S(n), exbad_P(n, c), exbad_B(n, b)."""
    s, p, bb = exbad_S(n), exbad_P(n, c), exbad_B(n, b)
    g = disjoint_union([s, p, bb])
    g.meta.update({
        "components": {
            "S": {"vertices": s.vertex_count, "offset": 0},
            "P": {"vertices": p.vertex_count, "offset": s.vertex_count},
            "B": {"vertices": bb.vertex_count,
                  "offset": s.vertex_count + p.vertex_count},
        },
        "apex_count": p.meta["apex_count"],
        "hub_count": bb.meta["hub_count"],
        "rounding": "floor",
    })
    return g


def erdos_renyi(n: int, p: float, seed: int = 0) -> Graph:
    """G(n, p) with the edge decision for {i, j} keyed by (seed, i, j).

    Counter-based: the same seed yields the same graph regardless of the
    order in which pairs are examined.
    """
    _require_positive(n, "n")
    if not 0.0 <= p <= 1.0:
        raise UsageError(f"edge probability must be in [0, 1], got {p}")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if counter_uniform(seed, i, j) < p]
    return Graph.from_edges(n, edges)


def generate_family(spec: FamilySpec) -> Graph:
    """Build the graph described by a FamilySpec, recording provenance in meta."""
    fam = spec.family
    if fam == "complete":
        g = complete_graph(spec.n or spec.k)
    elif fam == "cycle":
        g = cycle_graph(spec.n or spec.k)
    elif fam == "path":
        g = path_graph(spec.n or spec.k)
    elif fam == "star":
        g = star_graph(spec.n or spec.k)
    elif fam == "disjoint_triangles":
        g = disjoint_triangles(spec.n or spec.k)
    elif fam == "book":
        g = book_graph(spec.k or spec.n)
    elif fam == "windmill":
        g = windmill_graph(spec.k or spec.n)
    elif fam == "pyramid_stack":
        g = pyramid_stack(spec.k or spec.n)
    elif fam == "exbad_S":
        g = exbad_S(spec.n)
    elif fam == "exbad_P":
        g = exbad_P(spec.n, spec.c)
    elif fam == "exbad_B":
        g = exbad_B(spec.n, spec.b)
    elif fam == "exbad_full":
        g = exbad_full(spec.n, spec.b, spec.c)
    elif fam == "disjoint_union":
        if not spec.parts:
            raise UsageError("disjoint_union needs component specs")
        g = disjoint_union([generate_family(part) for part in spec.parts])
    elif fam == "erdos_renyi":
        g = erdos_renyi(spec.n, spec.p, spec.seed)
    else:  # pragma: no cover - FAMILY_TAGS guard
        raise UsageError(f"unknown family {fam}")
    g.meta.setdefault("family", fam)
    g.meta.setdefault("params", {
        key: getattr(spec, key)
        for key in ("n", "k", "b", "c", "p", "seed")
        if getattr(spec, key)
    })
    return g
