"""Simple undirected graphs over qubit vertices, neighbourhood classes and bundling."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for malformed graph input or invalid construction parameters."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``adjacency[i]`` is the open neighbourhood N(i) as a frozenset.
    """

    n: int
    adjacency: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adjacency) != self.n:
            raise GraphError("adjacency must have exactly n entries")
        for i, nbrs in enumerate(self.adjacency):
            if i in nbrs:
                raise GraphError(f"self-loop at vertex {i}")
            for j in nbrs:
                if not 0 <= j < self.n:
                    raise GraphError(f"vertex {j} out of range")
                if i not in self.adjacency[j]:
                    raise GraphError(f"asymmetric adjacency between {i} and {j}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for edge in edges:
            if len(edge) != 2:
                raise GraphError(f"edge {list(edge)} is not a pair")
            i, j = int(edge[0]), int(edge[1])
            for v in (i, j):
                if not 0 <= v < n:
                    raise GraphError(f"vertex {v} out of range in edge [{i}, {j}]")
            if i == j:
                raise GraphError(f"self-loop in edge [{i}, {j}]")
            adj[i].add(j)
            adj[j].add(i)
        return cls(n, tuple(frozenset(a) for a in adj))

    def neighbors(self, i: int) -> frozenset[int]:
        return self.adjacency[i]

    def closed_neighbors(self, i: int) -> frozenset[int]:
        return self.adjacency[i] | {i}

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted((i, j) for i in range(self.n) for j in self.adjacency[i] if i < j)

    def isolated_vertices(self) -> list[int]:
        return [i for i in range(self.n) if not self.adjacency[i]]

    def require_no_isolated(self) -> None:
        iso = self.isolated_vertices()
        if iso:
            raise GraphError(f"graph has isolated vertex {iso[0]}")

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.edges]})

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges})"


def parse_graph(text: str) -> Graph:
    """Parse the ``{"n": int, "edges": [[i, j], ...]}`` document format."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GraphError("graph document must be a JSON object")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise GraphError('field "n" must be an integer >= 1')
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise GraphError('field "edges" must be an array')
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) for v in e)):
            raise GraphError(f"edge {e!r} is not a pair of integers")
    return Graph.from_edges(n, edges)


def load_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


FAMILIES = ("star", "cycle", "path", "complete", "grid")


def make_family(name: str, *params: int) -> Graph:
    """Build a named graph family. ``grid`` takes ``rows, cols``; the rest take ``n``."""
    if name == "grid":
        if len(params) != 2:
            raise GraphError("grid takes two parameters (rows, cols)")
        rows, cols = params
        if rows < 1 or cols < 1:
            raise GraphError("grid dimensions must be >= 1")
        edges = []
        for r in range(rows):
            for c in range(cols):
                v = r * cols + c
                if c + 1 < cols:
                    edges.append((v, v + 1))
                if r + 1 < rows:
                    edges.append((v, v + cols))
        return Graph.from_edges(rows * cols, edges)
    if name not in FAMILIES:
        raise GraphError(f"unknown family {name!r}")
    if len(params) != 1:
        raise GraphError(f"{name} takes one parameter (n)")
    (n,) = params
    min_n = 2 if name in ("star", "cycle", "complete") else 1
    if n < min_n:
        raise GraphError(f"{name} needs n >= {min_n}")
    if name == "star":
        edges = [(0, i) for i in range(1, n)]
    elif name == "path":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif name == "cycle":
        edges = [(i, (i + 1) % n) for i in range(n)]
    else:
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return Graph.from_edges(n, edges)


def parse_family(text: str) -> Graph:
    """Parse ``name:p1[,p2]`` shorthand, e.g. ``star:10`` or ``grid:2,3``."""
    name, _, rest = text.partition(":")
    try:
        params = [int(p) for p in rest.split(",") if p]
    except ValueError as exc:
        raise GraphError(f"bad family parameters in {text!r}") from exc
    return make_family(name, *params)


@dataclass(frozen=True)
class PartitionClass:
    members: frozenset[int]
    shared_neighborhood: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class PartitionReport:
    n: int
    open_classes: tuple[PartitionClass, ...]
    closed_classes: tuple[PartitionClass, ...]

    @property
    def open_sizes(self) -> list[int]:
        return [c.size for c in self.open_classes]

    @property
    def closed_sizes(self) -> list[int]:
        return [c.size for c in self.closed_classes]


def _group_by(keys: Sequence[frozenset[int]]) -> tuple[PartitionClass, ...]:
    buckets: dict[frozenset[int], list[int]] = {}
    for v, key in enumerate(keys):
        buckets.setdefault(key, []).append(v)
    classes = [PartitionClass(frozenset(vs), key) for key, vs in buckets.items()]
    classes.sort(key=lambda c: min(c.members))
    return tuple(classes)


def partition(g: Graph) -> PartitionReport:
    """Group vertices by identical open and by identical closed neighbourhoods."""
    open_keys = [g.neighbors(i) for i in range(g.n)]
    closed_keys = [g.closed_neighbors(i) for i in range(g.n)]
    return PartitionReport(g.n, _group_by(open_keys), _group_by(closed_keys))


@dataclass(frozen=True)
class Bundle:
    """A bundled graph plus the vertex ranges of each bundle (in base-vertex order)."""

    graph: Graph
    members: tuple[tuple[int, ...], ...] = field(repr=False)

    def bundle_of(self, v: int) -> int:
        for b, mem in enumerate(self.members):
            if v in mem:
                return b
        raise GraphError(f"vertex {v} out of range")


def build_bundle(base: Graph, sizes: Sequence[int]) -> Bundle:
    """Replace base vertex ``i`` by ``sizes[i]`` copies joined completely along base edges."""
    if len(sizes) != base.n:
        raise GraphError(f"expected {base.n} bundle sizes, got {len(sizes)}")
    if any(s < 1 for s in sizes):
        raise GraphError("bundle sizes must be >= 1")
    base.require_no_isolated()
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    members = tuple(tuple(range(offsets[i], offsets[i + 1])) for i in range(base.n))
    edges = [(a, b) for i, j in base.edges for a in members[i] for b in members[j]]
    return Bundle(Graph.from_edges(offsets[-1], edges), members)


def bundled_family(name: str, k: int, j: int) -> Graph:
    """``k`` bundles of ``j`` qubits on the star or cycle base graph."""
    return build_bundle(make_family(name, k), [j] * k).graph


def bundled_triangle() -> Graph:
    """Triangle base with bundle sizes 3, 4, 3."""
    return build_bundle(make_family("complete", 3), [3, 4, 3]).graph
