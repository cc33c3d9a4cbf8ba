"""
Forests and the graph-level operations the ideal computations rely on:
validation, degrees, components, stretchedness, splitting-vertex selection
and the named families (stars, lines, double stars).
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import networkx as nx

from api.errors import CycleDetected, DomainError, DuplicateEdge, NoEdges, SelfLoop

logger = logging.getLogger(__name__)

Edge = tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Forest:
    """An acyclic simple graph on vertices 0..n-1. Build through build_forest()."""
    n: int
    edges: frozenset[Edge]
    labels: tuple[str, ...] = field(default=(), compare=False)

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    @property
    def edge_list(self) -> list[Edge]:
        return sorted(self.edges)

    def label(self, v: int) -> str:
        if v < len(self.labels):
            return self.labels[v]
        return f"x{v}"

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.graph.neighbors(v))

    def restrict(self, edges: Iterable[Edge]) -> "Forest":
        """Edge-induced sub-forest on the same vertex set (labels kept)."""
        sub = frozenset(normalize_edge(u, v) for u, v in edges)
        missing = sub - self.edges
        if missing:
            raise DomainError(f"Edges {sorted(missing)} are not edges of this forest")
        return Forest(n=self.n, edges=sub, labels=self.labels)


@dataclass(frozen=True)
class ComponentPartition:
    assignment: tuple[int, ...]  # vertex -> component id
    component_edge_sets: list[frozenset[Edge]]

    @property
    def count(self) -> int:
        return len(self.component_edge_sets)


@dataclass(frozen=True)
class SplittingVertex:
    vertex: int
    neighbors: tuple[int, ...]  # leaves by index, the non-leaf (if any) last


def build_forest(n: int, edges: Iterable[tuple[int, int]], labels: Iterable[str] | None = None) -> Forest:
    """
    Validate an edge list and return a Forest.

    Raises:
        DomainError: an index is outside 0..n-1 or the label count is wrong
        SelfLoop, DuplicateEdge, CycleDetected
    """
    if n < 0:
        raise DomainError(f"Vertex count must be non-negative, got {n}")
    label_tuple = tuple(labels) if labels is not None else tuple(f"x{i}" for i in range(n))
    if len(label_tuple) != n:
        raise DomainError(f"Expected {n} labels, got {len(label_tuple)}")
    if len(set(label_tuple)) != n:
        raise DomainError("Vertex labels must be unique")

    seen: set[Edge] = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise DomainError(f"Edge ({u}, {v}) references a vertex outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"Self-loop at vertex {label_tuple[u]}", vertex=u)
        e = normalize_edge(u, v)
        if e in seen:
            raise DuplicateEdge(f"Duplicate edge {label_tuple[e[0]]}-{label_tuple[e[1]]}", edge=list(e))
        seen.add(e)

    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(seen)
    try:
        cycle = nx.find_cycle(g)
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle:
        names = " -> ".join(label_tuple[u] for u, _ in cycle)
        raise CycleDetected(f"Edges contain a cycle: {names}", cycle=[list(c) for c in cycle])

    return Forest(n=n, edges=frozenset(seen), labels=label_tuple)


def degree(f: Forest, v: int) -> int:
    if not 0 <= v < f.n:
        raise DomainError(f"Vertex {v} outside 0..{f.n - 1}")
    return f.degrees[v]


def components(f: Forest) -> ComponentPartition:
    """Connectivity classes ordered by their smallest vertex; isolated vertices included."""
    classes = sorted((sorted(c) for c in nx.connected_components(f.graph)), key=lambda c: c[0])
    assignment = [0] * f.n
    for cid, verts in enumerate(classes):
        for v in verts:
            assignment[v] = cid
    edge_sets: list[set[Edge]] = [set() for _ in classes]
    for u, v in f.edges:
        edge_sets[assignment[u]].add((u, v))
    return ComponentPartition(
        assignment=tuple(assignment),
        component_edge_sets=[frozenset(s) for s in edge_sets],
    )


def edge_components(f: Forest) -> list[frozenset[Edge]]:
    """Edge sets of the components that carry at least one edge."""
    return [s for s in components(f).component_edge_sets if s]


def is_stretched(f: Forest) -> bool:
    deg = f.degrees
    return all(min(deg[u], deg[v]) <= 2 for u, v in f.edges)


def split_components(edges: Iterable[Edge]) -> list[frozenset[Edge]]:
    """Group an edge set into connected pieces, ordered by smallest vertex."""
    g = nx.Graph()
    g.add_edges_from(edges)
    pieces = []
    for verts in nx.connected_components(g):
        pieces.append((min(verts), frozenset(normalize_edge(u, v) for u, v in g.subgraph(verts).edges)))
    return [edge_set for _, edge_set in sorted(pieces)]


def splitting_vertices(f: Forest) -> list[SplittingVertex]:
    """Every vertex with >= 2 neighbours of which all but at most one are leaves."""
    deg = f.degrees
    found = []
    for v in range(f.n):
        if deg[v] < 2:
            continue
        nbrs = f.neighbors(v)
        leaves = [w for w in nbrs if deg[w] == 1]
        inner = [w for w in nbrs if deg[w] > 1]
        if len(inner) <= 1:
            found.append(SplittingVertex(vertex=v, neighbors=tuple(leaves + inner)))
    return found


def select_splitting_vertex(f: Forest) -> SplittingVertex:
    """
    Pick the smallest-index vertex with at least two neighbours, all but at most
    one of which are leaves. Falls back to an endpoint of the first edge when
    every degree is at most 1.
    """
    if not f.edges:
        raise NoEdges("Cannot split a forest without edges")
    candidates = splitting_vertices(f)
    if candidates:
        return candidates[0]
    if max(f.degrees) >= 2:
        # every finite forest with a vertex of degree >= 2 has one
        raise DomainError("No splitting vertex found; input is not a forest")
    u, v = f.edge_list[0]
    return SplittingVertex(vertex=u, neighbors=(v,))


def disjoint_union(first: Forest, second: Forest) -> Forest:
    """Place `second` after `first`, shifting its vertex indices by first.n."""
    shift = first.n
    labels = list(first.labels) + [f"{lab}'" if lab in first.labels else lab for lab in second.labels]
    edges = list(first.edges) + [(u + shift, v + shift) for u, v in second.edges]
    return build_forest(first.n + second.n, edges, labels)


# ---------------------------------------------------------------------------
# named families
# ---------------------------------------------------------------------------

def make_star(r: int) -> Forest:
    """Star with centre c (vertex 0) and leaves x1..xr."""
    if r < 1:
        raise DomainError(f"Star needs r >= 1, got {r}")
    labels = ["c"] + [f"x{i}" for i in range(1, r + 1)]
    return build_forest(r + 1, [(0, i) for i in range(1, r + 1)], labels)


def make_line(r: int) -> Forest:
    """Path x1 - x2 - ... - xr (vertex i-1 is x_i)."""
    if r < 2:
        raise DomainError(f"Line graph needs r >= 2, got {r}")
    labels = [f"x{i}" for i in range(1, r + 1)]
    return build_forest(r, [(i, i + 1) for i in range(r - 1)], labels)


def make_double_star(r: int, s: int) -> Forest:
    """Centres a=0, b=1; leaves x_i = 1+i on a and y_j = 1+r+j on b."""
    if r < 0 or s < 0:
        raise DomainError(f"Double star needs r, s >= 0, got ({r}, {s})")
    labels = ["a", "b"] + [f"x{i}" for i in range(1, r + 1)] + [f"y{j}" for j in range(1, s + 1)]
    edges = [(0, 1)]
    edges += [(0, 1 + i) for i in range(1, r + 1)]
    edges += [(1, 1 + r + j) for j in range(1, s + 1)]
    return build_forest(2 + r + s, edges, labels)
