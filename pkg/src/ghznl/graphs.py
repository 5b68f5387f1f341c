"""Partition graphs of a state set and their connectivity.

For a bipartition X|YZ the graph's vertices are all joint coordinates of the
two non-cut parties; each tuple contributes the complete graph on its
projected kets (or, for the path variant, only consecutive edges after
sorting by first projected coordinate).  Connectivity of all three graphs is
the certificate the certifier relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .state_model import Partition, StateSet, SystemDims

Vertex = tuple[int, int]
Edge = tuple[Vertex, Vertex]


def _edge(u: Vertex, v: Vertex) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class PartitionGraph:
    partition: Partition
    vertices: frozenset[Vertex]
    edges: frozenset[Edge]
    kind: str = "full"  # "full" | "path"

    def __post_init__(self):
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on {u}")
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge ({u}, {v}) references a missing vertex")


@dataclass(frozen=True)
class ComponentLabeling:
    """Vertex -> component id; ids are each component's minimal vertex."""

    labels: dict[Vertex, Vertex]
    count: int


def _vertices(dims: SystemDims, p: Partition) -> frozenset[Vertex]:
    da, db = p.kept_dims(dims)
    return frozenset((a, b) for a in range(da) for b in range(db))


def build_graph(S: StateSet, p: Partition) -> PartitionGraph:
    """Full graph: every tuple adds a complete graph on its projections."""
    edges = set()
    for t in S.tuples:
        proj = [p.project(k) for k in t.kets]
        for a in range(len(proj)):
            for b in range(a + 1, len(proj)):
                if proj[a] != proj[b]:
                    edges.add(_edge(proj[a], proj[b]))
    return PartitionGraph(p, _vertices(S.dims, p), frozenset(edges), "full")


def build_path_graph(S: StateSet, p: Partition) -> PartitionGraph:
    """Path subgraph: consecutive edges after sorting projections per tuple."""
    edges = set()
    for t in S.tuples:
        proj = sorted(p.project(k) for k in t.kets)
        for a in range(len(proj) - 1):
            if proj[a] != proj[a + 1]:
                edges.add(_edge(proj[a], proj[a + 1]))
    return PartitionGraph(p, _vertices(S.dims, p), frozenset(edges), "path")


def connected_components(G: PartitionGraph) -> ComponentLabeling:
    parent: dict[Vertex, Vertex] = {v: v for v in G.vertices}

    def find(v: Vertex) -> Vertex:
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    for u, v in G.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            # keep the lexicographically smaller vertex as the root
            if rv < ru:
                ru, rv = rv, ru
            parent[rv] = ru
    labels = {v: find(v) for v in G.vertices}
    return ComponentLabeling(labels, len(set(labels.values())))


def is_connected(G: PartitionGraph) -> bool:
    """True iff at most one component (the empty graph counts as connected)."""
    if not G.vertices:
        return True
    return connected_components(G).count == 1


def to_dot(G: PartitionGraph) -> str:
    """Graphviz 'graph' document; nodes named v_<a>_<b>, sorted for determinism."""
    def name(v: Vertex) -> str:
        return f"v_{v[0]}_{v[1]}"

    lines = [f'graph "{G.kind}_{G.partition.value}" {{']
    for v in sorted(G.vertices):
        lines.append(f"  {name(v)};")
    for u, v in sorted(G.edges):
        lines.append(f"  {name(u)} -- {name(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
