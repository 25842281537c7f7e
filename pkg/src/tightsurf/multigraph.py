"""Finite undirected multigraphs with stable vertex/edge identities.

Parallel edges and loops are allowed at this level; count-specific
restrictions (no loops, bounded multiplicity) are the business of the
sparsity layer.  Vertex and edge ids are opaque non-negative integers and
are never renumbered by deletion or contraction, which is what makes
recorded move sequences replayable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

__all__ = [
    "MultiGraph",
    "SubgraphRef",
    "gamma",
    "canonical_graph_code",
    "graphs_isomorphic",
]


@dataclass(frozen=True)
class MultiGraph:
    """An immutable multigraph.

    ``edges`` maps edge id -> (tail, head).  The pair order is fixed at
    construction and only used to give the two darts of an edge a stable
    identity; the graph itself is undirected.
    """

    vertices: FrozenSet[int]
    edges: Mapping[int, Tuple[int, int]]

    def __post_init__(self) -> None:
        for e, (u, v) in self.edges.items():
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge {e} has endpoint outside the vertex set")

    @staticmethod
    def from_edges(pairs: Iterable[Tuple[int, int]], vertices: Optional[Iterable[int]] = None) -> "MultiGraph":
        pairs = list(pairs)
        vs = set(vertices) if vertices is not None else set()
        for u, v in pairs:
            vs.add(u)
            vs.add(v)
        return MultiGraph(frozenset(vs), {i: (u, v) for i, (u, v) in enumerate(pairs)})

    # -- basic accessors -------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def endpoints(self, e: int) -> Tuple[int, int]:
        return self.edges[e]

    def is_loop(self, e: int) -> bool:
        u, v = self.edges[e]
        return u == v

    def edge_ids(self) -> List[int]:
        return sorted(self.edges)

    def incident_edges(self, v: int) -> List[int]:
        return [e for e, (a, b) in sorted(self.edges.items()) if a == v or b == v]

    def degree(self, v: int) -> int:
        d = 0
        for a, b in self.edges.values():
            if a == v:
                d += 1
            if b == v:
                d += 1
        return d

    def multiplicity(self, u: int, v: int) -> int:
        key = (min(u, v), max(u, v))
        m = 0
        for a, b in self.edges.values():
            if (min(a, b), max(a, b)) == key:
                m += 1
        return m

    def neighbors(self, v: int) -> List[int]:
        out = set()
        for a, b in self.edges.values():
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return sorted(out)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {next(iter(sorted(self.vertices)))}
        frontier = list(seen)
        adj: Dict[int, List[int]] = {v: [] for v in self.vertices}
        for a, b in self.edges.values():
            adj[a].append(b)
            adj[b].append(a)
        while frontier:
            v = frontier.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == len(self.vertices)

    # -- constructive operations (all return new graphs) -----------------

    def fresh_vertex_id(self) -> int:
        return max(self.vertices, default=-1) + 1

    def fresh_edge_id(self) -> int:
        return max(self.edges, default=-1) + 1

    def add_vertex(self, v: Optional[int] = None) -> Tuple["MultiGraph", int]:
        if v is None:
            v = self.fresh_vertex_id()
        if v in self.vertices:
            raise ValueError(f"vertex id {v} already present")
        return MultiGraph(self.vertices | {v}, dict(self.edges)), v

    def add_edge(self, u: int, v: int, e: Optional[int] = None) -> Tuple["MultiGraph", int]:
        if u not in self.vertices or v not in self.vertices:
            raise ValueError("both endpoints must exist")
        if e is None:
            e = self.fresh_edge_id()
        if e in self.edges:
            raise ValueError(f"edge id {e} already present")
        edges = dict(self.edges)
        edges[e] = (u, v)
        return MultiGraph(self.vertices, edges), e

    def delete_edge(self, e: int) -> "MultiGraph":
        if e not in self.edges:
            raise KeyError(e)
        edges = dict(self.edges)
        del edges[e]
        return MultiGraph(self.vertices, edges)

    def delete_vertex(self, v: int) -> "MultiGraph":
        """Remove ``v`` and every edge incident to it."""
        if v not in self.vertices:
            raise KeyError(v)
        edges = {e: uv for e, uv in self.edges.items() if v not in uv}
        return MultiGraph(self.vertices - {v}, edges)

    def contract_edge(self, e: int) -> "MultiGraph":
        """Identify the endpoints of ``e`` and delete (only) ``e``.

        The surviving endpoint keeps the smaller id.  Loop contraction is
        rejected.  Parallel edges and loops arise as dictated by the rest
        of the graph; all other edge ids are preserved.
        """
        if e not in self.edges:
            raise KeyError(e)
        u, v = self.edges[e]
        if u == v:
            raise ValueError(f"edge {e} is a loop and cannot be contracted")
        keep, drop = min(u, v), max(u, v)
        edges = {}
        for f, (a, b) in self.edges.items():
            if f == e:
                continue
            if a == drop:
                a = keep
            if b == drop:
                b = keep
            edges[f] = (a, b)
        return MultiGraph(self.vertices - {drop}, edges)

    # -- subgraphs --------------------------------------------------------

    def whole(self) -> "SubgraphRef":
        return SubgraphRef(self, frozenset(self.vertices), frozenset(self.edges))

    def subgraph(self, vertices: Iterable[int], edges: Iterable[int]) -> "SubgraphRef":
        return SubgraphRef(self, frozenset(vertices), frozenset(edges))

    def induced(self, vertices: Iterable[int]) -> "SubgraphRef":
        vs = frozenset(vertices)
        es = frozenset(e for e, (a, b) in self.edges.items() if a in vs and b in vs)
        return SubgraphRef(self, vs, es)

    def subsets_of_vertices(self) -> Iterator[FrozenSet[int]]:
        """All nonempty vertex subsets, in a deterministic order."""
        vs = sorted(self.vertices)
        for r in range(1, len(vs) + 1):
            for combo in itertools.combinations(vs, r):
                yield frozenset(combo)


@dataclass(frozen=True)
class SubgraphRef:
    """A subgraph of a fixed parent, as explicit vertex/edge id sets."""

    parent: MultiGraph
    vertex_set: FrozenSet[int]
    edge_set: FrozenSet[int]

    def __post_init__(self) -> None:
        for e in self.edge_set:
            u, v = self.parent.edges[e]
            if u not in self.vertex_set or v not in self.vertex_set:
                raise ValueError(f"edge {e} kept without both endpoints")

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_set)

    @property
    def num_edges(self) -> int:
        return len(self.edge_set)

    def is_empty(self) -> bool:
        return not self.vertex_set

    def to_multigraph(self) -> MultiGraph:
        return MultiGraph(self.vertex_set, {e: self.parent.edges[e] for e in self.edge_set})

    def union(self, other: "SubgraphRef") -> "SubgraphRef":
        self._check_parent(other)
        return SubgraphRef(self.parent, self.vertex_set | other.vertex_set, self.edge_set | other.edge_set)

    def intersection(self, other: "SubgraphRef") -> "SubgraphRef":
        self._check_parent(other)
        return SubgraphRef(self.parent, self.vertex_set & other.vertex_set, self.edge_set & other.edge_set)

    def _check_parent(self, other: "SubgraphRef") -> None:
        if self.parent is not other.parent:
            raise ValueError("subgraphs have different parent graphs")

    def is_connected(self) -> bool:
        return self.to_multigraph().is_connected()


def gamma(g) -> int:
    """The count 2|V| - |E| of a MultiGraph or SubgraphRef."""
    return 2 * g.num_vertices - g.num_edges


# ---------------------------------------------------------------------------
# Canonical forms for multigraph isomorphism
# ---------------------------------------------------------------------------


def _refine(n: int, mat: List[List[int]], colors: List[int]) -> List[int]:
    while True:
        keys = []
        for i in range(n):
            row = mat[i]
            sig = sorted((row[j], colors[j]) for j in range(n) if j != i and row[j])
            keys.append((colors[i], mat[i][i], tuple(sig)))
        order = sorted(set(keys))
        rank = {k: r for r, k in enumerate(order)}
        new = [rank[k] for k in keys]
        if new == colors:
            return colors
        colors = new


def _code_for_order(n: int, mat: List[List[int]], order: List[int]) -> Tuple[int, ...]:
    out = []
    for a in range(n):
        ia = order[a]
        out.append(mat[ia][ia])
        for b in range(a):
            out.append(mat[order[b]][ia])
    return tuple(out)


def canonical_graph_code(g: MultiGraph) -> Tuple[int, ...]:
    """A complete isomorphism invariant for multigraphs (loops included).

    Colour refinement followed by individualization search; the code is
    the minimum adjacency encoding over all orderings compatible with the
    refined partition.  Intended for the small graphs of this package
    (search is exact for any size, just not tuned for large n).
    """
    vs = sorted(g.vertices)
    n = len(vs)
    idx = {v: i for i, v in enumerate(vs)}
    mat = [[0] * n for _ in range(n)]
    for a, b in g.edges.values():
        if a == b:
            mat[idx[a]][idx[a]] += 1
        else:
            i, j = idx[a], idx[b]
            mat[i][j] += 1
            mat[j][i] += 1

    best: List[Optional[Tuple[int, ...]]] = [None]

    def search(colors: List[int]) -> None:
        colors = _refine(n, mat, colors)
        cells: Dict[int, List[int]] = {}
        for i, c in enumerate(colors):
            cells.setdefault(c, []).append(i)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            order = [i for _, i in sorted((colors[i], i) for i in range(n))]
            code = _code_for_order(n, mat, order)
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        for i in target:
            branched = list(colors)
            branched[i] = -1  # individualize: strictly smaller than all ranks
            search(branched)

    if n == 0:
        return (0,)
    search([0] * n)
    assert best[0] is not None
    return (n,) + best[0]


def graphs_isomorphic(g1: MultiGraph, g2: MultiGraph) -> bool:
    return canonical_graph_code(g1) == canonical_graph_code(g2)
