"""Decision procedures for (2,l)-sparsity and the blocker machinery.

The sparsity test is a pebble game: every vertex carries two pebbles, an
accepted edge consumes one pebble from an endpoint and is oriented away
from it, and an edge can be accepted once l+1 pebbles are gathered on its
endpoints by reversing directed paths.  A multigraph is (2,l)-sparse iff
all of its edges are accepted.  Pebble searches visit smallest vertex
first so runs are reproducible.

Only l in {0, 1, 2} is supported; negative counts are out of scope.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .multigraph import MultiGraph, SubgraphRef, gamma

__all__ = [
    "is_sparse",
    "is_tight",
    "pebble_sparse_pairs",
    "min_gamma_brute",
    "maximal_tight_subgraph_containing",
    "QuadContext",
    "Blocker",
    "find_blockers",
    "quad_contracted_graph",
    "triangle_blocker_witness",
]


def _check_level(l: int) -> None:
    if l not in (0, 1, 2):
        raise ValueError(f"sparsity level l={l} not supported (expected 0, 1 or 2)")


class _PebbleGame:
    """State of one (2,l) pebble game run over dense vertex indices."""

    def __init__(self, n: int, l: int):
        self.n = n
        self.l = l
        self.pebbles = [2] * n
        self.out: List[List[int]] = [[] for _ in range(n)]

    def _path_to_pebble(self, start: int, forbidden: Tuple[int, ...]) -> Optional[List[int]]:
        parent: Dict[int, int] = {start: -1}
        stack = [start]
        while stack:
            x = stack.pop()
            if x not in forbidden and self.pebbles[x] > 0:
                path = [x]
                while parent[path[-1]] != -1:
                    path.append(parent[path[-1]])
                path.reverse()
                return path
            for y in sorted(set(self.out[x]), reverse=True):
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
        return None

    def _pull_pebble(self, path: List[int]) -> None:
        # reverse each edge along the path, moving one pebble to path[0]
        for a, b in zip(path, path[1:]):
            self.out[a].remove(b)
            self.out[b].append(a)
        self.pebbles[path[-1]] -= 1
        self.pebbles[path[0]] += 1

    def insert(self, u: int, v: int) -> bool:
        need = self.l + 1
        if u == v:
            while self.pebbles[u] < need:
                path = self._path_to_pebble(u, (u,))
                if path is None:
                    return False
                self._pull_pebble(path)
            self.pebbles[u] -= 1
            self.out[u].append(u)
            return True
        while self.pebbles[u] + self.pebbles[v] < need:
            path = self._path_to_pebble(u, (u, v))
            if path is None:
                path = self._path_to_pebble(v, (u, v))
            if path is None:
                return False
            self._pull_pebble(path)
        if self.pebbles[u] > 0:
            self.pebbles[u] -= 1
            self.out[u].append(v)
        else:
            self.pebbles[v] -= 1
            self.out[v].append(u)
        return True


def pebble_sparse_pairs(n: int, pairs: Sequence[Tuple[int, int]], l: int) -> bool:
    """(2,l)-sparsity of a multigraph given as dense endpoint pairs."""
    _check_level(l)
    game = _PebbleGame(n, l)
    for u, v in pairs:
        if not game.insert(u, v):
            return False
    return True


def is_sparse(g: MultiGraph, l: int) -> bool:
    _check_level(l)
    vs = sorted(g.vertices)
    idx = {v: i for i, v in enumerate(vs)}
    pairs = [(idx[u], idx[v]) for _, (u, v) in sorted(g.edges.items())]
    return pebble_sparse_pairs(len(vs), pairs, l)


def is_tight(g: MultiGraph, l: int) -> bool:
    return gamma(g) == l and is_sparse(g, l)


def min_gamma_brute(g: MultiGraph) -> int:
    """min of gamma over all nonempty subgraphs, by subset enumeration.

    The minimum over all subgraphs is attained on an induced one, so only
    induced subgraphs are scanned.  Exponential; test oracle only.
    """
    vs = sorted(g.vertices)
    n = len(vs)
    idx = {v: i for i, v in enumerate(vs)}
    pair_bits = []
    for _, (u, v) in g.edges.items():
        pair_bits.append((1 << idx[u]) | (1 << idx[v]))
    best = None
    for mask in range(1, 1 << n):
        nv = mask.bit_count()
        ne = 0
        for bits in pair_bits:
            if bits & mask == bits:
                ne += 1
        val = 2 * nv - ne
        if best is None or val < best:
            best = val
    assert best is not None
    return best


def maximal_tight_subgraph_containing(
    g: MultiGraph, l: int, seed: FrozenSet[int] | set
) -> Optional[SubgraphRef]:
    """The unique inclusion-maximal (2,l)-tight subgraph containing ``seed``.

    Requires ``g`` to be (2,l)-sparse, which makes tight subgraphs closed
    under union whenever they intersect; the maximal one containing the
    seed is then the union of all of them.  Returns None when no tight
    subgraph contains the seed.
    """
    _check_level(l)
    seed = frozenset(seed)
    if not seed:
        raise ValueError("seed must be nonempty")
    if not seed <= g.vertices:
        raise ValueError("seed vertices absent from the graph")
    rest = sorted(g.vertices - seed)
    best_vs: Optional[FrozenSet[int]] = None
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            vs = seed | frozenset(combo)
            sub = g.induced(vs)
            if gamma(sub) == l:
                best_vs = vs if best_vs is None else best_vs | vs
    if best_vs is None:
        return None
    out = g.induced(best_vs)
    if gamma(out) != l:
        # union of overlapping tight subgraphs is tight; disjoint tight
        # pieces both containing the seed are impossible, so reaching this
        # point means the seed is split across tight blocks.
        return None
    return out


# ---------------------------------------------------------------------------
# Quadrilateral contexts and blockers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadContext:
    """Boundary walk data of a quadrilateral face: v1 e1 v2 e2 v3 e3 v4 e4."""

    v1: int
    v2: int
    v3: int
    v4: int
    e1: int
    e2: int
    e3: int
    e4: int

    def rotated(self) -> "QuadContext":
        return QuadContext(self.v2, self.v3, self.v4, self.v1, self.e2, self.e3, self.e4, self.e1)


@dataclass(frozen=True)
class Blocker:
    """A witness subgraph certifying that a quadrilateral contraction fails.

    type1: contains both diagonal vertices and exactly one off-diagonal
    vertex, with gamma = l; type2: contains the diagonal vertices, neither
    off-diagonal vertex, and gamma = l + 1.
    """

    kind: str  # "type1" | "type2"
    subgraph: SubgraphRef
    quad: QuadContext
    diagonal: str  # "13" | "24"


def _oriented_context(quad: QuadContext, diagonal: str) -> QuadContext:
    if diagonal == "13":
        return quad
    if diagonal == "24":
        return quad.rotated()
    raise ValueError(f"diagonal must be '13' or '24', got {diagonal!r}")


def quad_contracted_graph(g: MultiGraph, quad: QuadContext, diagonal: str) -> MultiGraph:
    """Underlying graph of the quadrilateral contraction on one diagonal.

    Identifies the two diagonal vertices (the smaller id survives) and
    deletes the two boundary edges incident to the first of them.
    """
    ctx = _oriented_context(quad, diagonal)
    a, c = ctx.v1, ctx.v3
    if a == c:
        raise ValueError("degenerate diagonal: its endpoints coincide")
    if ctx.e1 == ctx.e3:
        raise ValueError("opposite boundary edges coincide")
    keep, drop = min(a, c), max(a, c)
    edges = {}
    for f, (x, y) in g.edges.items():
        if f in (ctx.e1, ctx.e3):
            continue
        if x == drop:
            x = keep
        if y == drop:
            y = keep
        edges[f] = (x, y)
    return MultiGraph(g.vertices - {drop}, edges)


def find_blockers(g: MultiGraph, quad: QuadContext, diagonal: str, l: int = 2) -> List[Blocker]:
    """Blocker witnesses for one diagonal contraction of a quadrilateral.

    Empty iff the contraction preserves (2,l)-sparsity.  Otherwise the
    inclusion-maximal violating subgraphs of the contracted graph are
    pulled back and classified as type 1 or type 2 following the maximal
    violating-subgraph construction.  When both diagonals of the face are
    blocked the violating subgraphs are closed under union and the
    returned witness is unique.
    """
    _check_level(l)
    ctx = _oriented_context(quad, diagonal)
    contracted = quad_contracted_graph(g, quad, diagonal)
    if is_sparse(contracted, l):
        return []

    z = min(ctx.v1, ctx.v3)
    others = sorted(contracted.vertices - {z})
    violating: List[FrozenSet[int]] = []
    for r in range(len(others) + 1):
        for combo in itertools.combinations(others, r):
            vs = frozenset(combo) | {z}
            if gamma(contracted.induced(vs)) <= l - 1:
                violating.append(vs)
    maximal = [s for s in violating if not any(s < t for t in violating)]

    out: List[Blocker] = []
    for s in maximal:
        h_verts = (s - {z}) | {ctx.v1, ctx.v3}
        h = g.induced(h_verts)
        gh = gamma(h)
        has_b = ctx.v2 in h_verts
        has_d = ctx.v4 in h_verts
        if gh == l and (has_b != has_d):
            out.append(Blocker("type1", h, quad, diagonal))
        elif gh == l and not has_b and not has_d:
            aug = h.union(g.subgraph({ctx.v1, ctx.v2, ctx.v3}, {ctx.e1, ctx.e2}))
            assert gamma(aug) == l
            out.append(Blocker("type1", aug, quad, diagonal))
        elif gh == l + 1:
            assert not has_b and not has_d
            out.append(Blocker("type2", h, quad, diagonal))
        else:
            raise AssertionError(
                f"maximal violating subgraph pulled back to gamma={gh}, outside the blocker taxonomy"
            )
    out.sort(key=lambda b: tuple(sorted(b.subgraph.vertex_set)))
    return out


def triangle_blocker_witness(
    g: MultiGraph, v1: int, e1: int, v2: int, e2: int, v3: int, l: int = 2
) -> Optional[SubgraphRef]:
    """A subgraph containing e1 but not v3 with gamma = l, if one exists.

    Such a witness exists exactly when contracting e1 and deleting e2 on
    the triangle v1 e1 v2 e2 v3 destroys (2,l)-sparsity.  Brute force,
    used by tests; the pipeline decides via the pebble game instead.
    """
    _check_level(l)
    rest = sorted(g.vertices - {v1, v2, v3})
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            vs = frozenset(combo) | {v1, v2}
            sub = g.induced(vs)
            if e1 in sub.edge_set and gamma(sub) == l:
                return sub
    return None
