"""Exhaustive enumeration: tight multigraphs and their surface embeddings.

Graphs are generated in two stages.  Connected simple (2,2)-sparse graphs
grow edge by edge (adding an edge between existing vertices or hanging a
new vertex) with canonical-form deduplication at every level, so each
isomorphism class appears once.  Each simple graph then serves as the
support of multigraphs obtained by doubling subsets of its edges, pruned
by the pebble game; tight graphs are exactly those that reach 2n-2 edges.

Embeddings are enumerated as rotation systems by a dart-at-a-time DFS
with incremental facial-walk tracing.  Every placed dart extends partial
walk chains in O(1); a chain closing into a walk triggers the census
prunes (no small faces, bounded degrees and quadrilateral count, exact
walk count for the target genus), which is what makes the search feasible
for graphs whose raw rotation count is astronomically large.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from ..multigraph import MultiGraph, canonical_graph_code, gamma
from ..sparsity import pebble_sparse_pairs
from ..surfacemap import Face, SurfaceMap, canonical_code, trace_walks

__all__ = [
    "enumerate_tight_graphs",
    "enumerate_simple_sparse_graphs",
    "CensusRules",
    "cellular_embeddings",
    "noncellular_torus_maps",
    "enumerate_torus_embeddings",
]


# ---------------------------------------------------------------------------
# Tight multigraph enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _SimpleGraph:
    n: int
    edges: Tuple[Tuple[int, int], ...]  # sorted (i < j) pairs


def _as_multigraph(n: int, pairs: Sequence[Tuple[int, int]]) -> MultiGraph:
    return MultiGraph(frozenset(range(n)), {i: p for i, p in enumerate(pairs)})


def enumerate_simple_sparse_graphs(n_max: int) -> List[_SimpleGraph]:
    """Connected simple (2,2)-sparse graphs with at most n_max vertices,
    one per isomorphism class."""
    start = _SimpleGraph(1, ())
    seen = {canonical_graph_code(_as_multigraph(1, ()))}
    out = [start]
    level = [start]
    while level:
        nxt: List[_SimpleGraph] = []
        for g in level:
            existing = set(g.edges)
            candidates: List[_SimpleGraph] = []
            for i in range(g.n):
                for j in range(i + 1, g.n):
                    if (i, j) not in existing and len(g.edges) + 1 <= 2 * g.n - 2:
                        candidates.append(_SimpleGraph(g.n, tuple(sorted(g.edges + ((i, j),)))))
            if g.n < n_max:
                for i in range(g.n):
                    candidates.append(_SimpleGraph(g.n + 1, tuple(sorted(g.edges + ((i, g.n),)))))
            for cand in candidates:
                if not pebble_sparse_pairs(cand.n, cand.edges, 2):
                    continue
                code = canonical_graph_code(_as_multigraph(cand.n, cand.edges))
                if code in seen:
                    continue
                seen.add(code)
                out.append(cand)
                nxt.append(cand)
        level = nxt
    return out


def enumerate_tight_graphs(n_max: int) -> List[MultiGraph]:
    """All (2,2)-tight multigraphs with at most n_max vertices, one per
    isomorphism class, in a deterministic order.

    No loops and no triple parallel edges can occur (the pebble game
    rejects them), so each tight multigraph is a connected simple sparse
    support with a subset of its edges doubled.
    """
    results: List[Tuple[Tuple[int, ...], MultiGraph]] = []
    seen_codes: Set[Tuple[int, ...]] = set()
    for sg in enumerate_simple_sparse_graphs(n_max):
        target = 2 * sg.n - 2
        base = list(sg.edges)
        need = target - len(base)
        if need < 0:
            continue
        m = len(base)

        def extend(idx: int, pairs: List[Tuple[int, int]], doubled: int) -> None:
            missing = target - len(pairs)
            if missing == 0:
                code = canonical_graph_code(_as_multigraph(sg.n, pairs))
                if code not in seen_codes:
                    seen_codes.add(code)
                    results.append((code, _as_multigraph(sg.n, tuple(pairs))))
                return
            if idx >= m or m - idx < missing:
                return
            # double base[idx]
            pairs.append(base[idx])
            if pebble_sparse_pairs(sg.n, pairs, 2):
                extend(idx + 1, pairs, doubled + 1)
            pairs.pop()
            extend(idx + 1, pairs, doubled)

        extend(0, base, 0)
    results.sort(key=lambda t: (t[1].num_vertices, t[0]))
    return [g for _, g in results]


# ---------------------------------------------------------------------------
# Rotation-system DFS
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CensusRules:
    """Prunes applied to completed facial walks during the embedding DFS."""

    min_degree: int = 0  # completed walks shorter than this kill the branch
    max_degree: Optional[int] = None
    max_quads: Optional[int] = None

    def bounds(self) -> Tuple[int, int]:
        lo = max(1, self.min_degree)
        hi = self.max_degree if self.max_degree is not None else 10 ** 9
        return lo, hi


def _rotation_systems(
    g: MultiGraph, target_genus: int, rules: Optional[CensusRules]
) -> Iterator[Dict[int, Tuple[int, ...]]]:
    """All rotation systems of a connected multigraph whose cellular genus
    is target_genus, as labelled rotations (isomorph dedup is the caller's
    job), subject to the walk census rules.

    Dart-at-a-time DFS over dense local arrays.  Partial facial walks are
    kept as chains with O(1) merge/close and an undo log; a chain longer
    than the face-degree cap, an over-complete walk count, or a budget
    that cannot be covered by admissible face degrees all cut the branch.
    """
    verts = sorted(g.vertices)
    n = len(verts)
    E = g.num_edges
    if E == 0:
        if target_genus == 0:
            yield {verts[0]: ()}
        return
    w_target = E - n + 2 - 2 * target_genus
    if w_target <= 0:
        return
    nd = 2 * E
    eids = sorted(g.edges)
    dart_global = []  # local dart -> (vertex, global dart)
    darts_at: Dict[int, List[int]] = {v: [] for v in verts}
    for li, e in enumerate(eids):
        u, v = g.edges[e]
        darts_at[u].append(2 * li)
        darts_at[v].append(2 * li + 1)
        dart_global.append(2 * e)
        dart_global.append(2 * e + 1)
    for v in verts:
        darts_at[v].sort()

    deg = {v: len(darts_at[v]) for v in verts}
    root = max(verts, key=lambda v: (deg[v], -v))
    order = [root]
    seen = {root}
    frontier = [root]
    head_of = [0] * nd
    for v in verts:
        for d in darts_at[v]:
            head_of[d ^ 1] = v
    while frontier:
        nbrs: Set[int] = set()
        for v in frontier:
            for d in darts_at[v]:
                w = head_of[d]
                if w not in seen:
                    nbrs.add(w)
        frontier = sorted(nbrs, key=lambda v: (-deg[v], v))
        order.extend(frontier)
        seen.update(frontier)
    assert len(order) == n, "graph must be connected"

    lo, hi = rules.bounds() if rules else (1, nd)
    max_quads = rules.max_quads if rules is not None and rules.max_quads is not None else nd

    start_by_end = list(range(nd))
    end_by_start = list(range(nd))
    len_by_start = [1] * nd
    state = [0, 0, 0, nd]  # walks_done, quads, closed_darts, open_chains
    undo: List[Tuple[int, ...]] = []

    OK, CLOSED, DEAD = 0, 1, 2

    def add_relation(a_sigma: int, b: int) -> int:
        a = a_sigma ^ 1  # next(a) = b in the face traversal
        sx = start_by_end[a]
        undo.append((0, a, sx))
        start_by_end[a] = -1
        if sx == b:
            length = len_by_start[b]
            undo.append((1, b, end_by_start[b], length))
            end_by_start[b] = -1
            state[0] += 1
            state[2] += length
            state[3] -= 1
            if length == 4:
                state[1] += 1
            if not (lo <= length <= hi):
                return DEAD
            if state[1] > max_quads:
                return DEAD
            wd = state[0]
            if wd > w_target:
                return DEAD
            remaining = w_target - wd
            budget = nd - state[2]
            if remaining == 0:
                return DEAD if budget > 0 else CLOSED
            if budget < remaining * lo or budget > remaining * hi:
                return DEAD
            if wd + state[3] < w_target:
                return DEAD
            return CLOSED
        lb = len_by_start[b]
        eb = end_by_start[b]
        la = len_by_start[sx]
        if la + lb > hi:
            # the chain can only grow; no admissible face can close it
            return DEAD
        undo.append((2, b, eb, lb, sx, end_by_start[sx], la, start_by_end[eb]))
        end_by_start[b] = -1
        end_by_start[sx] = eb
        len_by_start[sx] = la + lb
        start_by_end[eb] = sx
        state[3] -= 1
        if state[0] + state[3] < w_target:
            return DEAD
        return OK

    def rollback(mark: int) -> None:
        while len(undo) > mark:
            op = undo.pop()
            tag = op[0]
            if tag == 0:
                start_by_end[op[1]] = op[2]
            elif tag == 1:
                end_by_start[op[1]] = op[2]
                state[0] -= 1
                state[2] -= op[3]
                state[3] += 1
                if op[3] == 4:
                    state[1] -= 1
            else:
                b, eb, lb, sx, esx, la, sbe = op[1], op[2], op[3], op[4], op[5], op[6], op[7]
                end_by_start[b] = eb
                end_by_start[sx] = esx
                len_by_start[sx] = la
                len_by_start[b] = lb
                start_by_end[eb] = sbe
                state[3] += 1

    rotations: Dict[int, List[int]] = {}

    def place_vertex(vi: int) -> Iterator[None]:
        if vi == n:
            if state[0] == w_target:
                yield None
            return
        v = order[vi]
        darts = darts_at[v]
        first = darts[0]
        rot = [first]
        rotations[v] = rot

        def place(rem: Tuple[int, ...]) -> Iterator[None]:
            if not rem:
                mark = len(undo)
                if add_relation(rot[-1], rot[0]) != DEAD:
                    yield from place_vertex(vi + 1)
                rollback(mark)
                return
            for k in range(len(rem)):
                d = rem[k]
                mark = len(undo)
                verdict = add_relation(rot[-1], d)
                rot.append(d)
                if verdict != DEAD:
                    yield from place(rem[:k] + rem[k + 1 :])
                rot.pop()
                rollback(mark)

        if len(darts) == 1:
            mark = len(undo)
            if add_relation(first, first) != DEAD:
                yield from place_vertex(vi + 1)
            rollback(mark)
        else:
            yield from place(tuple(darts[1:]))
        del rotations[v]

    for _ in place_vertex(0):
        yield {
            v: tuple(dart_global[d] for d in rotations[v]) for v in verts
        }


def _freeze_rotation(rotations: Dict[int, Tuple[int, ...]]) -> Dict[int, Tuple[int, ...]]:
    return {v: tuple(rot) for v, rot in rotations.items()}


def cellular_embeddings(
    g: MultiGraph, target_genus: int, rules: Optional[CensusRules] = None
) -> List[SurfaceMap]:
    """Cellular embeddings of the given genus up to map isomorphism
    (orientation-reversing homeomorphisms included)."""
    if not g.is_connected():
        raise ValueError("embedding enumeration requires a connected graph")
    if g.num_edges == 0:
        return [SurfaceMap.vertex_map(0)] if target_genus == 0 else []
    out: Dict[bytes, SurfaceMap] = {}
    for rotation in _rotation_systems(g, target_genus, rules):
        m = SurfaceMap(g, rotation)
        assert m.genus == target_genus
        code = canonical_code(m)
        if code not in out:
            out[code] = m
    return [out[c] for c in sorted(out)]


def noncellular_torus_maps(g: MultiGraph, rules: Optional[CensusRules] = None) -> List[SurfaceMap]:
    """Non-cellular torus maps of a connected graph.

    Every one arises from a genus-0 rotation system either by tagging a
    single face with a handle or by joining two faces into one annular
    region; both constructions are enumerated and deduplicated.
    """
    if g.num_edges == 0:
        return [SurfaceMap.vertex_map(1)]
    out: Dict[bytes, SurfaceMap] = {}
    for rotation in _rotation_systems(g, 0, None):
        sphere = SurfaceMap(g, rotation)
        walks = [f.walks[0] for f in sphere.faces]
        for i in range(len(walks)):
            if rules is not None:
                lo, hi = rules.bounds()
                lengths = [len(w) for j, w in enumerate(walks) if j != i]
                if any(not (lo <= L <= hi) for L in lengths):
                    continue
                if rules.max_quads is not None and sum(1 for L in lengths if L == 4) > rules.max_quads:
                    continue
            faces = [Face((w,), 1 if j == i else 0) for j, w in enumerate(walks)]
            m = SurfaceMap(g, rotation, faces)
            code = canonical_code(m)
            out.setdefault(code, m)
        for i, j in itertools.combinations(range(len(walks)), 2):
            if rules is not None:
                lo, hi = rules.bounds()
                lengths = [len(w) for k, w in enumerate(walks) if k not in (i, j)]
                if any(not (lo <= L <= hi) for L in lengths):
                    continue
                if rules.max_quads is not None and sum(1 for L in lengths if L == 4) > rules.max_quads:
                    continue
            faces = [Face((walks[i], walks[j]), 0)]
            faces += [Face((w,), 0) for k, w in enumerate(walks) if k not in (i, j)]
            m = SurfaceMap(g, rotation, faces)
            code = canonical_code(m)
            out.setdefault(code, m)
    return [out[c] for c in sorted(out)]


def enumerate_torus_embeddings(g: MultiGraph) -> List[SurfaceMap]:
    """All torus maps of a connected multigraph up to map isomorphism:
    cellular genus-1 rotation systems plus the non-cellular maps built
    from genus-0 ones."""
    return cellular_embeddings(g, 1) + noncellular_torus_maps(g)
