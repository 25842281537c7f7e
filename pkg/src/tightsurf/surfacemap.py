"""Combinatorial maps: rotation systems, faces, genus and homology.

A surface map is a multigraph together with a cyclic order of darts around
each vertex and a grouping of the traced facial walks into faces, each
face carrying a genus tag (0 = the walk bounds a disc).  This is exactly
the data that pins down an embedding of the graph in an orientable
surface up to homeomorphism, including non-cellular embeddings: an
annular face is two walks grouped with genus 0, a face tag of 1 adds a
handle behind that face.

Darts: edge e owns darts 2e (at the stored tail) and 2e+1 (at the head);
``d ^ 1`` is the reversal.  Facial walks follow next(d) = sigma(d ^ 1)
where sigma is the rotation successor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .multigraph import MultiGraph, SubgraphRef, gamma

__all__ = [
    "SurfaceMap",
    "Face",
    "FaceWalk",
    "trace_faces",
    "trace_walks",
    "euler_census_check",
    "canonical_code",
    "map_isomorphic",
    "from_flat_torus_drawing",
    "cut_and_cap",
    "submap_rotation",
    "submap_as_map",
    "submap_faces",
    "FaceInterior",
    "face_interior",
    "HomologyLabeling",
    "homology_labels",
    "cycle_classes",
    "SubgraphClass",
    "classify_subgraph",
    "intersection_number",
]


def dart_edge(d: int) -> int:
    return d >> 1


def mate(d: int) -> int:
    return d ^ 1


def _dart_tail(graph: MultiGraph, d: int) -> int:
    u, v = graph.edges[d >> 1]
    return u if d & 1 == 0 else v


def _canon_cycle(walk: Tuple[int, ...]) -> Tuple[int, ...]:
    if not walk:
        return walk
    k = walk.index(min(walk))
    return walk[k:] + walk[:k]


def trace_walks(graph: MultiGraph, rotation: Mapping[int, Sequence[int]]) -> List[Tuple[int, ...]]:
    """Facial walks of a rotation system, each rotated to start at its
    minimal dart, sorted by that dart."""
    succ: Dict[int, int] = {}
    for v, rot in rotation.items():
        for i, d in enumerate(rot):
            succ[d] = rot[(i + 1) % len(rot)]
    walks: List[Tuple[int, ...]] = []
    seen: Set[int] = set()
    for d0 in sorted(succ):
        if d0 in seen:
            continue
        walk = []
        d = d0
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = succ[d ^ 1]
        walks.append(_canon_cycle(tuple(walk)))
    walks.sort()
    return walks


@dataclass(frozen=True)
class Face:
    """A face: one or more boundary walks plus the genus of the region."""

    walks: Tuple[Tuple[int, ...], ...]
    genus: int = 0

    @property
    def is_cellular(self) -> bool:
        return self.genus == 0 and len(self.walks) == 1 and len(self.walks[0]) > 0

    @property
    def degree(self) -> int:
        return sum(len(w) for w in self.walks)

    def euler(self) -> int:
        boundaries = max(1, len(self.walks))  # an edgeless map still has one face boundary
        return 2 - 2 * self.genus - boundaries


@dataclass(frozen=True)
class FaceWalk:
    """One traced boundary walk with its vertex sequence."""

    darts: Tuple[int, ...]
    vertices: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.darts)

    @property
    def is_degenerate(self) -> bool:
        return len(set(self.vertices)) < len(self.vertices)


class SurfaceMap:
    """An immutable embedded multigraph.

    ``rotation`` maps each vertex to the cyclic order of its darts;
    ``faces`` groups the traced walks.  Construct with ``faces=None`` for
    the cellular embedding determined by the rotation alone.
    """

    __slots__ = ("graph", "rotation", "faces", "_walks", "_face_of_walk", "_homology")

    def __init__(
        self,
        graph: MultiGraph,
        rotation: Mapping[int, Sequence[int]],
        faces: Optional[Sequence[Face]] = None,
        validate: bool = True,
    ):
        self.graph = graph
        self.rotation = {v: tuple(rot) for v, rot in rotation.items()}
        if graph.num_edges == 0:
            if graph.num_vertices != 1:
                raise ValueError("edgeless maps are supported for a single vertex only")
            self._walks = []
            if faces is None:
                faces = [Face(walks=(), genus=0)]
            self.faces = tuple(faces)
        else:
            self._walks = trace_walks(graph, self.rotation)
            if faces is None:
                faces = [Face((w,), 0) for w in self._walks]
            self.faces = tuple(faces)
        self._face_of_walk = {}
        for i, face in enumerate(self.faces):
            for w in face.walks:
                self._face_of_walk[w] = i
        self._homology = None
        if validate:
            self._validate()

    # -- construction helpers --------------------------------------------

    @staticmethod
    def vertex_map(genus: int, vertex: int = 0) -> "SurfaceMap":
        """The map of a single vertex on a surface of the given genus."""
        g = MultiGraph(frozenset([vertex]), {})
        return SurfaceMap(g, {vertex: ()}, faces=[Face(walks=(), genus=genus)])

    def _validate(self) -> None:
        graph = self.graph
        all_darts = set()
        for e in graph.edges:
            all_darts.add(2 * e)
            all_darts.add(2 * e + 1)
        seen = []
        if set(self.rotation) != set(graph.vertices):
            raise ValueError("rotation must list every vertex exactly once")
        for v, rot in self.rotation.items():
            for d in rot:
                if _dart_tail(graph, d) != v:
                    raise ValueError(f"dart {d} listed at vertex {v} but is attached to another vertex")
                seen.append(d)
        if len(seen) != len(all_darts) or set(seen) != all_darts:
            raise ValueError("rotation darts do not partition the dart set")
        if graph.num_edges > 0:
            if any(not v_rot for v_rot in self.rotation.values()):
                raise ValueError("isolated vertices are not representable alongside edges")
            walks = set(self._walks)
            listed = [w for face in self.faces for w in face.walks]
            if len(listed) != len(walks) or set(listed) != walks:
                raise ValueError("faces must partition the traced facial walks")
        for face in self.faces:
            if face.genus < 0:
                raise ValueError("face genus tags must be nonnegative")
        chi = self.euler_characteristic()
        if chi % 2 != 0 or chi > 2:
            raise ValueError(f"inconsistent face data: euler characteristic {chi}")

    # -- basic queries ----------------------------------------------------

    @property
    def walks(self) -> List[Tuple[int, ...]]:
        return list(self._walks)

    def walk_of_dart(self, d: int) -> Tuple[int, ...]:
        for w in self._walks:
            if d in w:
                return w
        raise KeyError(d)

    def face_of_walk(self, walk: Tuple[int, ...]) -> int:
        return self._face_of_walk[walk]

    def face_of_dart(self, d: int) -> int:
        return self.face_of_walk(self.walk_of_dart(d))

    def dart_tail(self, d: int) -> int:
        return _dart_tail(self.graph, d)

    def dart_head(self, d: int) -> int:
        return _dart_tail(self.graph, d ^ 1)

    def walk_vertices(self, walk: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(self.dart_tail(d) for d in walk)

    def euler_characteristic(self) -> int:
        return self.graph.num_vertices - self.graph.num_edges + sum(f.euler() for f in self.faces)

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic()) // 2

    @property
    def is_cellular(self) -> bool:
        if self.graph.num_edges == 0:
            return all(f.genus == 0 for f in self.faces)
        return all(f.is_cellular for f in self.faces)

    def cellular_faces(self) -> List[Tuple[int, Face]]:
        return [(i, f) for i, f in enumerate(self.faces) if f.is_cellular]

    def face_census(self) -> Dict[int, int]:
        """f_i: the number of cellular faces of each degree i."""
        census: Dict[int, int] = {}
        if self.graph.num_edges == 0:
            if all(f.genus == 0 for f in self.faces):
                census[0] = len(self.faces)
            return census
        for f in self.faces:
            if f.is_cellular:
                census[f.degree] = census.get(f.degree, 0) + 1
        return census

    def face_is_degenerate(self, face_index: int) -> bool:
        verts: List[int] = []
        for w in self.faces[face_index].walks:
            verts.extend(self.walk_vertices(w))
        return len(set(verts)) < len(verts)

    def rotation_successor(self, d: int) -> int:
        rot = self.rotation[self.dart_tail(d)]
        return rot[(rot.index(d) + 1) % len(rot)]

    def next_in_face(self, d: int) -> int:
        return self.rotation_successor(d ^ 1)


def trace_faces(m: SurfaceMap) -> List[FaceWalk]:
    """The facial walks of a map, with vertex sequences."""
    return [FaceWalk(w, m.walk_vertices(w)) for w in m.walks]


def euler_census_check(m: SurfaceMap) -> bool:
    """For a connected cellular map: sum (4-i) f_i = 8 - 8g - 2 gamma."""
    if not m.is_cellular:
        raise ValueError("euler census requires a cellular map")
    if not m.graph.is_connected():
        raise ValueError("euler census requires a connected map")
    census = m.face_census()
    lhs = sum((4 - i) * n for i, n in census.items())
    return lhs == 8 - 8 * m.genus - 2 * gamma(m.graph)


# ---------------------------------------------------------------------------
# Canonical codes and map isomorphism
# ---------------------------------------------------------------------------


def _relabel_bfs(succ: Dict[int, int], start: int, reverse: bool) -> Optional[Dict[int, int]]:
    """Deterministic BFS relabelling of darts from one root.

    Neighbour order: rotation successor (or predecessor when reversed),
    then edge reversal.  Returns None if not all darts are reached.
    """
    if reverse:
        step = {v: k for k, v in succ.items()}
    else:
        step = succ
    label: Dict[int, int] = {start: 0}
    order = [start]
    head = 0
    while head < len(order):
        d = order[head]
        head += 1
        for nxt in (step[d], d ^ 1):
            if nxt not in label:
                label[nxt] = len(order)
                order.append(nxt)
    if len(label) != len(succ):
        return None
    return label


def canonical_code(m: SurfaceMap) -> bytes:
    """Canonical byte string: equal iff the maps are isomorphic.

    Isomorphism means a graph isomorphism plus a surface homeomorphism,
    orientation-reversing ones included, and matching face data.  The code
    is the minimum over all starting darts and both orientations of the
    relabelled (successor, reversal, faces) tables.
    """
    graph = m.graph
    if graph.num_edges == 0:
        tags = tuple(sorted(f.genus for f in m.faces))
        return ("V1|" + ",".join(map(str, tags))).encode()
    if not graph.is_connected():
        raise ValueError("canonical codes are defined for connected maps only")
    succ: Dict[int, int] = {}
    for v, rot in m.rotation.items():
        for i, d in enumerate(rot):
            succ[d] = rot[(i + 1) % len(rot)]

    nd = len(succ)
    best: Optional[Tuple] = None
    for reverse in (False, True):
        for start in sorted(succ):
            label = _relabel_bfs(succ, start, reverse)
            assert label is not None
            step = succ if not reverse else {v: k for k, v in succ.items()}
            inv = [0] * nd
            for old, new in label.items():
                inv[new] = old
            sigma_tab = tuple(label[step[inv[i]]] for i in range(nd))
            theta_tab = tuple(label[inv[i] ^ 1] for i in range(nd))
            face_tab = tuple(
                sorted(
                    (f.genus, tuple(sorted(_canon_cycle(tuple(label[d] for d in w)) for w in f.walks)))
                    for f in m.faces
                )
            )
            cand = (sigma_tab, theta_tab, face_tab)
            if best is None or cand < best:
                best = cand
    assert best is not None
    sigma_tab, theta_tab, face_tab = best
    text = (
        "M|"
        + ",".join(map(str, sigma_tab))
        + "|"
        + ",".join(map(str, theta_tab))
        + "|"
        + ";".join(f"{g}:" + ":".join("." .join(map(str, w)) for w in ws) for g, ws in face_tab)
    )
    return text.encode()


def map_isomorphic(m1: SurfaceMap, m2: SurfaceMap) -> bool:
    return canonical_code(m1) == canonical_code(m2)


# ---------------------------------------------------------------------------
# Maps from drawings in the unit-square flat torus
# ---------------------------------------------------------------------------


def from_flat_torus_drawing(
    positions: Mapping[int, Tuple[float, float]],
    edges: Sequence[Tuple],
    noncellular: str = "auto",
    planar_face_genus: Optional[int] = None,
) -> SurfaceMap:
    """Build a torus map from straight-line drawing data.

    ``positions`` gives each vertex a point in the unit square; each edge
    is (u, v, (wx, wy)) and is drawn as the segment from u to the copy of
    v translated by the wrap vector (wx, wy).  Rotations are read off from
    the segment angles.  Optional 4th/5th entries give explicit angle
    overrides at u and v for edges whose segments would coincide.

    Face handling: if the traced walks already close up a torus the map is
    cellular.  Otherwise ``noncellular='auto'`` merges a unique pair of
    walks with opposite nonzero winding into one annular face, or, for a
    planar drawing (all windings zero), adds a handle behind the face
    selected by ``planar_face_genus`` (walk index).
    """
    darts_at: Dict[int, List[Tuple[float, int]]] = {v: [] for v in positions}
    pairs = {}
    winding: Dict[int, Tuple[int, int]] = {}
    for eid, spec in enumerate(edges):
        u, v, wrap = spec[0], spec[1], spec[2]
        ang_u = spec[3] if len(spec) > 3 else None
        ang_v = spec[4] if len(spec) > 4 else None
        pairs[eid] = (u, v)
        ux, uy = positions[u]
        vx, vy = positions[v][0] + wrap[0], positions[v][1] + wrap[1]
        theta = math.atan2(vy - uy, vx - ux)
        darts_at[u].append((theta if ang_u is None else ang_u, 2 * eid))
        back = math.atan2(uy - vy, ux - vx)
        darts_at[v].append((back if ang_v is None else ang_v, 2 * eid + 1))
        winding[2 * eid] = (wrap[0], wrap[1])
        winding[2 * eid + 1] = (-wrap[0], -wrap[1])

    graph = MultiGraph(frozenset(positions), pairs)
    rotation = {}
    for v, lst in darts_at.items():
        lst.sort()
        angles = [a for a, _ in lst]
        if len(set(angles)) != len(angles):
            raise ValueError(f"coincident edge directions at vertex {v}; pass explicit angles")
        rotation[v] = tuple(d for _, d in lst)

    walks = trace_walks(graph, rotation)
    windings = []
    for w in walks:
        wx = sum(winding[d][0] for d in w)
        wy = sum(winding[d][1] for d in w)
        windings.append((wx, wy))

    cellular = SurfaceMap(graph, rotation)
    if cellular.genus == 1:
        return cellular
    if cellular.genus != 0:
        raise ValueError("drawing traces to genus > 1; not a torus drawing")
    nonzero = [i for i, w in enumerate(windings) if w != (0, 0)]
    if noncellular != "auto":
        raise ValueError("only automatic non-cellular recovery is implemented")
    if len(nonzero) == 2:
        i, j = nonzero
        assert windings[i][0] == -windings[j][0] and windings[i][1] == -windings[j][1]
        faces = [Face((walks[i], walks[j]), 0)]
        faces += [Face((w,), 0) for k, w in enumerate(walks) if k not in (i, j)]
        return SurfaceMap(graph, rotation, faces)
    if not nonzero:
        if planar_face_genus is None:
            raise ValueError("planar drawing: specify which face carries the handle")
        faces = [Face((w,), 1 if k == planar_face_genus else 0) for k, w in enumerate(walks)]
        return SurfaceMap(graph, rotation, faces)
    raise ValueError("cannot infer the face grouping from windings; build the map explicitly")


# ---------------------------------------------------------------------------
# Cutting and capping non-cellular faces
# ---------------------------------------------------------------------------


def cut_and_cap(
    m: SurfaceMap,
    face_index: int,
    walk_split: Optional[Tuple[Iterable[Tuple[int, ...]], Iterable[Tuple[int, ...]]]] = None,
) -> SurfaceMap:
    """Cut along a non-separating loop inside a non-cellular face and cap.

    A face with a positive genus tag loses one handle; an annular face
    (two walks, genus 0) splits into two capped faces.  For faces with
    more boundary walks the caller must say which walks fall on which side
    of the cut.  The underlying graph and rotation are unchanged.
    """
    face = m.faces[face_index]
    if face.is_cellular:
        raise ValueError("cut_and_cap requires a non-cellular face")
    new_faces = list(m.faces)
    if face.genus >= 1:
        new_faces[face_index] = Face(face.walks, face.genus - 1)
    elif len(face.walks) == 2 and walk_split is None:
        w1, w2 = face.walks
        new_faces[face_index] = Face((w1,), 0)
        new_faces.append(Face((w2,), 0))
    elif walk_split is not None:
        left = tuple(sorted(tuple(w) for w in walk_split[0]))
        right = tuple(sorted(tuple(w) for w in walk_split[1]))
        if set(left) | set(right) != set(face.walks) or set(left) & set(right):
            raise ValueError("walk_split must partition the face's walks")
        if not left or not right:
            raise ValueError("both sides of the cut must carry a boundary walk")
        new_faces[face_index] = Face(left, 0)
        new_faces.append(Face(right, 0))
    else:
        raise ValueError("face has more than two walks; pass an explicit walk_split")
    out = SurfaceMap(m.graph, m.rotation, new_faces)
    assert out.genus == m.genus - 1
    return out


# ---------------------------------------------------------------------------
# Submaps, regions and face interiors
# ---------------------------------------------------------------------------


def submap_rotation(m: SurfaceMap, h: SubgraphRef) -> Dict[int, Tuple[int, ...]]:
    """Rotation of an embedded subgraph: the ambient rotation restricted."""
    if h.parent is not m.graph:
        raise ValueError("subgraph does not reference this map's graph")
    keep = set()
    for e in h.edge_set:
        keep.add(2 * e)
        keep.add(2 * e + 1)
    return {v: tuple(d for d in m.rotation[v] if d in keep) for v in h.vertex_set}


@dataclass
class _RegionData:
    index: int
    walks: Tuple[Tuple[int, ...], ...]  # submap walks bounding this region
    genus: int
    ambient_faces: FrozenSet[int]
    inner_edges: FrozenSet[int]  # ambient edges strictly inside
    inner_vertices: FrozenSet[int]  # ambient vertices strictly inside


def _analyse_submap(m: SurfaceMap, h: SubgraphRef) -> Tuple[Dict[int, Tuple[int, ...]], List[_RegionData]]:
    if m.graph.num_edges == 0:
        raise ValueError("ambient map has no edges")
    if not h.vertex_set:
        raise ValueError("empty subgraph")
    for v in h.vertex_set:
        if not any(v in m.graph.edges[e] for e in h.edge_set):
            if len(h.vertex_set) > 1 or h.edge_set:
                raise ValueError("subgraph has an isolated vertex; regions are undefined")

    rot_h = submap_rotation(m, h)
    h_walks = trace_walks(h.to_multigraph(), rot_h) if h.edge_set else []

    # union-find over ambient faces, merged across every non-subgraph edge
    parent = list(range(len(m.faces)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for e in m.graph.edges:
        if e not in h.edge_set:
            union(m.face_of_dart(2 * e), m.face_of_dart(2 * e + 1))

    # region of each submap walk, via the ambient face just after each dart
    region_of_walk: Dict[Tuple[int, ...], int] = {}
    for w in h_walks:
        regions = {find(m.face_of_dart(d)) for d in w}
        if len(regions) != 1:
            raise AssertionError("inconsistent region assignment along a submap walk")
        region_of_walk[w] = regions.pop()

    if not h.edge_set:
        # single-vertex subgraph: one region, the whole complement
        roots = {find(i) for i in range(len(m.faces))}
        assert len(roots) == 1
        region_of_vertex_walk = roots.pop()

    groups: Dict[int, List[Tuple[int, ...]]] = {}
    for w, r in region_of_walk.items():
        groups.setdefault(r, []).append(w)
    if not h.edge_set:
        groups[region_of_vertex_walk] = []

    regions: List[_RegionData] = []
    order = sorted(groups, key=lambda r: min((min(w) for w in groups[r]), default=-1))
    for idx, root in enumerate(order):
        amb_faces = frozenset(i for i in range(len(m.faces)) if find(i) == root)
        inner_edges = frozenset(
            e for e in m.graph.edges if e not in h.edge_set and find(m.face_of_dart(2 * e)) == root
        )
        inner_vertices = set()
        for v in m.graph.vertices - h.vertex_set:
            d = m.rotation[v][0]
            if find(m.face_of_dart(d)) == root:
                inner_vertices.add(v)
        chi = (
            sum(m.faces[i].euler() for i in amb_faces)
            - len(inner_edges)
            + len(inner_vertices)
        )
        walks = tuple(sorted(groups[root]))
        boundaries = max(1, len(walks))
        genus2 = 2 - chi - boundaries
        if genus2 % 2 != 0 or genus2 < 0:
            raise AssertionError(f"region euler characteristic {chi} with {boundaries} walks is not a surface")
        regions.append(
            _RegionData(idx, walks, genus2 // 2, amb_faces, inner_edges, frozenset(inner_vertices))
        )
    return rot_h, regions


def submap_faces(m: SurfaceMap, h: SubgraphRef) -> List[Face]:
    """The faces of an embedded subgraph, with genus tags computed from
    what the ambient map puts inside each region."""
    _, regions = _analyse_submap(m, h)
    return [Face(r.walks, r.genus) for r in regions]


def submap_as_map(m: SurfaceMap, h: SubgraphRef) -> SurfaceMap:
    """An embedded subgraph as a map on the same surface."""
    rot_h, regions = _analyse_submap(m, h)
    faces = [Face(r.walks, r.genus) for r in regions]
    out = SurfaceMap(h.to_multigraph(), rot_h, faces)
    assert out.genus == m.genus
    return out


@dataclass(frozen=True)
class FaceInterior:
    """int/ext/boundary of one face of a submap, all in the ambient graph."""

    interior: SubgraphRef
    exterior: SubgraphRef
    boundary: SubgraphRef


def face_interior(m: SurfaceMap, h: SubgraphRef, face_index: int) -> FaceInterior:
    """Everything of the ambient graph inside (resp. outside) one face of
    the submap ``h``; the boundary is their intersection."""
    _, regions = _analyse_submap(m, h)
    try:
        region = regions[face_index]
    except IndexError:
        raise ValueError(f"submap has {len(regions)} faces; index {face_index} out of range")
    g = m.graph
    boundary_edges = frozenset(d >> 1 for w in region.walks for d in w)
    boundary_vertices = frozenset(_dart_tail(g, d) for w in region.walks for d in w)
    if not h.edge_set:
        boundary_vertices = frozenset(h.vertex_set)
    int_edges = region.inner_edges | boundary_edges
    int_vertices = (
        region.inner_vertices
        | boundary_vertices
        | frozenset(x for e in region.inner_edges for x in g.edges[e])
    )
    interior = g.subgraph(int_vertices, int_edges)
    ext_edges = frozenset(g.edges) - region.inner_edges
    ext_vertices = frozenset(g.vertices) - region.inner_vertices
    exterior = g.subgraph(ext_vertices, ext_edges)
    return FaceInterior(interior, exterior, interior.intersection(exterior))


# ---------------------------------------------------------------------------
# Homology labels on cellular torus maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomologyLabeling:
    """A Z^2 class per dart: tree darts are zero, every facial walk sums
    to zero, and two cotree generators span the lattice."""

    labels: Mapping[int, Tuple[int, int]]
    tree_edges: FrozenSet[int]
    generator_edges: Tuple[int, int]

    def of_dart(self, d: int) -> Tuple[int, int]:
        return self.labels[d]

    def sum_along(self, darts: Iterable[int]) -> Tuple[int, int]:
        x = y = 0
        for d in darts:
            dx, dy = self.labels[d]
            x += dx
            y += dy
        return (x, y)


def homology_labels(m: SurfaceMap) -> HomologyLabeling:
    """Tree-cotree labelling of a connected cellular genus-1 map."""
    if m.genus != 1 or not m.is_cellular:
        raise ValueError("homology labels require a cellular map of genus 1")
    if m._homology is not None:
        return m._homology
    g = m.graph
    # spanning tree by BFS, smallest ids first
    root = min(g.vertices)
    tree: Set[int] = set()
    seen = {root}
    frontier = [root]
    adj: Dict[int, List[Tuple[int, int]]] = {v: [] for v in g.vertices}
    for e, (u, v) in sorted(g.edges.items()):
        adj[u].append((v, e))
        adj[v].append((u, e))
    while frontier:
        nxt = []
        for v in sorted(frontier):
            for w, e in sorted(adj[v]):
                if w not in seen:
                    seen.add(w)
                    tree.add(e)
                    nxt.append(w)
        frontier = nxt
    assert len(seen) == g.num_vertices

    # dual spanning tree over faces through non-tree edges
    cotree = [e for e in sorted(g.edges) if e not in tree]
    dual_seen = {0}
    dual_tree: Dict[int, Tuple[int, int]] = {}  # face -> (via edge, parent face)
    dual_edges: Set[int] = set()
    dual_order: List[int] = []
    changed = True
    while changed:
        changed = False
        for e in cotree:
            if e in dual_edges:
                continue
            f1 = m.face_of_dart(2 * e)
            f2 = m.face_of_dart(2 * e + 1)
            if (f1 in dual_seen) != (f2 in dual_seen):
                child = f2 if f1 in dual_seen else f1
                dual_seen.add(child)
                dual_tree[child] = (e, f1 if child == f2 else f2)
                dual_edges.add(e)
                dual_order.append(child)
                changed = True
    generators = [e for e in cotree if e not in dual_edges]
    if len(generators) != 2:
        raise AssertionError(f"expected 2 generator edges on the torus, found {len(generators)}")

    labels: Dict[int, Tuple[int, int]] = {}

    def set_edge(e: int, vec: Tuple[int, int]) -> None:
        labels[2 * e] = vec
        labels[2 * e + 1] = (-vec[0], -vec[1])

    for e in tree:
        set_edge(e, (0, 0))
    set_edge(generators[0], (1, 0))
    set_edge(generators[1], (0, 1))
    # peel dual-tree leaves: children first in reverse discovery order
    for child in reversed(dual_order):
        e, _parent = dual_tree[child]
        walk = m.faces[child].walks[0]
        sx = sy = 0
        sign = 0
        for d in walk:
            if d >> 1 == e:
                sign += 1 if d == 2 * e else -1
                continue
            if d in labels:
                vx, vy = labels[d]
                sx += vx
                sy += vy
            else:
                raise AssertionError("dual tree order failed to isolate one unknown per face")
        # walk sum must vanish: sign * label(2e) + (sx, sy) = 0
        assert sign in (1, -1)
        set_edge(e, (-sx * sign, -sy * sign))

    lab = HomologyLabeling(labels, frozenset(tree), (generators[0], generators[1]))
    # invariants: every facial walk sums to zero
    for f in m.faces:
        for w in f.walks:
            assert lab.sum_along(w) == (0, 0)
    m._homology = lab
    return lab


def cycle_classes(m: SurfaceMap, h: SubgraphRef) -> List[Tuple[int, int]]:
    """Homology classes of a fundamental cycle basis of a connected subgraph."""
    lab = homology_labels(m)
    g = h.to_multigraph()
    if not g.is_connected():
        raise ValueError("cycle classes are computed per connected subgraph")
    root = min(g.vertices)
    # BFS tree inside h, tracking the class of the tree path from the root
    reach: Dict[int, Tuple[int, int]] = {root: (0, 0)}
    tree_edges: Set[int] = set()
    frontier = [root]
    adj: Dict[int, List[Tuple[int, int, int]]] = {v: [] for v in g.vertices}
    for e, (u, v) in sorted(g.edges.items()):
        adj[u].append((v, e, 2 * e))
        adj[v].append((u, e, 2 * e + 1))
    while frontier:
        nxt = []
        for v in sorted(frontier):
            for w, e, d in sorted(adj[v]):
                if w not in reach:
                    dx, dy = lab.of_dart(d)
                    px, py = reach[v]
                    reach[w] = (px + dx, py + dy)
                    tree_edges.add(e)
                    nxt.append(w)
        frontier = nxt
    out = []
    for e, (u, v) in sorted(g.edges.items()):
        if e in tree_edges:
            continue
        dx, dy = lab.of_dart(2 * e)
        ux, uy = reach[u]
        vx, vy = reach[v]
        out.append((ux + dx - vx, uy + dy - vy))
    return out


class SubgraphClass(Enum):
    INESSENTIAL = "inessential"
    ANNULAR = "annular"
    ESSENTIAL = "essential-nonannular"


def classify_subgraph(m: SurfaceMap, h: SubgraphRef) -> SubgraphClass:
    """Disc / annulus / neither, for a connected subgraph of a torus map.

    Decided homologically: on the torus a cycle is null-homotopic iff its
    class vanishes, so a connected subgraph fits in a disc iff all of its
    cycle classes are zero, and in an annulus iff they span a rank-one
    subgroup.
    """
    classes = [c for c in cycle_classes(m, h) if c != (0, 0)]
    if not classes:
        return SubgraphClass.INESSENTIAL
    c0 = classes[0]
    if all(c0[0] * c[1] - c0[1] * c[0] == 0 for c in classes[1:]):
        return SubgraphClass.ANNULAR
    return SubgraphClass.ESSENTIAL


def intersection_number(a: Tuple[int, int], b: Tuple[int, int]) -> int:
    """Minimal geometric intersection number of torus classes: |det(a b)|."""
    return abs(a[0] * b[1] - a[1] * b[0])
