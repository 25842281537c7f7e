"""Embedding-preserving moves: contractions, splits, divalent additions.

Every move consumes a SurfaceMap and returns a new one together with a
MoveRecord naming the site in terms of the source map's dart ids, so a
recorded sequence can be replayed verbatim.  Contractions of digons,
triangles and quadrilaterals remove one vertex and two edges; the splits
are their exact inverses.

All surgeries are built from three primitives (contract an edge, delete
an edge, add an edge inside a face) whose face bookkeeping keeps the
ambient surface fixed, non-cellular faces included.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .multigraph import MultiGraph, SubgraphRef, gamma
from .sparsity import (
    Blocker,
    QuadContext,
    find_blockers,
    is_sparse,
    quad_contracted_graph,
    triangle_blocker_witness,
)
from .surfacemap import Face, SurfaceMap, trace_walks

__all__ = [
    "MoveRecord",
    "Blocked",
    "digon_contract",
    "triangle_contract",
    "quad_contract",
    "quad_context_of_face",
    "digon_split",
    "triangle_split",
    "quad_split",
    "henneberg_add",
    "remove_divalent_vertex",
    "add_edge_in_face",
    "complete_to_tight",
    "apply_move",
]


@dataclass(frozen=True)
class MoveRecord:
    """A replayable move: kind, site data in source-map dart ids, and the
    id bookkeeping needed to reproduce the target bit for bit."""

    kind: str
    site: Dict[str, object]
    ids: Dict[str, object] = field(default_factory=dict)

    def to_json(self) -> Dict[str, object]:
        return {"kind": self.kind, "site": dict(self.site), "ids": dict(self.ids)}

    @staticmethod
    def from_json(obj: Dict[str, object]) -> "MoveRecord":
        return MoveRecord(str(obj["kind"]), dict(obj["site"]), dict(obj.get("ids", {})))


@dataclass(frozen=True)
class Blocked:
    """A contraction rejected because the result is not (2,2)-sparse."""

    witness: Optional[object] = None


# ---------------------------------------------------------------------------
# Kernel surgeries
# ---------------------------------------------------------------------------


def _rot_to_front(rot: Tuple[int, ...], d: int) -> Tuple[int, ...]:
    k = rot.index(d)
    return rot[k:] + rot[:k]


def _contract_edge_map(m: SurfaceMap, e: int) -> SurfaceMap:
    """Collapse a non-loop edge; faces keep their walks minus the edge's darts."""
    a, b = m.graph.edges[e]
    if a == b:
        raise ValueError("cannot contract a loop")
    da, db = 2 * e, 2 * e + 1
    keep = min(a, b)
    seq_a = _rot_to_front(m.rotation[a], da)[1:]
    seq_b = _rot_to_front(m.rotation[b], db)[1:]
    merged = seq_a + seq_b
    rotation = {v: rot for v, rot in m.rotation.items() if v not in (a, b)}
    rotation[keep] = merged
    graph = m.graph.contract_edge(e)
    if graph.num_edges == 0:
        total = m.genus
        g = MultiGraph(frozenset([keep]), {})
        return SurfaceMap(g, {keep: ()}, faces=[Face((), total)])
    removed = {da, db}
    faces = []
    for f in m.faces:
        walks = []
        for w in f.walks:
            trimmed = tuple(d for d in w if d not in removed)
            if trimmed:
                k = trimmed.index(min(trimmed))
                walks.append(trimmed[k:] + trimmed[:k])
            else:
                raise AssertionError("a facial walk vanished outside the single-vertex collapse")
        faces.append(Face(tuple(sorted(walks)), f.genus))
    out = SurfaceMap(graph, rotation, faces)
    assert out.genus == m.genus
    return out


def _delete_edge_map(m: SurfaceMap, e: int) -> SurfaceMap:
    d, dm = 2 * e, 2 * e + 1
    w1 = m.walk_of_dart(d)
    w2 = m.walk_of_dart(dm)
    f1 = m.face_of_walk(w1)
    f2 = m.face_of_walk(w2)
    graph = m.graph.delete_edge(e)
    rotation = {v: tuple(x for x in rot if x not in (d, dm)) for v, rot in m.rotation.items()}
    if graph.num_edges == 0:
        if graph.num_vertices != 1:
            raise ValueError("deletion would strand isolated vertices")
        v = next(iter(graph.vertices))
        return SurfaceMap(graph, {v: ()}, faces=[Face((), m.genus)])
    if any(not rot for rot in rotation.values()):
        raise ValueError("deletion would strand an isolated vertex")

    new_walks = trace_walks(graph, rotation)
    old_set = {w for f in m.faces for w in f.walks}
    changed = [w for w in new_walks if w not in old_set]
    faces = [f for i, f in enumerate(m.faces) if i not in (f1, f2)]
    if w1 == w2:
        # both sides on one walk: it splits in two, genus unchanged
        assert len(changed) == 2
        keep_walks = tuple(w for w in m.faces[f1].walks if w != w1) + tuple(changed)
        faces.append(Face(tuple(sorted(keep_walks)), m.faces[f1].genus))
    elif f1 == f2:
        # two boundary walks of one face joined: the face gains a handle
        assert len(changed) == 1
        keep_walks = tuple(w for w in m.faces[f1].walks if w not in (w1, w2)) + tuple(changed)
        faces.append(Face(tuple(sorted(keep_walks)), m.faces[f1].genus + 1))
    else:
        assert len(changed) == 1
        keep_walks = (
            tuple(w for w in m.faces[f1].walks if w != w1)
            + tuple(w for w in m.faces[f2].walks if w != w2)
            + tuple(changed)
        )
        faces.append(Face(tuple(sorted(keep_walks)), m.faces[f1].genus + m.faces[f2].genus))
    out = SurfaceMap(graph, rotation, faces)
    assert out.genus == m.genus
    return out


def add_edge_in_face(
    m: SurfaceMap, corner_u: int, corner_v: int, eid: Optional[int] = None
) -> Tuple[SurfaceMap, MoveRecord]:
    """Add an edge inside a face between two of its corners.

    A corner is named by the dart after which the new dart is inserted in
    the rotation at that dart's tail vertex.  Both corners must open into
    the same face.  When the corners sit on one boundary walk the new edge
    cuts a disc off that face (the disc is the side of the new edge's
    tail dart); corners on different walks of the face join them.
    """
    if corner_u == corner_v:
        raise ValueError("identical corners would create a loop edge")
    fu = m.face_of_dart(corner_u ^ 1)
    fv = m.face_of_dart(corner_v ^ 1)
    if fu != fv:
        raise ValueError("corners lie in different faces")
    face = m.faces[fu]
    u = m.dart_tail(corner_u)
    v = m.dart_tail(corner_v)
    if u == v:
        raise ValueError("loop edges are never created")
    graph, e = m.graph.add_edge(u, v, eid)
    delta, delta_m = 2 * e, 2 * e + 1
    rotation = dict(m.rotation)

    def insert_after(rot: Tuple[int, ...], anchor: int, new: int) -> Tuple[int, ...]:
        k = rot.index(anchor)
        return rot[: k + 1] + (new,) + rot[k + 1 :]

    rotation[u] = insert_after(rotation[u], corner_u, delta)
    rotation[v] = insert_after(rotation[v], corner_v, delta_m)

    w1 = m.walk_of_dart(corner_u ^ 1)
    w2 = m.walk_of_dart(corner_v ^ 1)
    new_walks = trace_walks(graph, rotation)
    old_set = {w for f in m.faces for w in f.walks}
    changed = [w for w in new_walks if w not in old_set]
    faces = [f for i, f in enumerate(m.faces) if i != fu]
    if w1 == w2:
        assert len(changed) == 2
        disc = next(w for w in changed if delta in w)
        other = next(w for w in changed if w != disc)
        faces.append(Face((disc,), 0))
        keep = tuple(w for w in face.walks if w != w1) + (other,)
        faces.append(Face(tuple(sorted(keep)), face.genus))
    else:
        assert len(changed) == 1
        keep = tuple(w for w in face.walks if w not in (w1, w2)) + tuple(changed)
        faces.append(Face(tuple(sorted(keep)), face.genus))
    out = SurfaceMap(graph, rotation, faces)
    assert out.genus == m.genus
    rec = MoveRecord("edge-add", {"corner_u": corner_u, "corner_v": corner_v}, {"new_edge": e})
    return out, rec


# ---------------------------------------------------------------------------
# Face context helpers
# ---------------------------------------------------------------------------


def _cellular_walk(m: SurfaceMap, face_index: int, degree: int) -> Tuple[int, ...]:
    face = m.faces[face_index]
    if not face.is_cellular or face.degree != degree:
        raise ValueError(f"face {face_index} is not a cellular face of degree {degree}")
    return face.walks[0]


def quad_context_of_face(m: SurfaceMap, face_index: int) -> QuadContext:
    w = _cellular_walk(m, face_index, 4)
    vs = [m.dart_tail(d) for d in w]
    es = [d >> 1 for d in w]
    return QuadContext(vs[0], vs[1], vs[2], vs[3], es[0], es[1], es[2], es[3])


# ---------------------------------------------------------------------------
# Contractions
# ---------------------------------------------------------------------------


def digon_contract(m: SurfaceMap, face_index: int) -> Tuple[SurfaceMap, MoveRecord]:
    """Contract a digon face: merge its two vertices, drop both edges.

    Preserves (2,l)-sparsity in both directions; never blocked.
    """
    w = _cellular_walk(m, face_index, 2)
    d1, d2 = w
    v1, v2 = m.dart_tail(d1), m.dart_tail(d2)
    e1, e2 = d1 >> 1, d2 >> 1
    if v1 == v2 or e1 == e2:
        raise ValueError("degenerate digon cannot be contracted")
    out = _delete_edge_map(_contract_edge_map(m, e1), e2)
    rec = MoveRecord(
        "digon-contract",
        {"face_dart": min(w)},
        {"merged": min(v1, v2), "removed_vertex": max(v1, v2), "removed_edges": [e1, e2]},
    )
    return out, rec


def triangle_contract(
    m: SurfaceMap, face_index: int, edge: int, want_witness: bool = False
) -> Union[Tuple[SurfaceMap, MoveRecord], Blocked]:
    """Contract a triangle face along one of its edges.

    The walk is rotated so the chosen edge comes first; the move contracts
    it and deletes the next boundary edge.  Returns Blocked when the
    result is not (2,2)-sparse; the witness subgraph (a tight subgraph
    containing the contracted edge but not the opposite vertex) is only
    extracted on request.
    """
    w = _cellular_walk(m, face_index, 3)
    ds = [d for d in w if d >> 1 == edge]
    if not ds:
        raise ValueError(f"edge {edge} is not on the boundary of face {face_index}")
    w = _rot_to_front(w, ds[0])
    d1, d2, d3 = w
    v1, v2, v3 = (m.dart_tail(d) for d in w)
    e1, e2 = d1 >> 1, d2 >> 1
    if len({v1, v2, v3}) < 3:
        raise ValueError("degenerate triangle boundary")
    contracted = m.graph.contract_edge(e1).delete_edge(e2)
    if not is_sparse(contracted, 2):
        witness = None
        if want_witness:
            witness = triangle_blocker_witness(m.graph, v1, e1, v2, e2, v3)
        return Blocked(witness)
    out = _delete_edge_map(_contract_edge_map(m, e1), e2)
    rec = MoveRecord(
        "triangle-contract",
        {"face_dart": min(w), "edge": e1},
        {"merged": min(v1, v2), "removed_vertex": max(v1, v2), "removed_edges": [e1, e2]},
    )
    return out, rec


def quad_contract(
    m: SurfaceMap, face_index: int, diagonal: str, want_blockers: bool = False
) -> Union[Tuple[SurfaceMap, MoveRecord], Blocked]:
    """Contract a quadrilateral face along one diagonal.

    Routes a temporary edge across the face between the diagonal's two
    corners, collapses it, and deletes the two boundary edges incident to
    the first diagonal vertex.  Returns Blocked (optionally with the
    maximal blocker witnesses) when sparsity would break.
    """
    ctx = quad_context_of_face(m, face_index)
    w = _cellular_walk(m, face_index, 4)
    if diagonal == "13":
        a, c = ctx.v1, ctx.v3
        e_del = (ctx.e1, ctx.e3)
        corner_a, corner_c = w[3] ^ 1, w[1] ^ 1  # after arriving darts at v1 and v3
    elif diagonal == "24":
        a, c = ctx.v2, ctx.v4
        e_del = (ctx.e2, ctx.e4)
        corner_a, corner_c = w[0] ^ 1, w[2] ^ 1
    else:
        raise ValueError("diagonal must be '13' or '24'")
    if a == c:
        raise ValueError("degenerate diagonal: use the other one")
    target_graph = quad_contracted_graph(m.graph, ctx, diagonal)
    if not is_sparse(target_graph, 2):
        return Blocked(find_blockers(m.graph, ctx, diagonal) if want_blockers else None)
    with_diag, add_rec = add_edge_in_face(m, corner_a, corner_c)
    diag_edge = int(add_rec.ids["new_edge"])
    out = _contract_edge_map(with_diag, diag_edge)
    out = _delete_edge_map(out, e_del[0])
    out = _delete_edge_map(out, e_del[1])
    assert out.graph.vertices == target_graph.vertices
    assert out.graph.edges == target_graph.edges
    rec = MoveRecord(
        "quad-contract",
        {"face_dart": min(w), "diagonal": diagonal},
        {"merged": min(a, c), "removed_vertex": max(a, c), "removed_edges": list(e_del)},
    )
    return out, rec


# ---------------------------------------------------------------------------
# Splits (inverse contractions)
# ---------------------------------------------------------------------------


def _linearized_rotation(m: SurfaceMap, v: int) -> Tuple[int, ...]:
    rot = m.rotation[v]
    if not rot:
        return rot
    return _rot_to_front(rot, min(rot))


def _fresh_ids(m: SurfaceMap, ids: Dict[str, object]) -> Tuple[int, int, int]:
    nv = int(ids.get("new_vertex", m.graph.fresh_vertex_id()))
    base = m.graph.fresh_edge_id()
    ne = ids.get("new_edges", [base, base + 1])
    return nv, int(ne[0]), int(ne[1])


def digon_split(
    m: SurfaceMap, v: int, cut_a: int, cut_b: int, ids: Optional[Dict[str, object]] = None
) -> Tuple[SurfaceMap, MoveRecord]:
    """Split a vertex into a digon.

    The rotation at ``v`` (linearized from its minimal dart) is cut at
    positions ``cut_a <= cut_b``; darts in between stay at ``v``, the rest
    move to the new vertex, and two parallel edges close a new digon face.
    Contracting that digon undoes the move exactly.
    """
    lin = _linearized_rotation(m, v)
    if not (0 <= cut_a <= cut_b <= len(lin)):
        raise ValueError("cut positions out of range")
    w2, e1, e2 = _fresh_ids(m, ids or {})
    part_a = lin[cut_a:cut_b]
    part_b = lin[cut_b:] + lin[:cut_a]
    d1, d1m = 2 * e1, 2 * e1 + 1  # e1 = (v, w2)
    d2, d2m = 2 * e2, 2 * e2 + 1  # e2 = (w2, v)
    edges = {**dict(m.graph.edges), e1: (v, w2), e2: (w2, v)}
    _move_darts_to(edges, part_b, w2)
    graph = MultiGraph(m.graph.vertices | {w2}, edges)
    rotation = dict(m.rotation)
    rotation[v] = (d1,) + part_a + (d2m,)
    rotation[w2] = (d1m, d2) + part_b
    faces = _carry_faces_after_insert(m, graph, rotation, frozenset((d1, d2)))
    out = SurfaceMap(graph, rotation, faces)
    assert out.genus == m.genus
    rec = MoveRecord(
        "digon-split",
        {"vertex": v, "cut_a": cut_a, "cut_b": cut_b},
        {"new_vertex": w2, "new_edges": [e1, e2]},
    )
    return out, rec


def triangle_split(
    m: SurfaceMap, v: int, anchor: int, b_len: int, ids: Optional[Dict[str, object]] = None
) -> Tuple[SurfaceMap, MoveRecord]:
    """Split a vertex into a triangle against an existing edge.

    ``anchor`` is a dart at ``v``; its edge becomes the third side of the
    new triangle.  The ``b_len`` darts after the anchor move to the new
    vertex, the rest stay.  Contracting the new triangle along its new
    edge pair undoes the move.
    """
    rot = m.rotation[v]
    if anchor not in rot:
        raise ValueError("anchor dart is not at the split vertex")
    v3 = m.dart_head(anchor)
    if v3 == v:
        raise ValueError("anchor edge is a loop; triangle split undefined")
    if not (0 <= b_len <= len(rot) - 1):
        raise ValueError("b_len out of range")
    w2, e1, e2 = _fresh_ids(m, ids or {})
    after = _rot_to_front(rot, anchor)[1:]
    part_b = after[:b_len]
    part_a = after[b_len:] + (anchor,)
    d1, d1m = 2 * e1, 2 * e1 + 1  # e1 = (v, w2)
    d2, d2m = 2 * e2, 2 * e2 + 1  # e2 = (w2, v3)
    edges = {**dict(m.graph.edges), e1: (v, w2), e2: (w2, v3)}
    _move_darts_to(edges, part_b, w2)
    graph = MultiGraph(m.graph.vertices | {w2}, edges)
    rotation = dict(m.rotation)
    rotation[v] = (d1,) + part_a
    rotation[w2] = (d1m, d2) + part_b
    d3 = anchor ^ 1  # dart of the anchor edge at v3
    rotation[v3] = _insert_before(rotation[v3], d3, d2m)
    faces = _carry_faces_after_insert(m, graph, rotation, frozenset((d1, d2, d3)))
    out = SurfaceMap(graph, rotation, faces)
    assert out.genus == m.genus
    rec = MoveRecord(
        "triangle-split",
        {"vertex": v, "anchor": anchor, "b_len": b_len},
        {"new_vertex": w2, "new_edges": [e1, e2]},
    )
    return out, rec


def quad_split(
    m: SurfaceMap, v: int, corner_x: int, corner_y: int, ids: Optional[Dict[str, object]] = None
) -> Tuple[SurfaceMap, MoveRecord]:
    """Split a vertex into a quadrilateral face.

    ``corner_x`` and ``corner_y`` are distinct darts at ``v``; their edges
    become opposite sides of the new quadrilateral, whose other two sides
    are fresh edges from the two halves of the rotation.  The inverse is
    the diagonal contraction of the new face.
    """
    rot = m.rotation[v]
    if corner_x == corner_y or corner_x not in rot or corner_y not in rot:
        raise ValueError("corner darts must be two distinct darts at the split vertex")
    v2 = m.dart_head(corner_y)
    v4 = m.dart_head(corner_x)
    if v2 == v or v4 == v:
        raise ValueError("corner edges must not be loops")
    w3, e1, e3 = _fresh_ids(m, ids or {})
    lin = _rot_to_front(rot, corner_x)  # starts at x
    iy = lin.index(corner_y)
    part_q = lin[1:iy]  # strictly between x and y -> new vertex side
    part_p = lin[iy + 1 :]  # strictly between y and x -> stays
    d1, d1m = 2 * e1, 2 * e1 + 1  # e1 = (v, v2)
    d3, d3m = 2 * e3, 2 * e3 + 1  # e3 = (w3, v4)
    edges = {**dict(m.graph.edges), e1: (v, v2), e3: (w3, v4)}
    _move_darts_to(edges, part_q + (corner_y,), w3)
    graph = MultiGraph(m.graph.vertices | {w3}, edges)
    rotation = dict(m.rotation)
    rotation[v] = (d1,) + part_p + (corner_x,)
    rotation[w3] = (d3,) + part_q + (corner_y,)
    d2 = corner_y ^ 1  # dart of e2 at v2
    d4 = corner_x ^ 1  # dart of e4 at v4
    rotation[v2] = _insert_before(rotation[v2], d2, d1m)
    rotation[v4] = _insert_before(rotation[v4], d4, d3m)
    faces = _carry_faces_after_insert(
        m, graph, rotation, frozenset((d1, corner_y ^ 1, d3, corner_x ^ 1))
    )
    out = SurfaceMap(graph, rotation, faces)
    assert out.genus == m.genus
    rec = MoveRecord(
        "quad-split",
        {"vertex": v, "corner_x": corner_x, "corner_y": corner_y},
        {"new_vertex": w3, "new_edges": [e1, e3]},
    )
    return out, rec


def _insert_before(rot: Tuple[int, ...], anchor: int, new: int) -> Tuple[int, ...]:
    k = rot.index(anchor)
    return rot[:k] + (new,) + rot[k:]


def _move_darts_to(edges: Dict[int, Tuple[int, int]], darts: Sequence[int], vertex: int) -> None:
    """Reattach the given darts' edge endpoints to ``vertex`` in place."""
    for d in darts:
        e = d >> 1
        a, b = edges[e]
        edges[e] = (vertex, b) if d & 1 == 0 else (a, vertex)


def _carry_faces_after_insert(
    m: SurfaceMap,
    graph: MultiGraph,
    rotation: Dict[int, Tuple[int, ...]],
    new_face_darts: frozenset,
) -> List[Face]:
    """Face records for a split result.

    The freshly created face is identified by its exact dart set (it can
    contain pre-existing darts for triangle and quadrilateral splits); all
    other walks keep the tag of the unique old face their surviving darts
    belonged to.  A walk with no old darts can only be the rerouted
    boundary of the edgeless face of a single-vertex map.
    """
    new_walks = trace_walks(graph, rotation)
    owner_of_dart: Dict[int, int] = {}
    for i, f in enumerate(m.faces):
        for w in f.walks:
            for d in w:
                owner_of_dart[d] = i
    new_face_walk: Optional[Tuple[int, ...]] = None
    groups: Dict[int, List[Tuple[int, ...]]] = {}
    orphans: List[Tuple[int, ...]] = []
    for w in new_walks:
        if new_face_walk is None and set(w) == set(new_face_darts):
            new_face_walk = w
            continue
        owners = {owner_of_dart[d] for d in w if d in owner_of_dart}
        if len(owners) == 1:
            groups.setdefault(owners.pop(), []).append(w)
        elif not owners:
            orphans.append(w)
        else:
            raise AssertionError("a split must not merge distinct faces")
    if new_face_walk is None:
        raise AssertionError("the new face's boundary walk did not appear")
    faces: List[Face] = []
    for i, f in enumerate(m.faces):
        walks = groups.get(i, [])
        if not walks:
            if f.walks == () and len(orphans) == 1:
                walks = [orphans.pop()]
            else:
                raise AssertionError("an old face lost all of its boundary walks")
        faces.append(Face(tuple(sorted(tuple(w) for w in walks)), f.genus))
    if orphans:
        raise AssertionError("unaccounted boundary walks after a split")
    faces.append(Face((new_face_walk,), 0))
    return faces


# ---------------------------------------------------------------------------
# Divalent vertex addition and removal
# ---------------------------------------------------------------------------


def henneberg_add(
    m: SurfaceMap,
    face_index: int,
    a: int,
    b: int,
    corner_a: Optional[int] = None,
    corner_b: Optional[int] = None,
    ids: Optional[Dict[str, object]] = None,
) -> Tuple[SurfaceMap, MoveRecord]:
    """Add a degree-2 vertex inside a face, joined to two boundary vertices.

    ``a`` and ``b`` must lie on the face's boundary; a = b is allowed and
    creates a parallel pair.  Loops are never created.  Corners pick where
    the two edges attach when a vertex meets the face more than once.
    Preserves (2,l)-sparsity for l <= 2.
    """
    face = m.faces[face_index]
    idmap = ids or {}
    w_new = int(idmap.get("new_vertex", m.graph.fresh_vertex_id()))
    base = m.graph.fresh_edge_id()
    e_list = idmap.get("new_edges", [base, base + 1])
    ep, eq = int(e_list[0]), int(e_list[1])

    if m.graph.num_edges == 0:
        # single-vertex map: the new pair closes up a digon inside the face
        v = next(iter(m.graph.vertices))
        if a != v or b != v:
            raise ValueError("boundary vertices must lie on the face")
        graph = MultiGraph(frozenset([v, w_new]), {ep: (v, w_new), eq: (w_new, v)})
        rotation = {v: (2 * ep, 2 * eq + 1), w_new: (2 * ep + 1, 2 * eq)}
        walks = trace_walks(graph, rotation)
        digon = next(w for w in walks if 2 * ep in w)
        other = next(w for w in walks if w != digon)
        faces = [Face((digon,), 0), Face((other,), m.faces[0].genus)]
        out = SurfaceMap(graph, rotation, faces)
        assert out.genus == m.genus
        rec = MoveRecord(
            "henneberg-add",
            {"face_dart": -1, "a": a, "b": b, "corner_a": -1, "corner_b": -1},
            {"new_vertex": w_new, "new_edges": [ep, eq]},
        )
        return out, rec

    boundary = {m.dart_tail(d) for w in face.walks for d in w}
    if a not in boundary or b not in boundary:
        raise ValueError("both attachment vertices must lie on the face boundary")

    def default_corner(vertex: int, avoid: Optional[int] = None) -> int:
        for w in face.walks:
            for d in w:
                if m.dart_head(d) == vertex and (d ^ 1) != avoid:
                    return d ^ 1
        raise AssertionError("no free corner at the requested vertex")

    if corner_a is None:
        corner_a = default_corner(a)
    if corner_b is None:
        corner_b = default_corner(b, avoid=corner_a if a == b else None)
    if m.dart_tail(corner_a) != a or m.dart_tail(corner_b) != b:
        raise ValueError("corner darts must be attached to the named vertices")
    if m.face_of_dart(corner_a ^ 1) != face_index or m.face_of_dart(corner_b ^ 1) != face_index:
        raise ValueError("corners must open into the chosen face")
    if corner_a == corner_b:
        raise ValueError("choose two distinct corners")

    graph = MultiGraph(
        m.graph.vertices | {w_new},
        {**dict(m.graph.edges), ep: (a, w_new), eq: (w_new, b)},
    )
    rotation = dict(m.rotation)
    rotation[a] = _insert_after_t(rotation[a], corner_a, 2 * ep)
    rotation[b] = _insert_after_t(rotation[b], corner_b, 2 * eq + 1)
    rotation[w_new] = (2 * ep + 1, 2 * eq)

    w1 = m.walk_of_dart(corner_a ^ 1)
    w2 = m.walk_of_dart(corner_b ^ 1)
    new_walks = trace_walks(graph, rotation)
    old_set = {w for f in m.faces for w in f.walks}
    changed = [w for w in new_walks if w not in old_set]
    faces = [f for i, f in enumerate(m.faces) if i != face_index]
    if w1 == w2:
        assert len(changed) == 2
        disc = next(w for w in changed if 2 * ep in w)
        other = next(w for w in changed if w != disc)
        faces.append(Face((disc,), 0))
        keep = tuple(w for w in face.walks if w != w1) + (other,)
        faces.append(Face(tuple(sorted(keep)), face.genus))
    else:
        assert len(changed) == 1
        keep = tuple(w for w in face.walks if w not in (w1, w2)) + tuple(changed)
        faces.append(Face(tuple(sorted(keep)), face.genus))
    out = SurfaceMap(graph, rotation, faces)
    assert out.genus == m.genus
    rec = MoveRecord(
        "henneberg-add",
        {"face_dart": min(min(w) for w in face.walks), "a": a, "b": b,
         "corner_a": corner_a, "corner_b": corner_b},
        {"new_vertex": w_new, "new_edges": [ep, eq]},
    )
    return out, rec


def _insert_after_t(rot: Tuple[int, ...], anchor: int, new: int) -> Tuple[int, ...]:
    k = rot.index(anchor)
    return rot[: k + 1] + (new,) + rot[k + 1 :]


def remove_divalent_vertex(m: SurfaceMap, v: int) -> Tuple[SurfaceMap, MoveRecord]:
    """Delete a degree-2 vertex and both of its edges (Henneberg inverse)."""
    rot = m.rotation[v]
    if len(rot) != 2:
        raise ValueError(f"vertex {v} does not have degree 2")
    ep, eq = rot[0] >> 1, rot[1] >> 1
    if ep == eq:
        raise ValueError("cannot remove a vertex carried by a loop")
    out = _contract_edge_map(_delete_edge_map(m, eq), ep)
    rec = MoveRecord("divalent-remove", {"vertex": v}, {"removed_edges": [ep, eq]})
    return out, rec


# ---------------------------------------------------------------------------
# Sparse-to-tight completion
# ---------------------------------------------------------------------------


def complete_to_tight(m: SurfaceMap, l: int = 2) -> SurfaceMap:
    """Add edges inside faces until the map is (2,l)-tight.

    Candidate edges run between corners of one face and are accepted when
    the pebble game still certifies sparsity; a maximal tight subgraph
    never spans everything while the count is slack, so progress is
    guaranteed.  Deterministic: faces and corners in id order.
    """
    if not is_sparse(m.graph, l):
        raise ValueError("input map is not sparse")
    current = m
    while gamma(current.graph) > l:
        progressed = False
        for fi in range(len(current.faces)):
            corners = sorted(
                {d ^ 1 for w in current.faces[fi].walks for d in w}
            )
            for i, cu in enumerate(corners):
                for cv in corners[i + 1 :]:
                    if current.dart_tail(cu) == current.dart_tail(cv):
                        continue
                    u, v = current.dart_tail(cu), current.dart_tail(cv)
                    trial, _ = current.graph.add_edge(u, v)
                    if not is_sparse(trial, l):
                        continue
                    current, _rec = add_edge_in_face(current, cu, cv)
                    progressed = True
                    break
                if progressed:
                    break
            if progressed:
                break
        if not progressed:
            raise AssertionError("no admissible edge addition found; completion is stuck")
    return current


# ---------------------------------------------------------------------------
# Replay
# ---------------------------------------------------------------------------


def apply_move(m: SurfaceMap, rec: MoveRecord) -> SurfaceMap:
    """Re-apply a recorded move to a map."""
    kind = rec.kind
    site = rec.site
    if kind == "digon-contract":
        out, _ = digon_contract(m, m.face_of_dart(int(site["face_dart"])))
        return out
    if kind == "triangle-contract":
        res = triangle_contract(m, m.face_of_dart(int(site["face_dart"])), int(site["edge"]))
        if isinstance(res, Blocked):
            raise ValueError("recorded triangle contraction is blocked on this map")
        return res[0]
    if kind == "quad-contract":
        res = quad_contract(m, m.face_of_dart(int(site["face_dart"])), str(site["diagonal"]))
        if isinstance(res, Blocked):
            raise ValueError("recorded quadrilateral contraction is blocked on this map")
        return res[0]
    if kind == "digon-split":
        out, _ = digon_split(m, int(site["vertex"]), int(site["cut_a"]), int(site["cut_b"]), dict(rec.ids))
        return out
    if kind == "triangle-split":
        out, _ = triangle_split(m, int(site["vertex"]), int(site["anchor"]), int(site["b_len"]), dict(rec.ids))
        return out
    if kind == "quad-split":
        out, _ = quad_split(m, int(site["vertex"]), int(site["corner_x"]), int(site["corner_y"]), dict(rec.ids))
        return out
    if kind == "henneberg-add":
        fd = int(site["face_dart"])
        fi = 0 if fd < 0 else m.face_of_dart(fd)
        ca = None if int(site["corner_a"]) < 0 else int(site["corner_a"])
        cb = None if int(site["corner_b"]) < 0 else int(site["corner_b"])
        out, _ = henneberg_add(m, fi, int(site["a"]), int(site["b"]), ca, cb, dict(rec.ids))
        return out
    if kind == "divalent-remove":
        out, _ = remove_divalent_vertex(m, int(site["vertex"]))
        return out
    if kind == "edge-add":
        out, _ = add_edge_in_face(m, int(site["corner_u"]), int(site["corner_v"]), int(rec.ids["new_edge"]))
        return out
    raise ValueError(f"unknown move kind {kind!r}")
