"""Deciding irreducibility of tight torus maps.

A tight surface map is irreducible when it has no digon face, no triangle
face, and both diagonal contractions of every quadrilateral face destroy
sparsity.  A reducible verdict carries a concrete sparsity-preserving
contraction; an irreducible verdict can carry, for every quadrilateral
face, the pair of maximal blockers for its two diagonals (which are then
both type 2 and disjoint).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..multigraph import gamma
from ..sparsity import Blocker, find_blockers, is_sparse, is_tight, quad_contracted_graph
from ..moves import (
    Blocked,
    MoveRecord,
    digon_contract,
    quad_context_of_face,
    quad_contract,
    triangle_contract,
)
from ..surfacemap import SurfaceMap

__all__ = ["IrreducibleVerdict", "is_irreducible", "first_contraction"]


@dataclass(frozen=True)
class IrreducibleVerdict:
    irreducible: bool
    move: Optional[MoveRecord] = None
    result: Optional[SurfaceMap] = None
    quad_evidence: Dict[int, Tuple[Tuple[Blocker, ...], Tuple[Blocker, ...]]] = field(
        default_factory=dict
    )

    def __bool__(self) -> bool:
        return self.irreducible


def _sorted_cellular_faces(m: SurfaceMap) -> List[Tuple[int, int]]:
    """(face index, degree) of cellular faces, smallest boundary dart first."""
    out = []
    for i, f in enumerate(m.faces):
        if f.is_cellular:
            out.append((min(f.walks[0]), i, f.degree))
    out.sort()
    return [(i, deg) for _, i, deg in out]


def first_contraction(m: SurfaceMap) -> Optional[Tuple[SurfaceMap, MoveRecord]]:
    """The first sparsity-preserving contraction in the canonical order:
    digons, then triangles (by boundary edge order), then quadrilateral
    diagonals.  None when the map is irreducible."""
    faces = _sorted_cellular_faces(m)
    for i, deg in faces:
        if deg == 2:
            return digon_contract(m, i)
    for i, deg in faces:
        if deg != 3:
            continue
        walk = m.faces[i].walks[0]
        for d in walk:
            res = triangle_contract(m, i, d >> 1)
            if not isinstance(res, Blocked):
                return res
        raise AssertionError("every edge of a triangle blocked; sparsity theory violated")
    for i, deg in faces:
        if deg != 4:
            continue
        ctx = quad_context_of_face(m, i)
        if ctx.v1 == ctx.v3:
            res = quad_contract(m, i, "24")
            if isinstance(res, Blocked):
                raise AssertionError("degenerate quadrilateral with its free diagonal blocked")
            return res
        if ctx.v2 == ctx.v4:
            res = quad_contract(m, i, "13")
            if isinstance(res, Blocked):
                raise AssertionError("degenerate quadrilateral with its free diagonal blocked")
            return res
        for diagonal in ("13", "24"):
            res = quad_contract(m, i, diagonal)
            if not isinstance(res, Blocked):
                return res
    return None


def is_irreducible(m: SurfaceMap, want_evidence: bool = False) -> IrreducibleVerdict:
    """Verdict for a (2,2)-tight torus map.

    With ``want_evidence`` the irreducible verdict includes the maximal
    blockers of both diagonals of each quadrilateral face.
    """
    if m.genus != 1:
        raise ValueError("irreducibility is decided for torus maps")
    if not is_tight(m.graph, 2):
        raise ValueError("irreducibility is defined for (2,2)-tight maps")
    found = first_contraction(m)
    if found is not None:
        result, rec = found
        return IrreducibleVerdict(False, move=rec, result=result)
    evidence: Dict[int, Tuple[Tuple[Blocker, ...], Tuple[Blocker, ...]]] = {}
    if want_evidence:
        for i, f in enumerate(m.faces):
            if not f.is_cellular or f.degree != 4:
                continue
            ctx = quad_context_of_face(m, i)
            b13 = tuple(find_blockers(m.graph, ctx, "13"))
            b24 = tuple(find_blockers(m.graph, ctx, "24"))
            assert b13 and b24
            evidence[i] = (b13, b24)
    return IrreducibleVerdict(True, quad_evidence=evidence)
