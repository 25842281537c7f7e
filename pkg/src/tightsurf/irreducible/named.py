"""The twelve catalog members with minimum degree >= 3, by their standard
names G1_1, G4_1, G4_2, G5_1, G5_2, G6_1 .. G6_5, G7_1, G8_1.

Eleven of them are pinned down by explicit flat-torus drawings; G5_1 is
the unique remaining 5-vertex member with no degree-2 vertex, so it is
identified by elimination when the catalog is assembled.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Optional

from ..surfacemap import SurfaceMap, canonical_code, from_flat_torus_drawing

__all__ = ["named_min_degree3_maps", "NAMED_IDS"]

NAMED_IDS = [
    "G1_1",
    "G4_1",
    "G4_2",
    "G5_1",
    "G5_2",
    "G6_1",
    "G6_2",
    "G6_3",
    "G6_4",
    "G6_5",
    "G7_1",
    "G8_1",
]


def _g4_1() -> SurfaceMap:
    pos = {0: (0.25, 0.5), 1: (0.5, 0.75), 2: (0.75, 0.5), 3: (0.5, 0.25)}
    edges = [
        (0, 1, (0, 0)),
        (1, 2, (0, 0)),
        (2, 3, (0, 0)),
        (3, 0, (0, 0)),
        (0, 2, (-1, 0)),
        (1, 3, (0, 1)),
    ]
    return from_flat_torus_drawing(pos, edges)


def _g4_2() -> SurfaceMap:
    pos = {0: (0.25, 0.25), 1: (0.75, 0.25), 2: (0.25, 0.75), 3: (0.75, 0.75)}
    edges = [
        (3, 1, (0, 0)),
        (0, 2, (0, 0)),
        (2, 3, (0, 0)),
        (0, 1, (-1, 0)),
        (1, 3, (0, -1)),
        (0, 2, (0, -1)),
    ]
    return from_flat_torus_drawing(pos, edges)


def _g5_2() -> SurfaceMap:
    pos = {0: (0.25, 0.5), 1: (0.5, 0.75), 2: (0.75, 0.5), 3: (0.5, 0.25), 4: (0.75, 0.25)}
    edges = [
        (0, 1, (0, 0)),
        (1, 2, (0, 0)),
        (2, 3, (0, 0)),
        (3, 0, (0, 0)),
        (1, 3, (0, 1)),
        (2, 4, (0, 0)),
        (2, 4, (0, 1)),
        (0, 4, (-1, 0)),
    ]
    return from_flat_torus_drawing(pos, edges)


def _g6_1() -> SurfaceMap:
    pos = {
        0: (0.0, 0.5),  # drawn twice, on both vertical borders
        1: (0.5, 0.5),
        2: (0.25, 0.25),
        3: (0.25, 0.75),
        4: (0.75, 0.25),
        5: (0.75, 0.75),
    }
    edges = [
        (0, 2, (0, 0)),
        (0, 3, (0, 0)),
        (0, 4, (-1, 0)),
        (0, 5, (-1, 0)),
        (1, 2, (0, 0)),
        (1, 3, (0, 0)),
        (1, 4, (0, 0)),
        (1, 5, (0, 0)),
        (2, 3, (0, -1)),
        (4, 5, (0, -1)),
    ]
    return from_flat_torus_drawing(pos, edges)


def _g6_2() -> SurfaceMap:
    pos = {
        0: (0.2, 0.2),
        1: (0.2, 0.4),
        2: (0.2, 0.6),
        3: (0.2, 0.8),
        4: (0.8, 0.8),
        5: (0.8, 0.2),
    }
    edges = [
        (0, 1, (0, 0)),
        (1, 2, (0, 0)),
        (2, 3, (0, 0)),
        (3, 0, (0, 1)),
        (5, 3, (1, -1)),
        (4, 3, (0, 0)),
        (4, 5, (0, 1)),
        (4, 1, (1, 0)),
        (5, 1, (0, 0)),
        (2, 0, (1, 0)),
    ]
    return from_flat_torus_drawing(pos, edges)


def _g6_3() -> SurfaceMap:
    pos = {
        0: (0.2, 0.2),
        1: (0.2, 0.4),
        2: (0.2, 0.6),
        3: (0.2, 0.8),
        4: (0.8, 0.8),
        5: (0.8, 0.4),
    }
    edges = [
        (0, 1, (0, 0)),
        (1, 2, (0, 0)),
        (2, 3, (0, 0)),
        (3, 0, (0, 1)),
        (4, 3, (0, 0)),
        (4, 5, (0, 0)),
        (1, 5, (0, 0)),
        (0, 1, (-1, 0)),
        (5, 2, (1, 0)),
        (4, 0, (1, 1)),
    ]
    return from_flat_torus_drawing(pos, edges)


def _g6_4() -> SurfaceMap:
    pos = {
        0: (0.2, 0.2),
        1: (0.2, 0.4),
        2: (0.2, 0.6),
        3: (0.2, 0.8),
        4: (0.8, 0.8),
        5: (0.8, 0.2),
    }
    edges = [
        (0, 1, (0, 0)),
        (1, 2, (0, 0)),
        (2, 3, (0, 0)),
        (3, 0, (0, 1)),
        (4, 2, (0, 0)),
        (4, 5, (0, 0)),
        (0, 5, (0, 0)),
        (4, 1, (1, 0)),
        (5, 3, (1, -1)),
        (4, 5, (0, 1)),
    ]
    return from_flat_torus_drawing(pos, edges)


def _g6_5() -> SurfaceMap:
    pos = {
        0: (0.25, 0.5),
        1: (0.5, 0.75),
        2: (0.75, 0.5),
        3: (0.5, 0.25),
        4: (0.25, 0.25),
        5: (0.75, 0.25),
    }
    edges = [
        (0, 1, (0, 0)),
        (1, 2, (0, 0)),
        (2, 3, (0, 0)),
        (3, 0, (0, 0)),
        (1, 3, (0, 1)),
        (4, 5, (-1, 0)),
        (4, 0, (0, 0)),
        (0, 4, (0, 1)),
        (2, 5, (0, 0)),
        (2, 5, (0, 1)),
    ]
    return from_flat_torus_drawing(pos, edges)


def _g7_1() -> SurfaceMap:
    pos = {
        0: (0.0, 0.5),
        1: (0.2, 0.7),
        2: (0.4, 0.5),
        3: (0.2, 0.3),
        4: (0.8, 0.3),
        5: (0.6, 0.5),
        6: (0.8, 0.7),
    }
    edges = [
        (0, 1, (0, 0)),
        (1, 2, (0, 0)),
        (2, 3, (0, 0)),
        (3, 0, (0, 0)),
        (1, 3, (0, 1)),
        (0, 4, (-1, 0)),
        (2, 5, (0, 0)),
        (2, 5, (0, 1)),
        (4, 5, (0, 0)),
        (6, 4, (0, 1)),
        (6, 5, (0, 0)),
        (6, 0, (1, 0)),
    ]
    return from_flat_torus_drawing(pos, edges)


def _g8_1() -> SurfaceMap:
    pos = {
        0: (0.1, 0.5),
        1: (0.25, 0.7),
        2: (0.4, 0.5),
        3: (0.25, 0.3),
        4: (0.75, 0.3),
        5: (0.9, 0.5),
        6: (0.75, 0.7),
        7: (0.6, 0.5),
    }
    edges = [
        (0, 1, (0, 0)),
        (1, 2, (0, 0)),
        (3, 0, (0, 0)),
        (1, 3, (0, 1)),
        (2, 3, (0, 0)),
        (4, 5, (0, 0)),
        (6, 4, (0, 1)),
        (6, 5, (0, 0)),
        (5, 0, (1, 0)),
        (7, 2, (0, 0)),
        (7, 4, (0, 0)),
        (6, 7, (0, 0)),
        (2, 7, (0, 1)),
        (5, 0, (1, 1)),
    ]
    return from_flat_torus_drawing(pos, edges)


@lru_cache(maxsize=1)
def named_min_degree3_maps() -> Dict[str, Optional[SurfaceMap]]:
    """Name -> map for the twelve minimum-degree-3 members.

    G5_1 maps to None: it is the remaining 5-vertex member once G5_2 has
    been matched.
    """
    return {
        "G1_1": SurfaceMap.vertex_map(1),
        "G4_1": _g4_1(),
        "G4_2": _g4_2(),
        "G5_1": None,
        "G5_2": _g5_2(),
        "G6_1": _g6_1(),
        "G6_2": _g6_2(),
        "G6_3": _g6_3(),
        "G6_4": _g6_4(),
        "G6_5": _g6_5(),
        "G7_1": _g7_1(),
        "G8_1": _g8_1(),
    }
