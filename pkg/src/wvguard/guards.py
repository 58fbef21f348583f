"""Guard positions and guard sets.

A guard sits at a polygon vertex or at a boundary point (edge + rational
parameter).  Positions are canonicalized so a boundary point at a vertex
compares equal to the vertex guard.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from .errors import InvalidGuard
from .geometry import Point, point_on_segment
from .polygon import BoundaryPos, SimplePolygon

VERTEX = "vertex"
BOUNDARY = "boundary"

GREEDY = "computed_greedy"
EXACT = "computed_exact"
USER = "user_supplied"
FORCED = "forced_preprocess"
COMPLETION = "completion"
MERGED = "merged"


@dataclass(frozen=True, order=True)
class GuardPos:
    edge: int
    t: Fraction

    @property
    def kind(self) -> str:
        return VERTEX if self.t == 0 else BOUNDARY

    @property
    def vertex_index(self) -> Optional[int]:
        return self.edge if self.t == 0 else None

    def point(self, poly: SimplePolygon) -> Point:
        return poly.point_at(BoundaryPos(self.edge, self.t))

    def __repr__(self):
        if self.t == 0:
            return "g[v%d]" % self.edge
        return "g[e%d+%s]" % (self.edge, self.t)


def vertex_guard(i: int) -> GuardPos:
    return GuardPos(i, Fraction(0))


def boundary_guard(poly: SimplePolygon, edge: int, t: Fraction) -> GuardPos:
    if not (0 <= t < 1):
        if t == 1:
            return GuardPos((edge + 1) % poly.n, Fraction(0))
        raise InvalidGuard("parameter %s outside [0,1]" % t)
    return GuardPos(edge % poly.n, t)


def guard_at_point(poly: SimplePolygon, p: Point) -> GuardPos:
    pos = poly.locate_boundary_point(p)
    if pos is None:
        raise InvalidGuard("guard position %r is not on the boundary" % (p,))
    return GuardPos(pos.edge, pos.t)


@dataclass(frozen=True)
class GuardSet:
    guards: Tuple[GuardPos, ...]
    provenance: str

    def __post_init__(self):
        object.__setattr__(self, "guards", tuple(sorted(set(self.guards))))

    def __len__(self):
        return len(self.guards)

    def __iter__(self):
        return iter(self.guards)

    def __contains__(self, g):
        return g in self.guards

    def points(self, poly: SimplePolygon) -> List[Point]:
        return [g.point(poly) for g in self.guards]

    def union(self, other: "GuardSet", provenance: str = MERGED) -> "GuardSet":
        return GuardSet(self.guards + other.guards, provenance)

    def without(self, g: GuardPos) -> "GuardSet":
        return GuardSet(tuple(x for x in self.guards if x != g), self.provenance)


def guard_set(guards: Iterable[GuardPos], provenance: str) -> GuardSet:
    return GuardSet(tuple(guards), provenance)


def validate_guards_for(wv, gs: GuardSet, allow_uv_interior: bool = False) -> None:
    """Check all guards sit on the boundary; in EDGE mode reject guards in the
    open interior of uv unless explicitly allowed (they are excluded by the
    boundary-guard domain)."""
    poly = wv.polygon
    for g in gs:
        if not (0 <= g.edge < poly.n):
            raise InvalidGuard("guard edge index %d out of range" % g.edge)
        p = g.point(poly)
        if wv.mode == "edge" and not allow_uv_interior:
            if p != wv.u and p != wv.v and point_on_segment(p, wv.uv):
                raise InvalidGuard(
                    "guard %r lies in the open interior of uv" % (g,))
