"""Exact planar overlay of segments: faces of the induced subdivision.

Input segments are split at every pairwise intersection; collinear overlaps
collapse to shared sub-segments carrying all source keys.  Faces are traced
with the half-edge rule (twin, then clockwise rotation), so bounded faces
come out counterclockwise.  The overlay here is always connected because
every window has its endpoints on the polygon boundary, which keeps face
tracing free of nesting bookkeeping.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .errors import InvariantViolation
from .geometry import Point, Segment, ccw_compare_from, pt, segment_intersection
from .polygon import IN, SimplePolygon, merge_collinear

F0 = Fraction(0)
F1 = Fraction(1)
_REF = pt(1, 0)


@dataclass
class Face:
    id: int
    ring: List[Point]
    area2: Fraction
    darts: List[int]

    @property
    def bounded(self) -> bool:
        return self.area2 > 0


@dataclass
class Overlay:
    points: List[Point]
    darts: List[Tuple[int, int]]              # dart id -> (tail, head) vertex ids
    twin: List[int]
    next_dart: List[int]
    face_of: List[int]                        # dart id -> face id
    faces: List[Face]
    dart_keys: List[FrozenSet]                # source keys of the dart's segment

    def faces_flanking(self, dart: int) -> Tuple[int, int]:
        return self.face_of[dart], self.face_of[self.twin[dart]]


def build_overlay(segments: Sequence[Tuple[Point, Point, object]]) -> Overlay:
    """Arrange the given keyed segments into faces."""
    cuts: List[Set[Fraction]] = [set((F0, F1)) for _ in segments]
    segs = [Segment(a, b) for a, b, _ in segments]
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            hit = segment_intersection(segs[i], segs[j])
            if hit is None:
                continue
            if isinstance(hit, Point):
                cuts[i].add(segs[i].param_of(hit))
                cuts[j].add(segs[j].param_of(hit))
            else:
                for q in (hit.a, hit.b):
                    cuts[i].add(segs[i].param_of(q))
                    cuts[j].add(segs[j].param_of(q))

    point_id: Dict[Point, int] = {}
    points: List[Point] = []

    def pid(q: Point) -> int:
        if q not in point_id:
            point_id[q] = len(points)
            points.append(q)
        return point_id[q]

    sub_keys: Dict[Tuple[int, int], Set] = {}
    for i, seg in enumerate(segs):
        key = segments[i][2]
        ts = sorted(t for t in cuts[i] if F0 <= t <= F1)
        for t0, t1 in zip(ts, ts[1:]):
            if t0 == t1:
                continue
            a = pid(seg.point_at(t0))
            b = pid(seg.point_at(t1))
            if a == b:
                continue
            k = (a, b) if a < b else (b, a)
            sub_keys.setdefault(k, set()).add(key)

    darts: List[Tuple[int, int]] = []
    twin: List[int] = []
    dart_keys: List[FrozenSet] = []
    for (a, b), keys in sorted(sub_keys.items()):
        fk = frozenset(keys)
        darts.append((a, b))
        darts.append((b, a))
        twin.extend((len(darts) - 1, len(darts) - 2))
        dart_keys.extend((fk, fk))

    # rotation system: outgoing darts per vertex in CCW angular order
    outgoing: Dict[int, List[int]] = {}
    for d, (a, b) in enumerate(darts):
        outgoing.setdefault(a, []).append(d)

    def ang_cmp(d1: int, d2: int) -> int:
        a1 = points[darts[d1][1]] - points[darts[d1][0]]
        a2 = points[darts[d2][1]] - points[darts[d2][0]]
        return ccw_compare_from(_REF, a1, a2)

    for v, ds in outgoing.items():
        ds.sort(key=functools.cmp_to_key(ang_cmp))

    index_at: Dict[int, int] = {}
    for v, ds in outgoing.items():
        for k, d in enumerate(ds):
            index_at[d] = k

    next_dart: List[int] = [-1] * len(darts)
    for d, (a, b) in enumerate(darts):
        t = twin[d]
        ds = outgoing[b]
        k = index_at[t]
        next_dart[d] = ds[(k - 1) % len(ds)]

    face_of = [-1] * len(darts)
    faces: List[Face] = []
    for d0 in range(len(darts)):
        if face_of[d0] != -1:
            continue
        fid = len(faces)
        ring_darts = []
        d = d0
        while face_of[d] == -1:
            face_of[d] = fid
            ring_darts.append(d)
            d = next_dart[d]
        if d != d0:
            raise InvariantViolation("face trace did not close")
        ring = [points[darts[x][0]] for x in ring_darts]
        area2 = Fraction(0)
        for i in range(len(ring)):
            a, b = ring[i], ring[(i + 1) % len(ring)]
            area2 += a.x * b.y - b.x * a.y
        faces.append(Face(fid, ring, area2, ring_darts))
    return Overlay(points, darts, twin, next_dart, face_of, faces, dart_keys)


def representative_point(ring: Sequence[Point]) -> Point:
    """A rational point strictly inside a positively oriented simple ring."""
    poly = SimplePolygon(list(ring))
    n = poly.n
    b_i = min(range(n), key=lambda i: (poly.vertices[i].x, poly.vertices[i].y))
    a = poly.vertex(b_i - 1)
    b = poly.vertex(b_i)
    c = poly.vertex(b_i + 1)
    from .geometry import LEFT, RIGHT, orient
    inside: List[Point] = []
    for q in poly.vertices:
        if q in (a, b, c):
            continue
        if (orient(a, b, q) != RIGHT and orient(b, c, q) != RIGHT
                and orient(c, a, q) != RIGHT):
            inside.append(q)
    if inside:
        # farthest from line ac: maximizes |cross| which is rational-comparable
        def d2(q):
            return abs((c.x - a.x) * (q.y - a.y) - (q.x - a.x) * (c.y - a.y))
        z = max(inside, key=lambda q: (d2(q), q.x, q.y))
        cand = Point((b.x + z.x) / 2, (b.y + z.y) / 2)
    else:
        cand = Point((a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3)
    step = cand
    for _ in range(64):
        if poly.contains(step) == IN:
            return step
        step = Point((b.x + step.x) / 2, (b.y + step.y) / 2)
    raise InvariantViolation("no interior representative point found")


def union_components(overlay: Overlay, member_faces: Set[int]) -> List[List[int]]:
    """Connected components of the given faces, adjacency = shared dart."""
    parent = {f: f for f in member_faces}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d in range(len(overlay.darts)):
        f1 = overlay.face_of[d]
        f2 = overlay.face_of[overlay.twin[d]]
        if f1 in member_faces and f2 in member_faces and f1 != f2:
            parent[find(f1)] = find(f2)
    comps: Dict[int, List[int]] = {}
    for f in member_faces:
        comps.setdefault(find(f), []).append(f)
    return list(comps.values())


def component_outer_ring(overlay: Overlay, comp: Set[int]) -> List[Point]:
    """Outer boundary ring of a simply connected union of faces."""
    is_boundary = [False] * len(overlay.darts)
    start = -1
    for d in range(len(overlay.darts)):
        if overlay.face_of[d] in comp and overlay.face_of[overlay.twin[d]] not in comp:
            is_boundary[d] = True
            start = d
    if start == -1:
        raise InvariantViolation("component has no boundary darts")
    ring: List[Point] = []
    d = start
    guard = 0
    while True:
        guard += 1
        if guard > len(overlay.darts) + 2:
            raise InvariantViolation("component ring trace did not terminate")
        ring.append(overlay.points[overlay.darts[d][0]])
        e = overlay.next_dart[d]
        inner_guard = 0
        while not is_boundary[e]:
            inner_guard += 1
            if inner_guard > len(overlay.darts):
                raise InvariantViolation("component ring fan walk stuck")
            e = overlay.next_dart[overlay.twin[e]]
        d = e
        if d == start:
            break
    return merge_collinear(ring)
