"""Weakly visible polygons in the canonical frame.

A WVPolygon pins the designated edge or chord uv onto the x-axis with u at
the origin and v to its right, via an exact rational rotation-scaling (see
`SimilarityMap`).  Visibility structure is invariant under that map, so all
algorithms operate in this frame and results are mapped back for reporting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import InvariantViolation, NotAChord, NotAnEdge, NotCanonical
from .geometry import (
    Point,
    Segment,
    SimilarityMap,
    line_intersection,
    point_on_segment,
    segment_intersection,
)
from .polygon import IN, SimplePolygon, validate_simple
from .visibility import visibility_polygon

EDGE = "edge"
CHORD = "chord"

F0 = Fraction(0)
F1 = Fraction(1)


@dataclass(frozen=True)
class WVPolygon:
    """A polygon weakly visible from the segment uv, in the canonical frame.

    vertices[0] == u == (0,0) and vertices[1] == v in EDGE mode (uv is then
    edge 0).  In CHORD mode u and v are boundary points, not necessarily
    vertices, and the polygon straddles the axis.
    """
    polygon: SimplePolygon
    mode: str
    u: Point
    v: Point
    frame: SimilarityMap
    reflected: bool = False
    orig_index: Tuple[Optional[int], ...] = ()

    @property
    def uv(self) -> Segment:
        return Segment(self.u, self.v)

    def to_original(self, q: Point) -> Point:
        if self.reflected:
            q = Point(q.x, -q.y)
        return self.frame.invert(q)

    def from_original(self, q: Point) -> Point:
        q = self.frame.apply(q)
        if self.reflected:
            q = Point(q.x, -q.y)
        return q

    def is_canonical(self) -> bool:
        """Boundary weakly above the axis; only u and v touch it (EDGE mode)."""
        if self.mode != EDGE:
            return False
        for i, w in enumerate(self.polygon.vertices):
            if w.y < 0:
                return False
            if w.y == 0 and i not in (0, 1):
                return False
        return True

    def require_canonical(self):
        if not self.is_canonical():
            raise NotCanonical(
                "polygon dips below the axis; run preprocess_concave_endpoints first")


def normalize(poly: SimplePolygon, u_index: int, v_index: int) -> WVPolygon:
    """Move the designated edge onto the x-axis, u at the origin, v right.

    The endpoint that starts the CCW-directed edge becomes u, so that the
    polygon interior lies above the axis.  Indices may be given in either
    order.
    """
    n = poly.n
    u_index %= n
    v_index %= n
    if (u_index + 1) % n == v_index:
        pass
    elif (v_index + 1) % n == u_index:
        u_index, v_index = v_index, u_index
    else:
        raise NotAnEdge("vertices %d and %d are not adjacent" % (u_index, v_index))
    rolled = list(poly.vertices[u_index:]) + list(poly.vertices[:u_index])
    frame = SimilarityMap.for_edge(rolled[0], rolled[1])
    mapped = [frame.apply(q) for q in rolled]
    out = SimplePolygon(mapped)
    if out.signed_area2 <= 0:
        raise InvariantViolation("normalization flipped orientation")
    return WVPolygon(polygon=out, mode=EDGE, u=mapped[0], v=mapped[1],
                     frame=frame,
                     orig_index=tuple((u_index + i) % n for i in range(n)))


def normalize_chord(poly: SimplePolygon, end1: Tuple[int, Fraction],
                    end2: Tuple[int, Fraction]) -> WVPolygon:
    """Canonical frame for a polygon weakly visible from a chord.

    Chord endpoints are boundary points given as (edge index, parameter).
    """
    c = []
    for (e, t) in (end1, end2):
        if not (F0 <= t <= F1):
            raise NotAChord("edge parameter %s out of range" % t)
        c.append(poly.edge(e % poly.n).point_at(t))
    c1, c2 = c
    if c1 == c2:
        raise NotAChord("chord endpoints coincide")
    chord = Segment(c1, c2)
    for i in range(poly.n):
        hit = segment_intersection(chord, poly.edge(i))
        if hit is None:
            continue
        if isinstance(hit, Segment):
            raise NotAChord("chord overlaps boundary edge %d" % i)
        if hit not in (c1, c2):
            raise NotAChord("chord crosses the boundary at %r" % (hit,))
    mid = chord.point_at(Fraction(1, 2))
    if poly.contains(mid) != IN:
        raise NotAChord("chord interior is not interior to the polygon")
    frame = SimilarityMap.for_edge(c1, c2)
    mapped = [frame.apply(q) for q in poly.vertices]
    out = SimplePolygon(mapped)
    if out.signed_area2 <= 0:
        raise InvariantViolation("normalization flipped orientation")
    return WVPolygon(polygon=out, mode=CHORD, u=frame.apply(c1), v=frame.apply(c2),
                     frame=frame, orig_index=tuple(range(poly.n)))


# ---------------------------------------------------------------------------
# weak visibility test


def _complement(intervals: List[Tuple[Fraction, Fraction]]) -> List[Tuple[Fraction, Fraction]]:
    out = []
    cur = F0
    for lo, hi in sorted(intervals):
        if lo > cur:
            out.append((cur, lo))
        cur = max(cur, hi)
    if cur < F1:
        out.append((cur, F1))
    return out


def is_weakly_visible(wv: WVPolygon) -> Tuple[bool, Optional[Point]]:
    """Exact weak-visibility test; on failure returns a witness point of the
    boundary invisible from all of uv.

    Boundary coverage by Vis(u) and Vis(v) settles most of the boundary;
    leftover intervals are subdivided at critical lines through a reflex
    vertex and a second vertex (a superset of all visibility transitions)
    and each atomic midpoint m is tested via Vis(m) against uv.
    """
    poly = wv.polygon
    uv = wv.uv
    vis_u = visibility_polygon(poly, wv.u)
    vis_v = visibility_polygon(poly, wv.v)
    cov_u = vis_u.visible_intervals_by_edge()
    cov_v = vis_v.visible_intervals_by_edge()

    uncovered: List[Tuple[int, Fraction, Fraction]] = []
    for e in range(poly.n):
        merged = sorted(cov_u.get(e, []) + cov_v.get(e, []))
        for lo, hi in _complement(merged):
            uncovered.append((e, lo, hi))
    if not uncovered:
        return True, None

    reflex = poly.reflex_indices
    anchors = [poly.vertices[i] for i in reflex]
    others = list(poly.vertices)
    if wv.mode == CHORD:
        others += [wv.u, wv.v]

    for (e, lo, hi) in uncovered:
        seg = poly.edge(e)
        params = {lo, hi}
        for a in anchors:
            for b in others:
                if a == b:
                    continue
                z = line_intersection(a, b, seg.a, seg.b)
                if z is not None and point_on_segment(z, seg):
                    t = seg.param_of(z)
                    if lo < t < hi:
                        params.add(t)
        ts = sorted(params)
        for t0, t1 in zip(ts, ts[1:]):
            if t0 == t1:
                continue
            m = seg.point_at((t0 + t1) / 2)
            vis_m = visibility_polygon(poly, m)
            if not vis_m.clip_segment(uv):
                return False, m
    return True, None


# ---------------------------------------------------------------------------
# concave-endpoint preprocessing


@dataclass
class PreprocessReport:
    forced_guards: List[Point] = field(default_factory=list)
    removed_portions: List[Tuple[int, ...]] = field(default_factory=list)  # original indices
    replacement_edges: List[Segment] = field(default_factory=list)
    removed_regions: List[SimplePolygon] = field(default_factory=list)  # canonical frame

    @property
    def changed(self) -> bool:
        return bool(self.forced_guards)


def _axis_crossing(a: Point, b: Point) -> Point:
    """Crossing of segment ab with the x-axis; a.y and b.y straddle zero."""
    t = a.y / (a.y - b.y)
    return Point(a.x + (b.x - a.x) * t, F0)


def preprocess_concave_endpoints(wv: WVPolygon) -> Tuple[WVPolygon, PreprocessReport]:
    """Chop off the boundary dips below the axis at u and v.

    When the interior angle at u is concave the boundary walks below the
    axis; everything on that walk up to the first return to the axis is
    visible from u only, so a guard is forced at u and the dipped portion is
    replaced by a single edge from u to the first vertex after the return
    point.  Symmetrically at v.  Iterates until both endpoint angles are
    convex (a dip can return to the axis and dip again).
    """
    if wv.mode != EDGE:
        raise InvariantViolation("preprocessing applies to EDGE mode only")
    report = PreprocessReport()
    cur = wv
    guard_u_done = guard_v_done = False
    for _ in range(2 * wv.polygon.n + 4):
        verts = list(cur.polygon.vertices)
        n = len(verts)
        orig = list(cur.orig_index)
        if n >= 3 and verts[-1].y < 0:
            # dip at u: walk clockwise (backwards through the ring) to the
            # first vertex back at or above the axis
            j = n - 1
            while verts[j].y < 0:
                j -= 1
                if j < 2:
                    raise InvariantViolation("dip at u consumed the polygon")
            m = j
            while verts[m].y == 0 and m >= 2:
                m -= 1
            if m < 2:
                raise InvariantViolation("dip at u consumed the polygon")
            removed_chain = [verts[k] for k in range(m, n)] + [verts[0]]
            region = SimplePolygon(removed_chain)
            if not guard_u_done:
                report.forced_guards.append(cur.u)
                guard_u_done = True
            report.removed_portions.append(
                tuple(orig[k] for k in range(m + 1, n) if orig[k] is not None))
            report.replacement_edges.append(Segment(verts[0], verts[m]))
            if region.signed_area2 > 0:
                report.removed_regions.append(region)
            cur = WVPolygon(polygon=SimplePolygon(verts[:m + 1]), mode=EDGE,
                            u=cur.u, v=cur.v, frame=cur.frame,
                            reflected=cur.reflected,
                            orig_index=tuple(orig[:m + 1]))
            continue
        if n >= 3 and verts[2 % n].y < 0:
            # dip at v: walk counterclockwise from v
            j = 2
            while verts[j].y < 0:
                j += 1
                if j > n - 2:
                    raise InvariantViolation("dip at v consumed the polygon")
            m = j
            while verts[m].y == 0 and m <= n - 2:
                m += 1
            if m > n - 1:
                raise InvariantViolation("dip at v consumed the polygon")
            removed_chain = [verts[1]] + [verts[k] for k in range(2, m + 1)]
            region = SimplePolygon(removed_chain)
            if not guard_v_done:
                report.forced_guards.append(cur.v)
                guard_v_done = True
            report.removed_portions.append(
                tuple(orig[k] for k in range(2, m) if orig[k] is not None))
            report.replacement_edges.append(Segment(verts[1], verts[m]))
            if region.signed_area2 > 0:
                report.removed_regions.append(region)
            cur = WVPolygon(polygon=SimplePolygon(verts[:2] + verts[m:]), mode=EDGE,
                            u=cur.u, v=cur.v, frame=cur.frame,
                            reflected=cur.reflected,
                            orig_index=tuple(orig[:2] + orig[m:]))
            continue
        break
    else:
        raise InvariantViolation("endpoint preprocessing did not terminate")
    if report.changed:
        validate_simple(list(cur.polygon.vertices))
        cur.require_canonical()
    return cur, report


# ---------------------------------------------------------------------------
# chord splitting


def split_at_chord(wv: WVPolygon) -> Tuple[WVPolygon, WVPolygon]:
    """Slice a chord-mode polygon along uv into its upper and lower halves.

    Both halves are EDGE-mode WVPolygons sharing the segment uv; the lower
    half is reflected through the axis into the canonical frame (reflection
    preserves all visibility structure).
    """
    if wv.mode != CHORD:
        raise InvariantViolation("split_at_chord requires CHORD mode")
    poly = wv.polygon
    ring: List[Point] = []
    ring_orig: List[Optional[int]] = []
    for i in range(poly.n):
        a = poly.vertices[i]
        ring.append(a)
        ring_orig.append(wv.orig_index[i] if i < len(wv.orig_index) else None)
        e = poly.edge(i)
        inserts = []
        for c in (wv.u, wv.v):
            if c != e.a and c != e.b and point_on_segment(c, e):
                inserts.append((e.param_of(c), c))
        for _, c in sorted(inserts):
            ring.append(c)
            ring_orig.append(None)
    iu = ring.index(wv.u)
    iv = ring.index(wv.v)
    m = len(ring)

    def arc(i0, i1):
        out = []
        k = i0
        while True:
            out.append(k)
            if k == i1:
                return out
            k = (k + 1) % m

    arc_vu = arc(iv, iu)  # v .. u: the upper arc for a CCW ring
    arc_uv = arc(iu, iv)  # u .. v: the lower arc
    side_vu = _arc_side(ring, arc_vu)
    side_uv = _arc_side(ring, arc_uv)
    if side_vu == 0 or side_uv == 0 or side_vu == side_uv:
        raise NotAChord("boundary touches the chord line away from its endpoints")
    if side_vu < 0:
        raise InvariantViolation("CCW ring traverses the upper arc from v to u")
    upper_arc, lower_arc = arc_vu, arc_uv

    # upper half: ring [u, v, interior of the v..u arc]
    upper_ring = [wv.u, wv.v] + [ring[k] for k in upper_arc[1:-1]]
    upper_orig = [None, None] + [ring_orig[k] for k in upper_arc[1:-1]]
    p1 = SimplePolygon(upper_ring)
    if p1.signed_area2 <= 0:
        raise InvariantViolation("upper half not positively oriented")
    wv1 = WVPolygon(polygon=p1, mode=EDGE, u=wv.u, v=wv.v, frame=wv.frame,
                    reflected=False, orig_index=tuple(upper_orig))

    lower_pts = [ring[k] for k in lower_arc]  # u .. v below the axis
    lower_orig_pts = [ring_orig[k] for k in lower_arc]
    refl = [Point(q.x, -q.y) for q in lower_pts]
    lower_ring = [wv.u, wv.v] + list(reversed(refl[1:-1]))
    lower_orig = [None, None] + list(reversed(lower_orig_pts[1:-1]))
    p2 = SimplePolygon(lower_ring)
    if p2.signed_area2 <= 0:
        raise InvariantViolation("lower half not positively oriented")
    wv2 = WVPolygon(polygon=p2, mode=EDGE, u=wv.u, v=wv.v, frame=wv.frame,
                    reflected=True, orig_index=tuple(lower_orig))
    wv1.require_canonical()
    wv2.require_canonical()
    return wv1, wv2


def _arc_side(ring: List[Point], idxs: List[int]) -> int:
    """+1 if the arc's interior vertices lie above the axis, -1 below,
    0 if mixed or touching."""
    pos = neg = zero = 0
    for k in idxs[1:-1]:
        y = ring[k].y
        if y > 0:
            pos += 1
        elif y < 0:
            neg += 1
        else:
            zero += 1
    if zero or (pos and neg):
        return 0
    if pos:
        return 1
    if neg:
        return -1
    return 0  # empty arc: degenerate


def edge_wv_from_points(points: Sequence[Point]) -> WVPolygon:
    """Convenience: validate and normalize a ring whose first two vertices
    are the weak-visibility edge (u, v)."""
    poly = validate_simple(list(points))
    # validate_simple may have reversed the ring; find the original u
    u = points[0]
    v = points[1]
    iu = poly.vertices.index(u)
    iv = poly.vertices.index(v)
    return normalize(poly, iu, iv)
