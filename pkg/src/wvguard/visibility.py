"""Visibility polygons with exact rational arithmetic.

Two independent routes compute Vis(p):

* `visibility_polygon` - rotational sweep around the viewpoint, batching
  events that share an exact direction, so collinear vertices, radial edges
  and viewpoints on the boundary are handled without perturbation;

* `visibility_polygon_naive` - per-edge critical-interval subdivision with
  midpoint `sees` tests (quadratic; the differential-testing oracle).

Both produce a tagged ring: each ring edge is a piece of the polygon
boundary or a constructed edge (window).  Windows are collinear with the
viewpoint and carry the pocket side and upper/lower classification.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import InvariantViolation, PointOutsidePolygon
from .geometry import (
    COLLINEAR,
    Point,
    Segment,
    ccw_compare_from,
    cross_sign,
    dot,
    dot_sign,
    line_intersection,
    orient,
    point_on_segment,
    same_direction,
    segment_intersection,
)
from .polygon import OUT, BoundaryPos, SimplePolygon

UPPER = "upper"
LOWER = "lower"

F0 = Fraction(0)
F1 = Fraction(1)


@dataclass(frozen=True)
class ConstructedEdge:
    """A window: an edge of Vis(p) whose interior lies inside the polygon.

    x is the lower endpoint (smaller y; for horizontal windows the endpoint
    closer to the viewpoint).  pocket_side is the side of the directed
    segment x -> y_pt on which the pocket lies: +1 left, -1 right.
    """
    x: Point
    y_pt: Point
    x_pos: BoundaryPos
    y_pos: BoundaryPos
    viewpoint: Point
    pocket_side: int
    kind: str
    x_on_uv: bool
    guard: object = None
    ring_index: int = -1

    def segment(self) -> Segment:
        return Segment(self.x, self.y_pt)

    def supporting_side(self, q: Point) -> int:
        """Side of q relative to the directed line x -> y_pt."""
        return orient(self.x, self.y_pt, q)


def classify_kind(d: Point, pocket_side: int) -> str:
    """Upper iff the pocket side is the side below the supporting line.

    For the directed line along d the below side has cross sign -sign(d.x).
    Vertical windows have no below side; they are classified upper by
    convention (safe: extra upper edges only ever add triangle tasks).
    """
    if d.x == 0:
        return UPPER
    below = -1 if d.x > 0 else 1
    return UPPER if pocket_side == below else LOWER


@dataclass(frozen=True)
class Pocket:
    window: ConstructedEdge
    region: SimplePolygon
    arc_start: BoundaryPos
    arc_end: BoundaryPos


class VisibilityPolygon:
    """Star-shaped visibility region as a tagged CCW ring."""

    def __init__(self, polygon: SimplePolygon, viewpoint: Point,
                 points: List[Point], positions: List[BoundaryPos],
                 tags: List[Tuple], uv: Optional[Segment] = None,
                 guard: object = None):
        self.polygon = polygon
        self.viewpoint = viewpoint
        self.points = points
        self.positions = positions
        self.tags = tags  # tags[i] describes ring edge points[i] -> points[i+1]
        self.guard = guard
        self.windows: List[ConstructedEdge] = []
        n = len(points)
        for i, tag in enumerate(tags):
            if tag[0] != "C":
                continue
            self.windows.append(_make_window(
                viewpoint, points[i], positions[i],
                points[(i + 1) % n], positions[(i + 1) % n], uv, guard, i))

    def __len__(self):
        return len(self.points)

    def as_polygon(self) -> SimplePolygon:
        return SimplePolygon(self.points)

    def ring_segments(self) -> List[Segment]:
        n = len(self.points)
        return [Segment(self.points[i], self.points[(i + 1) % n]) for i in range(n)]

    def contains_point(self, q: Point) -> bool:
        """Closed containment in the visibility region."""
        return self.as_polygon().contains(q) != OUT

    def visible_intervals_by_edge(self) -> Dict[int, List[Tuple[Fraction, Fraction]]]:
        """Visible parameter ranges per polygon edge, from the boundary tags."""
        n = len(self.points)
        out: Dict[int, List[Tuple[Fraction, Fraction]]] = {}
        for i, tag in enumerate(self.tags):
            if tag[0] != "B":
                continue
            src = tag[1]
            a = self.positions[i]
            b = self.positions[(i + 1) % n]
            t0 = a.t if a.edge == src else F0
            t1 = b.t if b.edge == src else F1
            if t0 > t1:
                raise InvariantViolation("boundary piece runs backwards")
            out.setdefault(src, []).append((t0, t1))
        for src, ivs in out.items():
            ivs.sort()
            merged = [list(ivs[0])]
            for lo, hi in ivs[1:]:
                if lo <= merged[-1][1]:
                    merged[-1][1] = max(merged[-1][1], hi)
                else:
                    merged.append([lo, hi])
            out[src] = [(lo, hi) for lo, hi in merged]
        return out

    def clip_segment(self, seg: Segment) -> List[Tuple[Fraction, Fraction]]:
        """Parameter ranges of seg inside the region (maximal components)."""
        params = {F0, F1}
        for re in self.ring_segments():
            hit = segment_intersection(seg, re)
            if hit is None:
                continue
            if isinstance(hit, Point):
                params.add(seg.param_of(hit))
            else:
                params.add(seg.param_of(hit.a))
                params.add(seg.param_of(hit.b))
        ts = sorted(t for t in params if F0 <= t <= F1)
        poly = self.as_polygon()
        comps: List[Tuple[Fraction, Fraction]] = []
        for t0, t1 in zip(ts, ts[1:]):
            if t0 == t1:
                continue
            mid = seg.point_at((t0 + t1) / 2)
            if poly.contains(mid) != OUT:
                if comps and comps[-1][1] == t0:
                    comps[-1] = (comps[-1][0], t1)
                else:
                    comps.append((t0, t1))
        for t in ts:  # isolated touch points
            if any(lo <= t <= hi for lo, hi in comps):
                continue
            if poly.contains(seg.point_at(t)) != OUT:
                comps.append((t, t))
        comps.sort()
        return comps

    def region_signature(self) -> Tuple[Point, ...]:
        """Canonical point ring ignoring tags; for cross-route comparison."""
        pts = self.points
        n = len(pts)
        keep = [pts[i] for i in range(n)
                if orient(pts[(i - 1) % n], pts[i], pts[(i + 1) % n]) != COLLINEAR]
        if not keep:
            return tuple(pts)
        k = min(range(len(keep)), key=lambda i: (keep[i].x, keep[i].y))
        return tuple(keep[k:] + keep[:k])


def _make_window(viewpoint, m, mp, n, np_, uv, guard, ring_index) -> ConstructedEdge:
    # canonical orientation: x = lower endpoint; horizontal tie broken by
    # distance from the viewpoint along the (radial) window
    if m.y < n.y:
        lower_is_m = True
    elif n.y < m.y:
        lower_is_m = False
    else:
        lower_is_m = dot(m - viewpoint, m - viewpoint) <= dot(n - viewpoint, n - viewpoint)
    if lower_is_m:
        x, y_pt, x_pos, y_pos = m, n, mp, np_
        pocket_side = -1  # ring runs x -> y_pt; pocket right of ring direction
    else:
        x, y_pt, x_pos, y_pos = n, m, np_, mp
        pocket_side = 1
    kind = classify_kind(y_pt - x, pocket_side)
    x_on_uv = bool(uv is not None and point_on_segment(x, uv))
    return ConstructedEdge(x=x, y_pt=y_pt, x_pos=x_pos, y_pos=y_pos,
                           viewpoint=viewpoint, pocket_side=pocket_side,
                           kind=kind, x_on_uv=x_on_uv, guard=guard,
                           ring_index=ring_index)


def pocket_of(vis: VisibilityPolygon, window: ConstructedEdge) -> Pocket:
    """The pocket adjacent to a window: hidden boundary arc plus the window."""
    i = window.ring_index
    n = len(vis.points)
    mp = vis.positions[i]
    np_ = vis.positions[(i + 1) % n]
    arc = vis.polygon.boundary_arc_vertices(mp, np_)
    region = SimplePolygon(arc)
    if region.signed_area2 <= 0:
        raise InvariantViolation("pocket region is not positively oriented")
    return Pocket(window=window, region=region, arc_start=mp, arc_end=np_)


# ---------------------------------------------------------------------------
# rotational sweep


@dataclass
class _WEdge:
    """Working edge a -> b along the CCW boundary, within source edge src."""
    a: Point
    b: Point
    src: int
    ta: Fraction
    tb: Fraction
    id: int = -1


def _make_pos(poly: SimplePolygon, src: int, t: Fraction) -> BoundaryPos:
    if t == 1:
        return BoundaryPos((src + 1) % poly.n, F0)
    return BoundaryPos(src, t)


def visibility_polygon(poly: SimplePolygon, p: Point, *, uv: Optional[Segment] = None,
                       guard: object = None) -> VisibilityPolygon:
    """Exact visibility polygon of p (interior or boundary) via angular sweep."""
    loc = poly.contains(p)
    if loc == OUT:
        raise PointOutsidePolygon("viewpoint %r outside polygon" % (p,))

    p_vertex = None
    for i, v in enumerate(poly.vertices):
        if v == p:
            p_vertex = i
            break
    p_edge = None
    if p_vertex is None and loc == "on":
        for i in range(poly.n):
            if point_on_segment(p, poly.edge(i)):
                p_edge = i
                break

    edges: List[_WEdge] = []
    for i in range(poly.n):
        e = poly.edge(i)
        if p_edge == i:
            t = e.param_of(p)
            edges.append(_WEdge(e.a, p, i, F0, t))
            edges.append(_WEdge(p, e.b, i, t, F1))
        else:
            edges.append(_WEdge(e.a, e.b, i, F0, F1))
    for k, e in enumerate(edges):
        e.id = k

    on_boundary = loc == "on"
    anchor_next = anchor_prev = None
    p_pos = None
    if on_boundary:
        anchor_next = next(e for e in edges if e.a == p)
        anchor_prev = next(e for e in edges if e.b == p)
        if p_vertex is not None:
            p_pos = BoundaryPos(p_vertex, F0)
        else:
            p_pos = BoundaryPos(p_edge, poly.edge(p_edge).param_of(p))
        d_start = anchor_next.b - p
        d_end = anchor_prev.a - p
    else:
        d_start = poly.vertices[0] - p
        d_end = None

    def rayparam(q: Point, d: Point) -> Fraction:
        return dot(q - p, d)

    # group event vertices by exact direction
    dirs: List[Point] = []
    groups: List[List[int]] = []
    for i, v in enumerate(poly.vertices):
        if v == p:
            continue
        d = v - p
        if on_boundary:
            inside = (same_direction(d, d_start) or same_direction(d, d_end)
                      or ccw_compare_from(d_start, d, d_end) < 0)
            if not inside:
                continue
        for gi, gd in enumerate(dirs):
            if same_direction(gd, d):
                groups[gi].append(i)
                break
        else:
            dirs.append(d)
            groups.append([i])

    order = sorted(range(len(dirs)),
                   key=functools.cmp_to_key(
                       lambda a, b: ccw_compare_from(d_start, dirs[a], dirs[b])))
    if on_boundary:
        if not same_direction(dirs[order[0]], d_start) or \
           not same_direction(dirs[order[-1]], d_end):
            raise InvariantViolation("anchor vertices missing from sweep events")

    by_point: Dict[Point, List[_WEdge]] = {}
    for e in edges:
        by_point.setdefault(e.a, []).append(e)
        by_point.setdefault(e.b, []).append(e)

    first_dir = dirs[order[0]]
    active: Dict[int, _WEdge] = {}
    for e in edges:
        if e.a == p or e.b == p:
            continue
        ca = cross_sign(first_dir, e.a - p)
        cb = cross_sign(first_dir, e.b - p)
        if ca == 0 and cb == 0:
            continue  # collinear with the first ray; radial handling
        if ca == 0 or cb == 0:
            w, other = (e.a, e.b) if ca == 0 else (e.b, e.a)
            if dot_sign(first_dir, w - p) > 0 and cross_sign(first_dir, other - p) < 0:
                active[e.id] = e  # its angular span ends at the first direction
            continue
        if ca * cb < 0:
            z = line_intersection(p, p + first_dir, e.a, e.b)
            if z is not None and dot_sign(first_dir, z - p) > 0:
                active[e.id] = e

    def min_hit(dirvec: Point):
        best = None
        tip = p + dirvec
        for e in active.values():
            z = line_intersection(p, tip, e.a, e.b)
            if z is None:
                raise InvariantViolation("active edge parallel to sweep ray")
            t = rayparam(z, dirvec)
            if best is None or t < best[0]:
                best = (t, z, e)
            elif t == best[0]:
                # both edges pass through the same hit point (a shared vertex);
                # keep the one that shields the other from the viewpoint
                eb = best[2]
                o_new = e.a if e.b == z else e.b
                o_old = eb.a if eb.b == z else eb.b
                s_other = orient(z, o_new, o_old)
                s_view = orient(z, o_new, p)
                if s_other != COLLINEAR and s_view != COLLINEAR and s_other != s_view:
                    best = (t, z, e)
        return best

    ring_pts: List[Point] = []
    ring_pos: List[BoundaryPos] = []
    ring_tags: List[Tuple] = []

    def add_point(q: Point, pos: BoundaryPos):
        ring_pts.append(q)
        ring_pos.append(pos)

    def add_piece(q: Point, pos: BoundaryPos, tag: Tuple):
        if ring_pts[-1] == q:
            return
        ring_tags.append(tag)
        ring_pts.append(q)
        ring_pos.append(pos)

    if on_boundary:
        add_point(p, p_pos)

    prev_exit_edge: Optional[_WEdge] = None
    nbatches = len(order)

    for bi, gi in enumerate(order):
        dirvec = dirs[gi]
        batch_verts = sorted(groups[gi],
                             key=lambda i: rayparam(poly.vertices[i], dirvec))
        first = on_boundary and bi == 0
        last = on_boundary and bi == nbatches - 1

        radial: List[_WEdge] = []
        enders: List[_WEdge] = []
        starters: List[_WEdge] = []
        seen_ids = set()
        for vi in batch_verts:
            w = poly.vertices[vi]
            for e in by_point.get(w, ()):
                if e.id in seen_ids:
                    continue
                seen_ids.add(e.id)
                o = e.b if e.a == w else e.a
                if o == p:
                    continue  # anchor edges handled below
                c = cross_sign(dirvec, o - p)
                if c == 0:
                    if dot_sign(dirvec, o - p) <= 0:
                        raise InvariantViolation("edge passes through the viewpoint")
                    radial.append(e)
                elif c > 0:
                    starters.append(e)
                else:
                    enders.append(e)
        if first and anchor_next is not None:
            radial.append(anchor_next)
        if last and anchor_prev is not None:
            radial.append(anchor_prev)

        if first:
            t_in, pt_in, pos_in = F0, p, p_pos
        else:
            got = min_hit(dirvec)
            if got is None:
                raise InvariantViolation("no active edge at sweep direction")
            t_in, pt_in, e_in = got
            s = Segment(e_in.a, e_in.b).param_of(pt_in)
            pos_in = _make_pos(poly, e_in.src, e_in.ta + s * (e_in.tb - e_in.ta))

        for e in enders:
            active.pop(e.id, None)
        for e in starters:
            active[e.id] = e

        exit_edge: Optional[_WEdge] = None
        if last:
            t_out, pt_out, pos_out = F0, p, p_pos
        else:
            got = min_hit(dirvec)
            if got is None:
                raise InvariantViolation("no active edge after sweep update")
            t_out, pt_out, exit_edge = got
            s = Segment(exit_edge.a, exit_edge.b).param_of(pt_out)
            pos_out = _make_pos(poly, exit_edge.src,
                                exit_edge.ta + s * (exit_edge.tb - exit_edge.ta))

        # connect from the previous batch's exit along the common blocking edge
        if not first:
            if not ring_pts:
                add_point(pt_in, pos_in)
            else:
                add_piece(pt_in, pos_in, ("B", prev_exit_edge.src))

        if t_in != t_out or radial:
            stations: Dict[Fraction, Tuple[Point, BoundaryPos]] = {}
            lo, hi = (t_in, t_out) if t_in <= t_out else (t_out, t_in)
            stations[t_in] = (pt_in, pos_in)
            stations[t_out] = (pt_out, pos_out)
            cover: List[Tuple[Fraction, Fraction, _WEdge]] = []
            for e in radial:
                pa = rayparam(e.a, dirvec)
                pb = rayparam(e.b, dirvec)
                clo, chi = (pa, pb) if pa <= pb else (pb, pa)
                cover.append((clo, chi, e))
                for q, tq, te in ((e.a, pa, e.ta), (e.b, pb, e.tb)):
                    if lo <= tq <= hi and tq not in stations:
                        stations[tq] = (q, _make_pos(poly, e.src, te))
            for vi in batch_verts:
                w = poly.vertices[vi]
                tw = rayparam(w, dirvec)
                if lo <= tw <= hi and tw not in stations:
                    stations[tw] = (w, BoundaryPos(vi, F0))
            keys = sorted(stations)
            if t_in > t_out:
                keys.reverse()
            for k1, k2 in zip(keys, keys[1:]):
                q2, pos2 = stations[k2]
                klo, khi = (k1, k2) if k1 <= k2 else (k2, k1)
                src = None
                for clo, chi, e in cover:
                    if clo <= klo and khi <= chi:
                        src = e.src
                        break
                add_piece(q2, pos2, ("B", src) if src is not None else ("C",))

        prev_exit_edge = exit_edge

    if on_boundary:
        if len(ring_pts) >= 2 and ring_pts[0] == ring_pts[-1]:
            ring_pts.pop()
            ring_pos.pop()
        else:
            raise InvariantViolation("boundary sweep did not close at the viewpoint")
    else:
        add_piece(ring_pts[0], ring_pos[0], ("B", prev_exit_edge.src))
        ring_pts.pop()
        ring_pos.pop()

    pts, pos, tags = _canonical_ring(ring_pts, ring_pos, ring_tags)
    return VisibilityPolygon(poly, p, pts, pos, tags, uv=uv, guard=guard)


def _canonical_ring(pts: List[Point], pos: List[BoundaryPos], tags: List[Tuple]):
    """Drop collinear subdivision points inside boundary pieces of one source
    edge; rotate so rings start at the lexicographically smallest point."""
    n = len(pts)
    if n < 3:
        raise InvariantViolation("degenerate visibility ring")
    if len(tags) != n:
        raise InvariantViolation("ring tag count mismatch (%d points, %d tags)"
                                 % (n, len(tags)))
    keep = []
    for i in range(n):
        prev_tag = tags[(i - 1) % n]
        cur_tag = tags[i]
        if (prev_tag == cur_tag and prev_tag[0] == "B"
                and orient(pts[(i - 1) % n], pts[i], pts[(i + 1) % n]) == COLLINEAR):
            continue
        keep.append(i)
    pts2 = [pts[i] for i in keep]
    pos2 = [pos[i] for i in keep]
    tags2 = [tags[i] for i in keep]
    k = min(range(len(pts2)), key=lambda i: (pts2[i].x, pts2[i].y))
    pts2 = pts2[k:] + pts2[:k]
    pos2 = pos2[k:] + pos2[:k]
    tags2 = tags2[k:] + tags2[:k]
    return pts2, pos2, tags2


# ---------------------------------------------------------------------------
# naive oracle: per-edge critical intervals


def visibility_polygon_naive(poly: SimplePolygon, p: Point, *,
                             uv: Optional[Segment] = None,
                             guard: object = None) -> VisibilityPolygon:
    """Quadratic reference implementation; independent of the sweep."""
    loc = poly.contains(p)
    if loc == OUT:
        raise PointOutsidePolygon("viewpoint %r outside polygon" % (p,))

    visible: List[Tuple[int, Fraction, Fraction]] = []
    for i in range(poly.n):
        e = poly.edge(i)
        params = {F0, F1}
        for w in poly.vertices:
            if w == p:
                continue
            z = line_intersection(p, w, e.a, e.b)
            if z is not None and point_on_segment(z, e):
                params.add(e.param_of(z))
        if point_on_segment(p, e):
            params.add(e.param_of(p))
        ts = sorted(t for t in params if F0 <= t <= F1)
        run_start = None
        run_end = None
        for t0, t1 in zip(ts, ts[1:]):
            if t0 == t1:
                continue
            mid = e.point_at((t0 + t1) / 2)
            if poly.sees(p, mid):
                if run_start is None:
                    run_start = t0
                run_end = t1
            else:
                if run_start is not None:
                    visible.append((i, run_start, run_end))
                    run_start = None
        if run_start is not None:
            visible.append((i, run_start, run_end))

    if not visible:
        raise InvariantViolation("no visible boundary from viewpoint")

    visible.sort(key=lambda r: (r[0], r[1]))
    ring_pts: List[Point] = []
    ring_pos: List[BoundaryPos] = []
    ring_tags: List[Tuple] = []
    for (i, t0, t1) in visible:
        e = poly.edge(i)
        a, b = e.point_at(t0), e.point_at(t1)
        pos_a, pos_b = _make_pos(poly, i, t0), _make_pos(poly, i, t1)
        if not ring_pts:
            ring_pts.append(a)
            ring_pos.append(pos_a)
        elif ring_pts[-1] != a:
            ring_tags.append(("C",))
            ring_pts.append(a)
            ring_pos.append(pos_a)
        if ring_pts[-1] != b:
            ring_tags.append(("B", i))
            ring_pts.append(b)
            ring_pos.append(pos_b)
    if ring_pts[0] == ring_pts[-1]:
        ring_pts.pop()
        ring_pos.pop()
    else:
        ring_tags.append(("C",))

    pts, pos, tags = _canonical_ring(ring_pts, ring_pos, ring_tags)
    return VisibilityPolygon(poly, p, pts, pos, tags, uv=uv, guard=guard)
