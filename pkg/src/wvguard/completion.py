"""Interior completion: from boundary guards to full coverage.

Given a set G of boundary guards, every unseen region left inside the
polygon is a convex hole fenced off by windows of the guards' visibility
polygons, and every hole hides inside a triangle spanned by an upper window
anchored on uv and a partner window anchored on uv on the pocket side.  One
additional vertex guard per such triangle therefore completes coverage, and
there are at most |G| triangles (each guard contributes at most one upper
window with an endpoint on uv), so at most |G| guards are added.

For a polygon weakly visible from a chord, the polygon is sliced along the
chord and the same procedure runs per side over the clipped windows, adding
at most 2|G| guards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .boundary import boundary_cover_check
from .errors import (
    InputNotBoundaryGuarding,
    InvariantViolation,
    NoGuardFound,
)
from .geometry import (
    Point,
    Segment,
    convex_hull,
    line_intersection,
    orient,
    point_on_segment,
    segment_intersection,
    sq_dist,
)
from .guards import COMPLETION, GuardPos, GuardSet, guard_at_point, guard_set
from .model import CHORD, WVPolygon, split_at_chord
from .polygon import OUT, SimplePolygon
from .visibility import (
    LOWER,
    UPPER,
    ConstructedEdge,
    VisibilityPolygon,
    classify_kind,
)
from .oracle import guard_visibilities

F0 = Fraction(0)
F1 = Fraction(1)


@dataclass(frozen=True)
class TriangleTask:
    upper_edge: ConstructedEdge
    partner_edge: ConstructedEdge
    apex: Point
    triangle: Tuple[Point, Point, Point]  # (x, apex, x')
    guard_vertex: Point
    side: str = "edge"  # "edge" | "upper" | "lower" for chord runs


@dataclass
class CompletionResult:
    added_guards: GuardSet
    tasks: List[TriangleTask]
    windows: List[ConstructedEdge]
    windows_on_uv: List[ConstructedEdge]
    base_guards: GuardSet

    @property
    def combined(self) -> GuardSet:
        return self.base_guards.union(self.added_guards)


def collect_windows(wv: WVPolygon, gs: GuardSet,
                    vis: Optional[List[VisibilityPolygon]] = None,
                    ) -> Tuple[List[ConstructedEdge], List[ConstructedEdge],
                               List[VisibilityPolygon]]:
    """All windows of the guards' visibility polygons, plus the subset with
    their lower endpoint on uv.  Raises InputNotBoundaryGuarding when the
    guards do not cover the whole boundary."""
    poly = wv.polygon
    if vis is None:
        vis = guard_visibilities(wv, gs)
    gaps = boundary_cover_check(poly, gs, vis)
    if gaps:
        e, lo, hi = gaps[0]
        witness = poly.edge(e).point_at((lo + hi) / 2)
        raise InputNotBoundaryGuarding(
            "boundary point %r on edge %d is unseen" % (witness, e), witness=witness)
    windows: List[ConstructedEdge] = []
    for vp in vis:
        windows.extend(vp.windows)
    on_uv = [w for w in windows if w.x_on_uv]
    if len(on_uv) > 2 * len(gs):
        raise InvariantViolation(
            "more than 2|G| windows anchored on uv (%d > 2*%d)" % (len(on_uv), len(gs)))
    return windows, on_uv, vis


def topmost_qualifying_intersection(e: ConstructedEdge,
                                    windows: Sequence[ConstructedEdge],
                                    ) -> Optional[Tuple[Point, ConstructedEdge]]:
    """Highest intersection of e with a window whose uv-anchored endpoint x'
    lies strictly on the pocket side of e's supporting line.

    Ties on height resolve toward the partner whose x' is closest to e.x
    (the widest triangle); collinear overlaps contribute their topmost point.
    """
    best: Optional[Tuple[Point, ConstructedEdge]] = None
    eseg = e.segment()
    for e2 in windows:
        if e2 is e:
            continue
        if not e2.x_on_uv:
            continue
        if e.supporting_side(e2.x) != e.pocket_side:
            continue  # strict: x' exactly on the line gives a degenerate triangle
        hit = segment_intersection(eseg, e2.segment())
        if hit is None:
            continue
        if isinstance(hit, Segment):
            apex = hit.a if hit.a.y >= hit.b.y else hit.b
        else:
            apex = hit
        if best is None:
            best = (apex, e2)
            continue
        cur_apex, cur_e2 = best
        if apex.y > cur_apex.y:
            best = (apex, e2)
        elif apex.y == cur_apex.y:
            if abs(e2.x.x - e.x.x) < abs(cur_e2.x.x - e.x.x):
                best = (apex, e2)
    return best


def triangle_guard_vertex(poly: SimplePolygon, u: Point, v: Point,
                          x: Point, apex: Point, x_prime: Point) -> int:
    """Vertex guarding the triangle (x, apex, x'): among the vertices below
    the apex whose ray from the apex crosses uv between u and x (x left of
    x'; mirrored otherwise), the one whose crossing lands closest to x.

    The choice is verified exactly: the convex hull of the triangle and the
    vertex must be contained in the polygon.
    """
    leftward = x.x <= x_prime.x
    best_i = None
    best_cx = None
    best_depth = None
    for i, w in enumerate(poly.vertices):
        if w.y >= apex.y:
            continue
        # crossing of the ray apex -> w with the axis; w at or above the axis
        # keeps the crossing beyond w
        denom = apex.y - w.y
        cx = apex.x + apex.y * (w.x - apex.x) / denom
        if leftward and not (u.x <= cx <= x.x):
            continue
        if not leftward and not (x.x <= cx <= v.x):
            continue
        if best_i is None:
            better = True
        elif cx == best_cx:
            better = w.y > best_depth  # same crossing: prefer nearer the apex
        elif leftward:
            better = cx > best_cx
        else:
            better = cx < best_cx
        if better:
            best_i, best_cx, best_depth = i, cx, w.y
    if best_i is None:
        raise NoGuardFound("no vertex candidate below the apex projects into [u, x]")
    w = poly.vertices[best_i]
    if not triangle_visible_from(poly, (x, apex, x_prime), w):
        raise NoGuardFound(
            "vertex %r does not see the triangle (%r, %r, %r)" % (w, x, apex, x_prime))
    return best_i


def triangle_visible_from(poly: SimplePolygon, tri: Tuple[Point, Point, Point],
                          w: Point) -> bool:
    """Exact test: w sees all of the triangle iff the hull of tri+{w} lies in
    the polygon (the union of sight segments from w to a convex set is that
    hull, and a region with boundary inside a simple polygon is inside)."""
    hull = convex_hull(list(tri) + [w])
    if len(hull) < 2:
        return poly.contains(w) != OUT
    for i in range(len(hull)):
        a = hull[i]
        b = hull[(i + 1) % len(hull)]
        if a != b and not poly.sees(a, b):
            return False
    return True


def region_in_polygon(poly: SimplePolygon, ring: Sequence[Point]) -> bool:
    """Closed region bounded by ring lies inside the (simply connected)
    polygon iff every boundary segment does."""
    m = len(ring)
    for i in range(m):
        a, b = ring[i], ring[(i + 1) % m]
        if a != b and not poly.sees(a, b):
            return False
    return True


def complete_guards(wv: WVPolygon, gs: GuardSet,
                    vis: Optional[List[VisibilityPolygon]] = None) -> CompletionResult:
    """Run the triangle completion on an edge-mode polygon."""
    wv.require_canonical()
    windows, on_uv, vis = collect_windows(wv, gs, vis)
    tasks = _run_triangles(wv.polygon, wv.u, wv.v, windows, side="edge")
    added = _tasks_to_guards(wv.polygon, tasks)
    if len(added) > len(gs):
        raise InvariantViolation("|G'| exceeds |G| (%d > %d)" % (len(added), len(gs)))
    return CompletionResult(added_guards=added, tasks=tasks, windows=windows,
                            windows_on_uv=on_uv, base_guards=gs)


def _run_triangles(poly: SimplePolygon, u: Point, v: Point,
                   windows: Sequence[ConstructedEdge], side: str) -> List[TriangleTask]:
    initiators = [w for w in windows if w.kind == UPPER and w.x_on_uv]
    initiators.sort(key=lambda w: (w.x.x, w.y_pt.x, w.y_pt.y))
    tasks: List[TriangleTask] = []
    for e in initiators:
        got = topmost_qualifying_intersection(e, windows)
        if got is None:
            continue
        apex, partner = got
        tri = (e.x, apex, partner.x)
        if not region_in_polygon(poly, tri):
            raise InvariantViolation(
                "completion triangle (%r, %r, %r) leaves the polygon" % tri)
        gi = triangle_guard_vertex(poly, u, v, e.x, apex, partner.x)
        tasks.append(TriangleTask(upper_edge=e, partner_edge=partner, apex=apex,
                                  triangle=tri, guard_vertex=poly.vertices[gi],
                                  side=side))
    return tasks


def _tasks_to_guards(poly: SimplePolygon, tasks: Sequence[TriangleTask]) -> GuardSet:
    out = []
    for t in tasks:
        out.append(guard_at_point(poly, t.guard_vertex))
    return guard_set(out, COMPLETION)


def region_visible_from(poly: SimplePolygon, region_pts: Sequence[Point],
                        w: Point) -> bool:
    """w sees every point of the convex hull of region_pts (exact)."""
    hull = convex_hull(list(region_pts) + [w])
    if len(hull) == 1:
        return poly.contains(w) != OUT
    if len(hull) == 2:
        return poly.sees(hull[0], hull[1])
    for i in range(len(hull)):
        a, b = hull[i], hull[(i + 1) % len(hull)]
        if not poly.sees(a, b):
            return False
    return True


def _closest_boundary_point_to(poly: SimplePolygon, s_pts: Sequence[Point]):
    """Boundary point minimizing the distance to the convex region (exact
    squared-distance comparison over all edge/feature candidate pairs)."""
    def clamp01(t):
        return F0 if t < 0 else (F1 if t > 1 else t)

    def project(p: Point, a: Point, b: Point) -> Point:
        d = b - a
        denom = d.x * d.x + d.y * d.y
        t = clamp01(((p.x - a.x) * d.x + (p.y - a.y) * d.y) / denom)
        return Point(a.x + d.x * t, a.y + d.y * t)

    s_edges = []
    m = len(s_pts)
    if m == 1:
        s_edges = []
    else:
        s_edges = [(s_pts[i], s_pts[(i + 1) % m]) for i in range(m if m > 2 else 1)]

    best = None  # (d2, y_point, edge_index)
    for ei in range(poly.n):
        e = poly.edge(ei)
        cands: List[Tuple[Point, Point]] = []
        for s in s_pts:
            cands.append((project(s, e.a, e.b), s))
        for (sa, sb) in s_edges:
            for p in (e.a, e.b):
                cands.append((p, project(p, sa, sb)))
        for (y, s) in cands:
            dx, dy = y.x - s.x, y.y - s.y
            d2 = dx * dx + dy * dy
            key = (d2, y.x, y.y)
            if best is None or key < best[0]:
                best = (key, y, ei)
    return best[1], best[2]


def convex_region_guard(poly: SimplePolygon, s_pts: Sequence[Point]) -> int:
    """A polygon vertex seeing all of the convex region S.

    Constructive: if P and S share a vertex take it; otherwise take a
    boundary point y closest to S and slide it along its edge until the hull
    of S and y first meets a polygon vertex - either the slide reaches the
    edge's endpoint or a vertex lands on a tangent from y to S.  The result
    is verified exactly; existence is guaranteed (any convex subset of a
    simple polygon is seen from some vertex).
    """
    hull_s = convex_hull(s_pts)
    if not hull_s:
        raise InvariantViolation("empty region")
    vset = {v: i for i, v in enumerate(poly.vertices)}
    for s in hull_s:
        if s in vset:
            return vset[s]
    y0, ei = _closest_boundary_point_to(poly, hull_s)
    if y0 in vset:
        i = vset[y0]
        if region_visible_from(poly, hull_s, y0):
            return i
    for direction in (1, -1):
        w_i = _slide_to_vertex(poly, hull_s, y0, ei, direction)
        if w_i is not None and region_visible_from(poly, hull_s, poly.vertices[w_i]):
            return w_i
    for i, w in enumerate(poly.vertices):  # lemma guarantees some vertex works
        if region_visible_from(poly, hull_s, w):
            return i
    raise NoGuardFound("no vertex sees the convex region")


def _slide_to_vertex(poly: SimplePolygon, hull_s: List[Point], y0: Point,
                     ei: int, direction: int) -> Optional[int]:
    """Slide y along edge ei from y0 toward one endpoint; first vertex that
    the hull of S u {y} meets (on a tangent through y, or the endpoint)."""
    e = poly.edge(ei)
    t0 = e.param_of(y0) if point_on_segment(y0, e) else None
    if t0 is None:
        return None
    target_t = F1 if direction > 0 else F0
    end_vertex = (ei + 1) % poly.n if direction > 0 else ei
    best = (target_t, end_vertex)
    for wi, w in enumerate(poly.vertices):
        if w == y0:
            continue
        for s in hull_s:
            if w == s:
                continue
            y = line_intersection(w, s, e.a, e.b)
            if y is None or y == s or not point_on_segment(y, e):
                continue
            t = e.param_of(y)
            if direction > 0 and not (t0 <= t <= best[0]):
                continue
            if direction < 0 and not (best[0] <= t <= t0):
                continue
            # tangency: S weakly on one side of the line through y and s
            sides = {orient(y, s, q) for q in hull_s if q != s}
            sides.discard(0)
            if len(sides) > 1:
                continue
            if not point_on_segment(w, Segment(y, s)):
                continue
            best = (t, wi)
    return best[1]


# ---------------------------------------------------------------------------
# chord mode


def split_window_at_axis(w: ConstructedEdge, uv: Segment
                         ) -> Tuple[Optional[ConstructedEdge], Optional[ConstructedEdge]]:
    """Clip a window of the full chord polygon to the two sides.

    Returns (upper part, lower part in the reflected frame); a side with no
    extent gets None.  Pocket side carries over: the supporting line and the
    adjacent pocket are split along with the window, and for the lower side
    the reflection is accounted for exactly.
    """
    x, y_pt = w.x, w.y_pt
    if x.y == 0 and y_pt.y == 0:
        # window lying on the chord line belongs to both sides
        return w, _reflect_window(w, uv)
    if x.y >= 0 and y_pt.y >= 0:
        return w, None
    if x.y <= 0 and y_pt.y <= 0:
        return None, _reflect_window(w, uv)
    # strict crossing: x below, y_pt above (x is the lower endpoint)
    t = x.y / (x.y - y_pt.y)
    m = Point(x.x + (y_pt.x - x.x) * t, F0)
    upper = _derived_window(m, y_pt, w, uv)
    lower = _reflect_window(_derived_window(x, m, w, uv), uv)
    return upper, lower


def _derived_window(x: Point, y_pt: Point, src: ConstructedEdge,
                    uv: Segment) -> ConstructedEdge:
    """Sub-window of src with the same supporting line and pocket side."""
    # src canonical direction is x -> y_pt; a sub-segment keeps it
    kind = classify_kind(y_pt - x, src.pocket_side)
    return ConstructedEdge(x=x, y_pt=y_pt, x_pos=src.x_pos, y_pos=src.y_pos,
                           viewpoint=src.viewpoint, pocket_side=src.pocket_side,
                           kind=kind, x_on_uv=point_on_segment(x, uv),
                           guard=src.guard, ring_index=src.ring_index)


def _reflect_window(w: ConstructedEdge, uv: Segment) -> ConstructedEdge:
    """Reflect a lower-side window into the canonical (upper) frame.

    Reflection alone flips the pocket side sign; when re-canonicalizing also
    reverses the direction (the usual case: the reflected upper endpoint
    becomes the lower one) the sign flips back, so the side is preserved.
    """
    rx = Point(w.x.x, -w.x.y)
    ry = Point(w.y_pt.x, -w.y_pt.y)
    rvp = Point(w.viewpoint.x, -w.viewpoint.y)
    if ry.y < rx.y:
        new_x, new_y = ry, rx
        reversed_dir = True  # canonical direction is the reverse of rx -> ry
    elif rx.y < ry.y:
        new_x, new_y = rx, ry
        reversed_dir = False
    else:
        # horizontal: lower endpoint is the one closer to the viewpoint
        if sq_dist(rx, rvp) <= sq_dist(ry, rvp):
            new_x, new_y = rx, ry
            reversed_dir = False
        else:
            new_x, new_y = ry, rx
            reversed_dir = True
    side = -w.pocket_side if not reversed_dir else w.pocket_side
    kind = classify_kind(new_y - new_x, side)
    return ConstructedEdge(x=new_x, y_pt=new_y, x_pos=w.x_pos, y_pos=w.y_pos,
                           viewpoint=rvp,
                           pocket_side=side, kind=kind,
                           x_on_uv=point_on_segment(new_x, uv),
                           guard=w.guard, ring_index=w.ring_index)


def complete_guards_chord(wv: WVPolygon, gs: GuardSet,
                          vis: Optional[List[VisibilityPolygon]] = None
                          ) -> CompletionResult:
    """Chord variant: split along uv, clip windows per side, run the triangle
    completion on each half, and merge the added guards."""
    if wv.mode != CHORD:
        raise InvariantViolation("complete_guards_chord requires CHORD mode")
    p_up, p_down = split_at_chord(wv)
    windows, on_uv, vis = collect_windows(wv, gs, vis)

    upper_windows: List[ConstructedEdge] = []
    lower_windows: List[ConstructedEdge] = []
    for w in windows:
        up, down = split_window_at_axis(w, wv.uv)
        if up is not None and up.x != up.y_pt:
            upper_windows.append(up)
        if down is not None and down.x != down.y_pt:
            lower_windows.append(down)

    tasks_up = _run_triangles(p_up.polygon, p_up.u, p_up.v, upper_windows, side="upper")
    tasks_down = _run_triangles(p_down.polygon, p_down.u, p_down.v, lower_windows,
                                side="lower")
    if len(tasks_up) > len(gs) or len(tasks_down) > len(gs):
        raise InvariantViolation("per-side task count exceeds |G|")

    # guards live on the original chord polygon: map side vertices back
    added: List[GuardPos] = []
    for t in tasks_up:
        added.append(guard_at_point(wv.polygon, t.guard_vertex))
    for t in tasks_down:
        q = Point(t.guard_vertex.x, -t.guard_vertex.y)
        added.append(guard_at_point(wv.polygon, q))
    added_set = guard_set(added, COMPLETION)
    if len(added_set) > 2 * len(gs):
        raise InvariantViolation("|G' u G''| exceeds 2|G|")
    return CompletionResult(added_guards=added_set, tasks=tasks_up + tasks_down,
                            windows=windows, windows_on_uv=on_uv, base_guards=gs)
