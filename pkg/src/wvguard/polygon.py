"""Simple polygons: validation, exact containment and visibility predicates.

The polygon is a CCW ring of exact rational points.  `sees` is the closed
visibility predicate (segment contained in the closed polygon) that every
higher layer treats as ground truth; it is deliberately straightforward so it
can serve as the independent oracle for the faster sweep code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, List, Optional, Sequence, Tuple

from .errors import DuplicateConsecutiveVertex, NotSimple, TooFewVertices
from .geometry import (
    COLLINEAR,
    LEFT,
    RIGHT,
    Point,
    Segment,
    cross_sign,
    orient,
    point_on_segment,
    segment_intersection,
)

IN = "in"
ON = "on"
OUT = "out"


@dataclass(frozen=True, order=True)
class BoundaryPos:
    """Position on the boundary: edge index plus parameter t in [0, 1).

    Vertex i is (edge=i, t=0).  Ordering follows the CCW boundary walk.
    """
    edge: int
    t: Fraction

    def __repr__(self):
        return "@%d+%s" % (self.edge, self.t)


class SimplePolygon:
    """Immutable CCW vertex ring."""

    __slots__ = ("vertices", "n", "__dict__")

    def __init__(self, vertices: Sequence[Point]):
        self.vertices: Tuple[Point, ...] = tuple(vertices)
        self.n = len(self.vertices)

    def __repr__(self):
        return "SimplePolygon(%d vertices)" % self.n

    def __eq__(self, other):
        return isinstance(other, SimplePolygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def vertex(self, i: int) -> Point:
        return self.vertices[i % self.n]

    def edge(self, i: int) -> Segment:
        return Segment(self.vertices[i % self.n], self.vertices[(i + 1) % self.n])

    def edges(self) -> Iterator[Tuple[int, Segment]]:
        for i in range(self.n):
            yield i, self.edge(i)

    @cached_property
    def signed_area2(self) -> Fraction:
        """Twice the signed area; positive for CCW."""
        total = Fraction(0)
        vs = self.vertices
        for i in range(self.n):
            a, b = vs[i], vs[(i + 1) % self.n]
            total += a.x * b.y - b.x * a.y
        return total

    def area(self) -> Fraction:
        return abs(self.signed_area2) / 2

    def is_reflex(self, i: int) -> bool:
        return orient(self.vertex(i - 1), self.vertex(i), self.vertex(i + 1)) == RIGHT

    @cached_property
    def reflex_indices(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.n) if self.is_reflex(i))

    # -- boundary positions -------------------------------------------------

    def point_at(self, pos: BoundaryPos) -> Point:
        if pos.t == 0:
            return self.vertices[pos.edge % self.n]
        return self.edge(pos.edge).point_at(pos.t)

    def pos_of_vertex(self, i: int) -> BoundaryPos:
        return BoundaryPos(i % self.n, Fraction(0))

    def locate_boundary_point(self, p: Point) -> Optional[BoundaryPos]:
        """Exact position of p on the boundary, or None if p is not on it."""
        for i, v in enumerate(self.vertices):
            if v == p:
                return BoundaryPos(i, Fraction(0))
        for i in range(self.n):
            e = self.edge(i)
            if point_on_segment(p, e):
                return BoundaryPos(i, e.param_of(p))
        return None

    def boundary_arc_vertices(self, start: BoundaryPos, end: BoundaryPos) -> List[Point]:
        """Points of the CCW boundary walk from start to end, inclusive.

        start == end yields the zero-length arc [point].
        """
        out = [self.point_at(start)]
        if start == end:
            return out
        i = (start.edge + 1) % self.n
        for _ in range(self.n + 1):
            vpos = BoundaryPos(i, Fraction(0))
            if not cyclic_between(start, vpos, end):
                break
            out.append(self.vertices[i])
            i = (i + 1) % self.n
        endp = self.point_at(end)
        if out[-1] != endp:
            out.append(endp)
        return out

    # -- containment ---------------------------------------------------------

    def contains(self, p: Point) -> str:
        """IN, ON or OUT, decided exactly."""
        for i in range(self.n):
            if point_on_segment(p, self.edge(i)):
                return ON
        cnt = 0
        vs = self.vertices
        py = p.y
        for i in range(self.n):
            a = vs[i]
            b = vs[(i + 1) % self.n]
            a_above = a.y > py
            b_above = b.y > py
            if a_above == b_above:
                continue
            o = orient(a, b, p)
            if b.y > a.y:  # upward edge: count if p strictly left
                if o == LEFT:
                    cnt += 1
            else:  # downward edge: count if p strictly right
                if o == RIGHT:
                    cnt += 1
        return IN if cnt % 2 == 1 else OUT

    def locally_inside(self, i: int, w: Point) -> bool:
        """Does direction w (nonzero) point into the closed polygon at vertex i?

        Boundary directions count as inside (closed-cone semantics).
        """
        v = self.vertex(i)
        e1 = self.vertex(i + 1) - v
        e2 = self.vertex(i - 1) - v
        c12 = cross_sign(e1, e2)
        c1 = cross_sign(e1, w)
        c2 = cross_sign(w, e2)
        if c12 > 0:  # convex corner
            return c1 >= 0 and c2 >= 0
        if c12 < 0:  # reflex corner
            return c1 >= 0 or c2 >= 0
        # collinear edges (angle exactly pi): interior is left of e1
        return c1 >= 0

    def _passes_vertex(self, i: int, d: Point) -> bool:
        """Can a segment travelling in direction d pass through vertex i while
        staying locally inside?"""
        return self.locally_inside(i, d) and self.locally_inside(i, Point(-d.x, -d.y))

    def sees(self, p: Point, q: Point) -> bool:
        """Closed visibility: is segment pq contained in the closed polygon?

        Exact: the segment is cut at every boundary intersection and each
        atomic piece is tested at its midpoint.
        """
        if self.contains(p) == OUT or self.contains(q) == OUT:
            return False
        if p == q:
            return True
        seg = Segment(p, q)
        params = {Fraction(0), Fraction(1)}
        # bounding box prefilter
        lox, hix = (p.x, q.x) if p.x <= q.x else (q.x, p.x)
        loy, hiy = (p.y, q.y) if p.y <= q.y else (q.y, p.y)
        for i in range(self.n):
            e = self.edge(i)
            elox, ehix = (e.a.x, e.b.x) if e.a.x <= e.b.x else (e.b.x, e.a.x)
            eloy, ehiy = (e.a.y, e.b.y) if e.a.y <= e.b.y else (e.b.y, e.a.y)
            if ehix < lox or hix < elox or ehiy < loy or hiy < eloy:
                continue
            hit = segment_intersection(seg, e)
            if hit is None:
                continue
            if isinstance(hit, Point):
                params.add(seg.param_of(hit))
            else:
                params.add(seg.param_of(hit.a))
                params.add(seg.param_of(hit.b))
        ts = sorted(params)
        for t0, t1 in zip(ts, ts[1:]):
            if t0 == t1:
                continue
            mid = seg.point_at((t0 + t1) / 2)
            if self.contains(mid) == OUT:
                return False
        return True

    # -- triangulation and sampling -------------------------------------------

    def triangulate(self) -> List[Tuple[int, int, int]]:
        """Ear-clipping triangulation; O(n^2), exact."""
        idx = list(range(self.n))
        vs = self.vertices
        out: List[Tuple[int, int, int]] = []
        guard = 0
        while len(idx) > 3:
            guard += 1
            if guard > 2 * self.n * self.n + 16:
                raise AssertionError("ear clipping failed to make progress")
            m = len(idx)
            clipped = False
            for k in range(m):
                ia, ib, ic = idx[(k - 1) % m], idx[k], idx[(k + 1) % m]
                a, b, c = vs[ia], vs[ib], vs[ic]
                if orient(a, b, c) != LEFT:
                    continue
                blocked = False
                for other in idx:
                    if other in (ia, ib, ic):
                        continue
                    z = vs[other]
                    if (orient(a, b, z) != RIGHT and orient(b, c, z) != RIGHT
                            and orient(c, a, z) != RIGHT):
                        blocked = True
                        break
                if blocked:
                    continue
                out.append((ia, ib, ic))
                idx.pop(k)
                clipped = True
                break
            if not clipped:
                raise AssertionError("no ear found; polygon not simple?")
        out.append((idx[0], idx[1], idx[2]))
        return out

    def sample_points(self, count: int) -> List[Point]:
        """Deterministic rational interior samples, roughly area-uniform.

        Samples are barycentric lattice points of an exact triangulation, so
        they are always strictly inside the closed polygon.
        """
        tris = self.triangulate()
        vs = self.vertices
        areas = []
        for (i, j, k) in tris:
            a, b, c = vs[i], vs[j], vs[k]
            areas.append(abs((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y)))
        total = sum(areas)
        if total == 0:
            return []
        out: List[Point] = []
        for (tri, ar) in zip(tris, areas):
            share = max(1, round(count * ar / total))
            a, b, c = vs[tri[0]], vs[tri[1]], vs[tri[2]]
            s = 1
            while s * (s - 1) // 2 < share:
                s += 1
            den = s + 2
            for i in range(1, s + 1):
                for j in range(1, s + 2 - i):
                    k = den - i - j
                    x = (a.x * i + b.x * j + c.x * k) / den
                    y = (a.y * i + b.y * j + c.y * k) / den
                    out.append(Point(x, y))
            if len(out) >= count * 2:
                break
        return out


def validate_simple(points: Sequence[Point]) -> SimplePolygon:
    """Validate a vertex ring and return it CCW-oriented.

    CW input is reversed; self-intersecting input raises NotSimple with a
    witnessing edge pair.
    """
    pts = list(points)
    if len(pts) < 3:
        raise TooFewVertices("polygon needs at least 3 vertices, got %d" % len(pts))
    n = len(pts)
    for i in range(n):
        if pts[i] == pts[(i + 1) % n]:
            raise DuplicateConsecutiveVertex("vertices %d and %d coincide" % (i, (i + 1) % n))

    poly = SimplePolygon(pts)
    if poly.signed_area2 == 0:
        raise NotSimple("polygon has zero area")
    if poly.signed_area2 < 0:
        pts.reverse()
        poly = SimplePolygon(pts)

    n = poly.n
    for i in range(n):
        ei = poly.edge(i)
        for j in range(i + 1, n):
            ej = poly.edge(j)
            adjacent = (j == i + 1) or (i == 0 and j == n - 1)
            hit = segment_intersection(ei, ej)
            if adjacent:
                shared = ei.b if j == i + 1 else ei.a
                if not isinstance(hit, Point) or hit != shared:
                    raise NotSimple(
                        "adjacent edges %d and %d overlap" % (i, j), edge_pair=(i, j))
            else:
                if hit is not None:
                    raise NotSimple(
                        "edges %d and %d intersect" % (i, j), edge_pair=(i, j))
    return poly


def cyclic_between(a: BoundaryPos, m: BoundaryPos, b: BoundaryPos) -> bool:
    """Is position m strictly between a and b on the CCW boundary walk?"""
    if a == b:
        return False
    if a < b:
        return a < m < b
    return m > a or m < b


def merge_collinear(points: Sequence[Point]) -> List[Point]:
    """Drop vertices whose neighbours are collinear with them."""
    pts = [p for i, p in enumerate(points) if i == 0 or p != points[i - 1]]
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    changed = True
    while changed and len(pts) > 3:
        changed = False
        for i in range(len(pts)):
            a = pts[(i - 1) % len(pts)]
            b = pts[i]
            c = pts[(i + 1) % len(pts)]
            if orient(a, b, c) == COLLINEAR:
                pts.pop(i)
                changed = True
                break
    return pts
