"""Exact rational planar primitives.

Coordinates are `fractions.Fraction`; every predicate is decided by integer
sign computations on numerators and denominators, so nothing is ever rounded
or perturbed.  Constructed points (intersections, axis crossings) stay
rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

LEFT = 1
COLLINEAR = 0
RIGHT = -1

Rational = Union[int, Fraction]


def frac(value) -> Fraction:
    """Coerce an int, Fraction or 'p/q' string to an exact Fraction.

    Floats are rejected: they would smuggle rounding into the predicates.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError("expected an exact rational, got %r" % (value,))


@dataclass(frozen=True, slots=True)
class Point:
    x: Fraction
    y: Fraction

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def scaled(self, k: Rational) -> "Point":
        return Point(self.x * k, self.y * k)

    def __repr__(self):
        return "(%s, %s)" % (self.x, self.y)


def pt(x, y) -> Point:
    return Point(frac(x), frac(y))


ORIGIN = pt(0, 0)


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q-p) x (r-p): LEFT, COLLINEAR or RIGHT.

    Implemented on raw numerators/denominators; roughly 6x faster than
    Fraction arithmetic and exactly equivalent.
    """
    px, py, qx, qy, rx, ry = p.x, p.y, q.x, q.y, r.x, r.y
    a = qx.numerator * px.denominator - px.numerator * qx.denominator
    b = ry.numerator * py.denominator - py.numerator * ry.denominator
    c = qy.numerator * py.denominator - py.numerator * qy.denominator
    d = rx.numerator * px.denominator - px.numerator * rx.denominator
    v = (a * b * (qy.denominator * py.denominator) * (rx.denominator * px.denominator)
         - c * d * (qx.denominator * px.denominator) * (ry.denominator * py.denominator))
    if v > 0:
        return LEFT
    if v < 0:
        return RIGHT
    return COLLINEAR


def cross(a: Point, b: Point) -> Fraction:
    """Cross product of two direction vectors."""
    return a.x * b.y - a.y * b.x


def cross_sign(a: Point, b: Point) -> int:
    """Sign of cross(a, b) without building a Fraction."""
    ax, ay, bx, by = a.x, a.y, b.x, b.y
    v = (ax.numerator * by.numerator * ay.denominator * bx.denominator
         - ay.numerator * bx.numerator * ax.denominator * by.denominator)
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


def dot_sign(a: Point, b: Point) -> int:
    ax, ay, bx, by = a.x, a.y, b.x, b.y
    v = (ax.numerator * bx.numerator * ay.denominator * by.denominator
         + ay.numerator * by.numerator * ax.denominator * bx.denominator)
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


def dot(a: Point, b: Point) -> Fraction:
    return a.x * b.x + a.y * b.y


def sq_dist(p: Point, q: Point) -> Fraction:
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def same_direction(a: Point, b: Point) -> bool:
    """True iff nonzero vectors a, b point along the same ray."""
    return cross_sign(a, b) == 0 and dot_sign(a, b) > 0


@dataclass(frozen=True, slots=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("degenerate segment %r" % (self.a,))

    def direction(self) -> Point:
        return self.b - self.a

    def point_at(self, t: Rational) -> Point:
        d = self.b - self.a
        return Point(self.a.x + d.x * t, self.a.y + d.y * t)

    def param_of(self, p: Point) -> Fraction:
        """Parameter t with p = a + t*(b-a); p must lie on the supporting line."""
        d = self.b - self.a
        if d.x != 0:
            return (p.x - self.a.x) / d.x
        return (p.y - self.a.y) / d.y

    def __repr__(self):
        return "[%r-%r]" % (self.a, self.b)


@dataclass(frozen=True, slots=True)
class Line:
    """Line through two distinct points."""
    p: Point
    q: Point

    def __post_init__(self):
        if self.p == self.q:
            raise ValueError("line needs two distinct points")

    def side_of(self, r: Point) -> int:
        """LEFT, ON (COLLINEAR) or RIGHT of the directed line p->q."""
        return orient(self.p, self.q, r)


def horizontal_line(p: Point) -> Line:
    return Line(p, Point(p.x + 1, p.y))


def point_on_segment(p: Point, s: Segment) -> bool:
    """True iff p lies on the closed segment s."""
    if orient(s.a, s.b, p) != COLLINEAR:
        return False
    lox, hix = (s.a.x, s.b.x) if s.a.x <= s.b.x else (s.b.x, s.a.x)
    loy, hiy = (s.a.y, s.b.y) if s.a.y <= s.b.y else (s.b.y, s.a.y)
    return lox <= p.x <= hix and loy <= p.y <= hiy


def line_intersection(p1: Point, p2: Point, p3: Point, p4: Point) -> Optional[Point]:
    """Intersection of lines p1p2 and p3p4, or None when parallel."""
    d1 = p2 - p1
    d2 = p4 - p3
    denom = cross(d1, d2)
    if denom == 0:
        return None
    t = cross(p3 - p1, d2) / denom
    return Point(p1.x + d1.x * t, p1.y + d1.y * t)


def segment_intersection(s1: Segment, s2: Segment) -> Union[None, Point, Segment]:
    """Exact classification of s1 and s2's intersection.

    Returns None (empty), a Point, or a Segment (collinear overlap).
    """
    d1 = orient(s2.a, s2.b, s1.a)
    d2 = orient(s2.a, s2.b, s1.b)
    d3 = orient(s1.a, s1.b, s2.a)
    d4 = orient(s1.a, s1.b, s2.b)

    if d1 == 0 and d2 == 0:
        # collinear: 1-D overlap along the common line
        d = s1.b - s1.a
        def key(p):
            return p.x * d.x + p.y * d.y  # monotone along the line
        lo1, hi1 = sorted((s1.a, s1.b), key=key)
        lo2, hi2 = sorted((s2.a, s2.b), key=key)
        lo = lo1 if key(lo1) >= key(lo2) else lo2
        hi = hi1 if key(hi1) <= key(hi2) else hi2
        klo, khi = key(lo), key(hi)
        if klo > khi:
            return None
        if klo == khi:
            return lo
        return Segment(lo, hi)

    if d1 * d2 < 0 and d3 * d4 < 0:
        p = line_intersection(s1.a, s1.b, s2.a, s2.b)
        assert p is not None
        return p

    # touching cases: an endpoint on the other segment
    if d1 == 0 and point_on_segment(s1.a, s2):
        return s1.a
    if d2 == 0 and point_on_segment(s1.b, s2):
        return s1.b
    if d3 == 0 and point_on_segment(s2.a, s1):
        return s2.a
    if d4 == 0 and point_on_segment(s2.b, s1):
        return s2.b
    return None


def segments_cross_properly(s1: Segment, s2: Segment) -> bool:
    """True iff the open interiors cross transversally."""
    d1 = orient(s2.a, s2.b, s1.a)
    d2 = orient(s2.a, s2.b, s1.b)
    d3 = orient(s1.a, s1.b, s2.a)
    d4 = orient(s1.a, s1.b, s2.b)
    return d1 * d2 < 0 and d3 * d4 < 0


def convex_hull(points: Sequence[Point]) -> List[Point]:
    """CCW convex hull (monotone chain); collinear points are dropped."""
    pts = sorted(set(points), key=lambda p: (p.x, p.y))
    if len(pts) <= 2:
        return pts
    lower: List[Point] = []
    for p in pts:
        while len(lower) >= 2 and orient(lower[-2], lower[-1], p) != LEFT:
            lower.pop()
        lower.append(p)
    upper: List[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and orient(upper[-2], upper[-1], p) != LEFT:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


# ---------------------------------------------------------------------------
# exact angular order around a pivot

def ccw_compare_from(start: Point, a: Point, b: Point) -> int:
    """Compare directions a, b by CCW angle from direction `start`.

    All vectors nonzero.  Returns -1/0/+1; 0 means a and b point along the
    same ray.  Angles measured in [0, 2*pi) from `start`.
    """
    ra = _ccw_rank(start, a)
    rb = _ccw_rank(start, b)
    if ra != rb:
        return -1 if ra < rb else 1
    if ra in (0, 2):
        return 0
    s = cross_sign(a, b)
    if s > 0:
        return -1
    if s < 0:
        return 1
    return 0


def _ccw_rank(start: Point, d: Point) -> int:
    """0: along start; 1: in (0,pi); 2: opposite; 3: in (pi,2pi)."""
    c = cross_sign(start, d)
    if c > 0:
        return 1
    if c < 0:
        return 3
    return 0 if dot_sign(start, d) > 0 else 2


def direction_in_ccw_span(d: Point, start: Point, end: Point) -> bool:
    """Is direction d within the closed CCW angular span [start, end]?

    The span covers angles 0..angle(end) measured CCW from start; when
    start == end the span is the single ray.
    """
    if same_direction(d, start) or same_direction(d, end):
        return True
    return ccw_compare_from(start, d, end) < 0


# ---------------------------------------------------------------------------
# canonical-frame map

@dataclass(frozen=True)
class SimilarityMap:
    """Orientation-preserving rational similarity q -> R(q - u0).

    R is the rotation-scaling (x, y) -> (dx*x + dy*y, -dy*x + dx*y), which
    sends the vector (dx, dy) to (dx^2 + dy^2, 0).  When (dx, dy) already
    points along +x the linear part is the identity, so already-canonical
    inputs are only translated.
    """
    u0: Point
    dx: Fraction
    dy: Fraction

    @staticmethod
    def for_edge(u: Point, v: Point) -> "SimilarityMap":
        d = v - u
        if d.y == 0 and d.x > 0:
            return SimilarityMap(u, Fraction(1), Fraction(0))
        return SimilarityMap(u, d.x, d.y)

    def apply(self, q: Point) -> Point:
        w = q - self.u0
        return Point(self.dx * w.x + self.dy * w.y, -self.dy * w.x + self.dx * w.y)

    def invert(self, q: Point) -> Point:
        n = self.dx * self.dx + self.dy * self.dy
        x = (self.dx * q.x - self.dy * q.y) / n
        y = (self.dy * q.x + self.dx * q.y) / n
        return Point(x + self.u0.x, y + self.u0.y)


@dataclass(frozen=True)
class ReflectX:
    """Reflection through the x-axis (used for the lower chord side)."""

    def apply(self, q: Point) -> Point:
        return Point(q.x, -q.y)

    invert = apply
