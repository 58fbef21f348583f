import random
from fractions import Fraction

import pytest

from wvguard.errors import PointOutsidePolygon
from wvguard.geometry import Point, Segment, orient, pt
from wvguard.polygon import IN, SimplePolygon, validate_simple
from wvguard.visibility import (
    LOWER,
    UPPER,
    classify_kind,
    pocket_of,
    visibility_polygon,
    visibility_polygon_naive,
)

from .conftest import comb_polygon, l_polygon, square


def ring_points(vis):
    return set(vis.points)


def test_convex_full_visibility(unit_square):
    vis = visibility_polygon(unit_square, pt(0, 0))
    assert vis.region_signature() == unit_square.vertices
    assert vis.windows == []


def test_convex_interior_viewpoint(unit_square):
    vis = visibility_polygon(unit_square, pt("1/2", "1/3"))
    assert set(vis.region_signature()) == set(unit_square.vertices)
    assert vis.windows == []


def test_lpoly_from_star_center(lpoly):
    vis = visibility_polygon(lpoly, pt(0, 0))
    assert set(vis.region_signature()) == set(lpoly.vertices)
    assert vis.windows == []


def test_lpoly_window_from_far_corner(lpoly):
    vis = visibility_polygon(lpoly, pt(2, 0), uv=Segment(pt(0, 0), pt(2, 0)))
    assert len(vis.windows) == 1
    w = vis.windows[0]
    assert w.x == pt(1, 1)
    assert w.y_pt == pt(0, 2)
    assert w.kind == LOWER
    assert not w.x_on_uv
    # visibility region is P minus the pocket triangle
    assert set(vis.region_signature()) == {pt(0, 0), pt(2, 0), pt(2, 1), pt(1, 1), pt(0, 2)}
    pocket = pocket_of(vis, w)
    assert set(pocket.region.vertices) == {pt(1, 1), pt(1, 2), pt(0, 2)}
    assert pocket.region.signed_area2 > 0


def test_window_collinear_with_viewpoint(lpoly):
    vis = visibility_polygon(lpoly, pt(2, 0))
    w = vis.windows[0]
    assert orient(vis.viewpoint, w.x, w.y_pt) == 0


def test_comb_windows_from_base_corner(comb3):
    uv = Segment(pt(0, 0), pt(10, 0))
    vis = visibility_polygon(comb3, pt(0, 0), uv=uv)
    # corner u sees the corridor and into no complete tooth: one window per
    # occluded region
    assert len(vis.windows) >= 2
    for w in vis.windows:
        assert orient(pt(0, 0), w.x, w.y_pt) == 0


def test_outside_viewpoint_rejected(unit_square):
    with pytest.raises(PointOutsidePolygon):
        visibility_polygon(unit_square, pt(5, 5))


def test_classify_kind_conventions():
    assert classify_kind(pt(1, 2), -1) == UPPER   # dx>0: below is right
    assert classify_kind(pt(1, 2), 1) == LOWER
    assert classify_kind(pt(-1, 2), 1) == UPPER   # dx<0: below is left
    assert classify_kind(pt(-1, 2), -1) == LOWER
    assert classify_kind(pt(0, 2), 1) == UPPER    # vertical: upper by convention
    assert classify_kind(pt(0, 2), -1) == UPPER


def test_boundary_viewpoint_on_edge_interior(lpoly):
    vis = visibility_polygon(lpoly, pt(1, 0))
    # (1,0) on the base sees the whole L (its x==1 line grazes the notch corner)
    assert set(vis.region_signature()) == set(lpoly.vertices)


def test_star_shapedness_sweep(lpoly, comb3):
    for poly, vp in [
        (lpoly, pt(2, 0)), (lpoly, pt("3/2", "1/2")), (comb3, pt(4, 0)),
        (comb3, pt("3/2", 2)), (comb3, pt("1/2", "1/2")),
    ]:
        vis = visibility_polygon(poly, vp)
        for q in vis.points:
            assert poly.sees(vp, q), "ring point %r not visible from %r" % (q, vp)
        # the region is a subset of the polygon
        ring_poly = vis.as_polygon()
        assert ring_poly.signed_area2 > 0


def _random_monotone_polygon(rng, n):
    """x-monotone chain above the base segment; always simple."""
    xs = sorted(rng.sample(range(1, 6 * n), n - 2))
    ring = [pt(0, 0), pt(6 * n, 0)]
    for x in reversed(xs):
        ring.append(pt(x, rng.randint(1, 8) + Fraction(rng.randint(0, 3), 4)))
    return validate_simple(ring)


@pytest.mark.parametrize("seed", range(6))
def test_differential_sweep_vs_naive_random(seed):
    rng = random.Random(1000 + seed)
    poly = _random_monotone_polygon(rng, rng.randint(6, 12))
    views = [poly.vertices[0], poly.vertices[1],
             poly.vertices[rng.randrange(poly.n)]]
    # an interior viewpoint: centroid of a triangulation triangle
    i, j, k = poly.triangulate()[0]
    a, b, c = poly.vertices[i], poly.vertices[j], poly.vertices[k]
    views.append(Point((a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3))
    # a boundary edge midpoint
    e = poly.edge(rng.randrange(poly.n))
    views.append(e.point_at(Fraction(1, 2)))
    for vp in views:
        fast = visibility_polygon(poly, vp)
        slow = visibility_polygon_naive(poly, vp)
        assert fast.region_signature() == slow.region_signature(), \
            "mismatch at %r (seed %d)" % (vp, seed)


def test_differential_on_fixtures(lpoly, comb3, unit_square):
    for poly in (lpoly, comb3, unit_square, square(3)):
        views = list(poly.vertices[:4])
        views.append(poly.edge(0).point_at(Fraction(1, 3)))
        for vp in views:
            fast = visibility_polygon(poly, vp)
            slow = visibility_polygon_naive(poly, vp)
            assert fast.region_signature() == slow.region_signature()
            fw = {(w.x, w.y_pt, w.pocket_side, w.kind) for w in fast.windows}
            sw = {(w.x, w.y_pt, w.pocket_side, w.kind) for w in slow.windows}
            assert fw == sw


def test_visible_intervals_square(unit_square):
    vis = visibility_polygon(unit_square, pt(0, 0))
    ivs = vis.visible_intervals_by_edge()
    assert set(ivs) == {0, 1, 2, 3}
    for e in range(4):
        assert ivs[e] == [(Fraction(0), Fraction(1))]


def test_visible_intervals_comb_tooth_walls(comb3):
    # from u=(0,0): the left wall of the first tooth is visible, the tooth
    # interiors beyond their gaps are not
    vis = visibility_polygon(comb3, pt(0, 0))
    ivs = vis.visible_intervals_by_edge()
    covered = sum((hi - lo) for e in ivs for lo, hi in ivs[e])
    assert covered > 0
    naive = visibility_polygon_naive(comb3, pt(0, 0))
    assert {e: tuple(v) for e, v in ivs.items()} == \
        {e: tuple(v) for e, v in naive.visible_intervals_by_edge().items()}


def test_clip_segment_single_component(lpoly):
    uv = Segment(pt(0, 0), pt(2, 0))
    for vp in [pt(2, 0), pt(0, 2), pt(1, 2), pt("3/2", "1/2")]:
        vis = visibility_polygon(lpoly, vp, uv=uv)
        comps = vis.clip_segment(uv)
        assert len(comps) == 1


def test_pocket_comb(comb3):
    uv = Segment(pt(0, 0), pt(10, 0))
    vis = visibility_polygon(comb3, pt(0, 0), uv=uv)
    for w in vis.windows:
        pk = pocket_of(vis, w)
        assert pk.region.signed_area2 > 0
        # pocket region is inside the polygon: spot-check the vertex centroid
        vs = pk.region.vertices
        cx = sum(v.x for v in vs) / len(vs)
        cy = sum(v.y for v in vs) / len(vs)
        assert comb3.contains(Point(cx, cy)) != "out"
