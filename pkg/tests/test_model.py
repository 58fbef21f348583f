from fractions import Fraction

import pytest

from wvguard.errors import NotAChord, NotAnEdge, NotCanonical
from wvguard.geometry import Point, Segment, SimilarityMap, pt
from wvguard.model import (
    CHORD,
    EDGE,
    edge_wv_from_points,
    is_weakly_visible,
    normalize,
    normalize_chord,
    preprocess_concave_endpoints,
    split_at_chord,
)
from wvguard.polygon import validate_simple

from .conftest import comb_polygon, l_polygon, square


def lpoly_wv():
    return normalize(l_polygon(), 0, 1)


def test_normalize_canonical_identity():
    wv = lpoly_wv()
    assert wv.u == pt(0, 0)
    assert wv.v == pt(2, 0)
    assert wv.polygon.vertices == l_polygon().vertices
    assert wv.orig_index == (0, 1, 2, 3, 4, 5)


def test_normalize_translation():
    shifted = validate_simple([p + pt(5, 7) for p in l_polygon().vertices])
    wv = normalize(shifted, 0, 1)
    assert wv.polygon.vertices == l_polygon().vertices
    assert wv.to_original(pt(0, 0)) == pt(5, 7)


def test_normalize_rotated_edge():
    # rotate the L by the rational rotation (3/5, 4/5)
    c, s = Fraction(3, 5), Fraction(4, 5)
    rot = [Point(c * p.x - s * p.y, s * p.x + c * p.y) for p in l_polygon().vertices]
    wv = normalize(validate_simple(rot), 0, 1)
    assert wv.u == pt(0, 0)
    assert wv.v.y == 0 and wv.v.x > 0
    assert wv.is_canonical()
    # round trip
    for q in wv.polygon.vertices:
        back = wv.to_original(q)
        assert wv.from_original(back) == q
    ok, _ = is_weakly_visible(wv)
    assert ok


def test_normalize_index_order_swapped():
    wv = normalize(l_polygon(), 1, 0)
    assert wv.u == pt(0, 0)  # swapped back so the interior is above
    assert wv.v == pt(2, 0)


def test_normalize_rejects_non_edge():
    with pytest.raises(NotAnEdge):
        normalize(l_polygon(), 0, 2)


def test_weakly_visible_lpoly_and_square():
    assert is_weakly_visible(lpoly_wv()) == (True, None)
    wv = normalize(square(), 0, 1)
    assert is_weakly_visible(wv) == (True, None)


def test_weakly_visible_comb():
    wv = normalize(comb_polygon(3), 0, 1)
    ok, _ = is_weakly_visible(wv)
    assert ok


def test_not_weakly_visible_t_shape():
    # T: stem bottom is uv; the arms hide their lower corners from the stem
    ring = [pt(4, 0), pt(6, 0), pt(6, 4), pt(9, 4), pt(9, 6),
            pt(1, 6), pt(1, 4), pt(4, 4)]
    wv = normalize(validate_simple(ring), 0, 1)
    ok, witness = is_weakly_visible(wv)
    assert not ok
    assert witness is not None
    # the witness is a boundary point invisible from all of uv
    vis = None
    from wvguard.visibility import visibility_polygon
    vw = visibility_polygon(wv.polygon, witness)
    assert vw.clip_segment(wv.uv) == []


def test_preprocess_noop_when_convex_at_endpoints():
    wv = lpoly_wv()
    out, report = preprocess_concave_endpoints(wv)
    assert out is wv or out.polygon == wv.polygon
    assert not report.changed


def test_preprocess_dip_at_u():
    # boundary dips below the axis just behind u
    ring = [pt(0, 0), pt(6, 0), pt(6, 3), pt(0, 3),
            pt(-2, 1), pt(-2, -1), pt("-1/2", -1)]
    wv = normalize(validate_simple(ring), 0, 1)
    assert not wv.is_canonical()
    out, report = preprocess_concave_endpoints(wv)
    assert out.is_canonical()
    assert report.forced_guards == [pt(0, 0)]
    assert len(report.removed_regions) == 1
    region = report.removed_regions[0]
    assert region.signed_area2 > 0
    # every removed point is visible from u in the original polygon
    for q in list(region.vertices) + region.sample_points(25):
        assert wv.polygon.sees(wv.u, q)
    # downstream polygon is still weakly visible
    assert is_weakly_visible(out) == (True, None)
    assert out.orig_index[:2] == (0, 1)


def test_preprocess_dip_at_v():
    ring = [pt(0, 0), pt(6, 0), pt("13/2", -1), pt(8, -1), pt(8, 1),
            pt(6, 3), pt(0, 3)]
    wv = normalize(validate_simple(ring), 0, 1)
    out, report = preprocess_concave_endpoints(wv)
    assert out.is_canonical()
    assert report.forced_guards == [pt(6, 0)]
    for region in report.removed_regions:
        for q in list(region.vertices) + region.sample_points(25):
            assert wv.polygon.sees(wv.v, q)
    assert is_weakly_visible(out) == (True, None)


def test_preprocess_dips_at_both_ends():
    ring = [pt(0, 0), pt(6, 0), pt(7, -1), pt(8, 1), pt(6, 3), pt(0, 3),
            pt(-2, -1), pt(-1, -2)]
    wv = normalize(validate_simple(ring), 0, 1)
    out, report = preprocess_concave_endpoints(wv)
    assert out.is_canonical()
    assert set(report.forced_guards) == {pt(0, 0), pt(6, 0)}
    assert is_weakly_visible(out) == (True, None)


def test_require_canonical_raises():
    ring = [pt(0, 0), pt(6, 0), pt(6, 3), pt(0, 3),
            pt(-2, 1), pt(-2, -1), pt("-1/2", -1)]
    wv = normalize(validate_simple(ring), 0, 1)
    with pytest.raises(NotCanonical):
        wv.require_canonical()


def chord_hexagon():
    # convex hexagon straddling the x-axis, chord between vertices 0 and 3
    ring = [pt(0, 0), pt(2, -2), pt(6, -2), pt(8, 0), pt(6, 2), pt(2, 2)]
    poly = validate_simple(ring)
    return normalize_chord(poly, (0, Fraction(0)), (3, Fraction(0)))


def test_normalize_chord_roundtrip():
    wv = chord_hexagon()
    assert wv.mode == CHORD
    assert wv.u == pt(0, 0)
    assert wv.v == pt(8, 0)
    ok, _ = is_weakly_visible(wv)
    assert ok


def test_chord_rejects_boundary_overlap():
    poly = validate_simple([pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)])
    with pytest.raises(NotAChord):
        # "chord" along the bottom edge
        normalize_chord(poly, (0, Fraction(0)), (0, Fraction(1, 2)))


def test_chord_rejects_crossing():
    # chord between two reflex notches would exit the polygon
    ring = [pt(0, 0), pt(10, 0), pt(10, 4), pt(6, 4), pt(6, 2), pt(4, 2),
            pt(4, 4), pt(0, 4)]
    poly = validate_simple(ring)
    # segment from (0,4)..(10,4) passes through the notch (outside)
    with pytest.raises(NotAChord):
        normalize_chord(poly, (6, Fraction(0)), (2, Fraction(0)))


def test_split_at_chord_hexagon():
    wv = chord_hexagon()
    p1, p2 = split_at_chord(wv)
    assert p1.mode == EDGE and p2.mode == EDGE
    assert p1.is_canonical() and p2.is_canonical()
    # areas add up exactly
    assert p1.polygon.area() + p2.polygon.area() == wv.polygon.area()
    # both halves weakly visible from the chord
    assert is_weakly_visible(p1) == (True, None)
    assert is_weakly_visible(p2) == (True, None)
    # lower half is reflected: mapping back flips y
    q = p2.polygon.vertices[2]
    orig = p2.to_original(q)
    assert orig.y <= 0


def test_split_at_chord_midedge_endpoints():
    # chord endpoints strictly inside edges
    ring = [pt(0, -2), pt(8, -2), pt(8, 2), pt(0, 2)]
    poly = validate_simple(ring)
    wv = normalize_chord(poly, (3, Fraction(1, 2)), (1, Fraction(1, 2)))
    p1, p2 = split_at_chord(wv)
    assert p1.polygon.area() + p2.polygon.area() == poly.area()
    assert p1.u == pt(0, 0)
    assert p1.v == pt(8, 0)


def test_edge_wv_from_points_helper():
    wv = edge_wv_from_points([pt(0, 0), pt(2, 0), pt(2, 1), pt(1, 1), pt(1, 2), pt(0, 2)])
    assert wv.u == pt(0, 0) and wv.v == pt(2, 0)
