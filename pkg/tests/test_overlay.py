from fractions import Fraction

from wvguard.geometry import pt
from wvguard.overlay import (
    build_overlay,
    component_outer_ring,
    representative_point,
    union_components,
)
from wvguard.polygon import IN, SimplePolygon


def square_segments(side=4, key="P"):
    c = [pt(0, 0), pt(side, 0), pt(side, side), pt(0, side)]
    return [(c[i], c[(i + 1) % 4], (key, i)) for i in range(4)]


def test_overlay_square_two_faces():
    ov = build_overlay(square_segments())
    bounded = [f for f in ov.faces if f.bounded]
    assert len(bounded) == 1
    assert bounded[0].area2 == 32  # twice the area
    unbounded = [f for f in ov.faces if not f.bounded]
    assert len(unbounded) == 1


def test_overlay_square_with_crossing_diagonals():
    segs = square_segments()
    segs.append((pt(0, 0), pt(4, 4), ("D", 0)))
    segs.append((pt(4, 0), pt(0, 4), ("D", 1)))
    ov = build_overlay(segs)
    bounded = [f for f in ov.faces if f.bounded]
    assert len(bounded) == 4
    assert sum(f.area2 for f in bounded) == 32
    for f in bounded:
        rp = representative_point(f.ring)
        sp = SimplePolygon(f.ring)
        assert sp.contains(rp) == IN


def test_overlay_collinear_overlap_dedup():
    segs = square_segments()
    # a chord overlapping another chord along a shared stretch
    segs.append((pt(0, 2), pt(4, 2), ("W", 0)))
    segs.append((pt(1, 2), pt(3, 2), ("W", 1)))
    ov = build_overlay(segs)
    bounded = [f for f in ov.faces if f.bounded]
    assert sum(f.area2 for f in bounded) == 32
    assert len(bounded) == 2  # chord splits the square once
    # the shared stretch carries both keys
    shared = [ks for ks in ov.dart_keys if ("W", 0) in ks and ("W", 1) in ks]
    assert shared


def test_union_components_and_outer_ring():
    segs = square_segments()
    segs.append((pt(2, 0), pt(2, 4), ("W", 0)))  # vertical chord
    ov = build_overlay(segs)
    bounded = {f.id for f in ov.faces if f.bounded}
    assert len(bounded) == 2
    comps = union_components(ov, bounded)
    assert len(comps) == 1  # the two halves share the chord
    ring = component_outer_ring(ov, bounded)
    assert set(ring) == {pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)}
    # single face component
    one = {min(bounded)}
    ring1 = component_outer_ring(ov, one)
    sp = SimplePolygon(ring1)
    assert abs(sp.signed_area2) == 16


def test_representative_point_nonconvex():
    ring = [pt(0, 0), pt(4, 0), pt(4, 1), pt(1, 1), pt(1, 3), pt(0, 3)]
    rp = representative_point(ring)
    assert SimplePolygon(ring).contains(rp) == IN
