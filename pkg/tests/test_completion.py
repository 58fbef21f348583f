from fractions import Fraction

import pytest

from wvguard.boundary import all_vertex_candidates, boundary_witnesses, greedy_cover
from wvguard.completion import (
    collect_windows,
    complete_guards,
    complete_guards_chord,
    split_window_at_axis,
    topmost_qualifying_intersection,
    triangle_guard_vertex,
    triangle_visible_from,
)
from wvguard.errors import InputNotBoundaryGuarding
from wvguard.geometry import Point, Segment, pt
from wvguard.guards import guard_set, vertex_guard
from wvguard.model import edge_wv_from_points, normalize, normalize_chord
from wvguard.oracle import (
    generate_chord_polygon,
    generate_wv_polygon,
    verify_coverage,
)
from wvguard.polygon import validate_simple
from wvguard.visibility import LOWER, UPPER, visibility_polygon

from .conftest import comb_polygon, l_polygon, square


def test_collect_windows_star_center_empty():
    wv = normalize(l_polygon(), 0, 1)
    gs = guard_set([vertex_guard(0)], "user_supplied")
    windows, on_uv, _ = collect_windows(wv, gs)
    assert windows == [] and on_uv == []


def test_collect_windows_rejects_nonguarding():
    wv = normalize(comb_polygon(3), 0, 1)
    gs = guard_set([vertex_guard(0)], "user_supplied")
    with pytest.raises(InputNotBoundaryGuarding) as ei:
        collect_windows(wv, gs)
    assert ei.value.witness is not None


def test_collect_windows_two_guards_lpoly():
    wv = normalize(l_polygon(), 0, 1)
    gs = guard_set([vertex_guard(1), vertex_guard(5)], "user_supplied")
    windows, on_uv, _ = collect_windows(wv, gs)
    assert windows  # both corners cast windows past the notch
    assert len(on_uv) <= 2 * len(gs)
    for w in on_uv:
        assert w.x.y == 0 and Fraction(0) <= w.x.x <= Fraction(2)


def test_complete_guards_noop_cases():
    for ring in ([pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)],
                 list(l_polygon().vertices)):
        wv = edge_wv_from_points(ring)
        gs = guard_set([vertex_guard(0)], "user_supplied")
        res = complete_guards(wv, gs)
        assert len(res.added_guards) == 0
        assert verify_coverage(wv, res.combined).fully_guarded


def test_complete_guards_comb_greedy_pipeline():
    wv = normalize(comb_polygon(3), 0, 1)
    cands = all_vertex_candidates(wv.polygon)
    ws = boundary_witnesses(wv.polygon, cands)
    gs = greedy_cover(ws, cands)
    res = complete_guards(wv, gs)
    assert len(res.added_guards) <= len(gs)
    rep = verify_coverage(wv, res.combined)
    assert rep.fully_guarded


def test_topmost_intersection_prefers_higher():
    # two synthetic windows crossing a steep upper window
    wv = edge_wv_from_points(
        [pt(0, 0), pt(12, 0), pt(12, 8), pt(0, 8)])
    uv = wv.uv
    vis = visibility_polygon(wv.polygon, pt(0, 0), uv=uv)

    def mk(x, y_pt, side):
        from wvguard.visibility import ConstructedEdge, classify_kind
        from wvguard.polygon import BoundaryPos
        return ConstructedEdge(
            x=x, y_pt=y_pt, x_pos=BoundaryPos(0, Fraction(0)),
            y_pos=BoundaryPos(0, Fraction(0)), viewpoint=pt(0, 0),
            pocket_side=side, kind=classify_kind(y_pt - x, side),
            x_on_uv=True)

    e = mk(pt(4, 0), pt(1, 6), 1)          # leans up-left, pocket left: upper
    assert e.kind == UPPER
    p1 = mk(pt(2, 0), pt(2, 5), 1)          # vertical partner, crosses e at y=4
    p2 = mk(pt(3, 0), pt("5/2", 3), 1)      # crosses e at y=3
    got = topmost_qualifying_intersection(e, [e, p1, p2])
    assert got is not None
    apex, partner = got
    assert partner is p1
    assert apex == pt(2, 4)


def test_topmost_intersection_requires_pocket_side():
    from wvguard.visibility import ConstructedEdge, classify_kind
    from wvguard.polygon import BoundaryPos

    def mk(x, y_pt, side):
        return ConstructedEdge(
            x=x, y_pt=y_pt, x_pos=BoundaryPos(0, Fraction(0)),
            y_pos=BoundaryPos(0, Fraction(0)), viewpoint=pt(0, 0),
            pocket_side=side, kind=classify_kind(y_pt - x, side),
            x_on_uv=True)

    e = mk(pt(4, 0), pt(1, 6), 1)
    # partner anchored on the non-pocket side: not qualifying
    p = mk(pt(5, 0), pt(1, 4), 1)
    assert topmost_qualifying_intersection(e, [e, p]) is None


def test_triangle_guard_vertex_simple():
    # staircase-ish polygon where the guard for a triangle is found by the
    # ray-projection scan and verified to see the whole triangle
    wv = generate_wv_polygon(5, 12, "staircase")
    poly = wv.polygon
    apex = pt(6, 3)
    x = pt(4, 0)
    xp = pt(8, 0)
    if poly.contains(apex) != "in":
        apex = Point(apex.x, Fraction(1, 2))
    from wvguard.completion import region_in_polygon
    if region_in_polygon(poly, (x, apex, xp)):
        gi = triangle_guard_vertex(poly, wv.u, wv.v, x, apex, xp)
        assert triangle_visible_from(poly, (x, apex, xp), poly.vertices[gi])


def test_split_window_roles_switch():
    # a window crossing the axis is upper on one side, lower on the other
    from wvguard.visibility import ConstructedEdge, classify_kind
    from wvguard.polygon import BoundaryPos
    uv = Segment(pt(0, 0), pt(10, 0))
    w = ConstructedEdge(
        x=pt(2, -2), y_pt=pt(6, 4), x_pos=BoundaryPos(0, Fraction(0)),
        y_pos=BoundaryPos(0, Fraction(0)), viewpoint=pt(8, 7),
        pocket_side=-1, kind=classify_kind(pt(4, 6), -1), x_on_uv=False)
    up, down = split_window_at_axis(w, uv)
    assert up is not None and down is not None
    assert up.x_on_uv and down.x_on_uv
    assert up.x == down.x == pt(Fraction(10, 3), 0)
    assert {up.kind, down.kind} == {UPPER, LOWER}


def test_complete_guards_chord_pipeline():
    wv = generate_chord_polygon(2, 12)
    cands = all_vertex_candidates(wv.polygon)
    ws = boundary_witnesses(wv.polygon, cands)
    gs = greedy_cover(ws, cands)
    res = complete_guards_chord(wv, gs)
    assert len(res.added_guards) <= 2 * len(gs)
    rep = verify_coverage(wv, res.combined)
    assert rep.fully_guarded


def test_complete_guards_generated_families():
    for family in ("comb", "staircase", "spikes", "random_rejection"):
        wv = generate_wv_polygon(11, 14, family)
        cands = all_vertex_candidates(wv.polygon)
        ws = boundary_witnesses(wv.polygon, cands)
        gs = greedy_cover(ws, cands)
        res = complete_guards(wv, gs)
        assert len(res.added_guards) <= len(gs)
        rep = verify_coverage(wv, res.combined)
        assert rep.fully_guarded, family
