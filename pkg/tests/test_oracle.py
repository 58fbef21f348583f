from fractions import Fraction

import pytest

from wvguard.boundary import all_vertex_candidates, boundary_witnesses, greedy_cover
from wvguard.errors import BudgetExceeded
from wvguard.geometry import pt
from wvguard.guards import guard_set, vertex_guard
from wvguard.model import edge_wv_from_points, is_weakly_visible, normalize
from wvguard.oracle import (
    BOUNDARY,
    FAMILIES,
    FULL,
    brute_force_opt,
    dense_sample_check,
    extract_holes,
    generate_chord_polygon,
    generate_wv_polygon,
    verify_coverage,
)

from .conftest import comb_polygon, l_polygon, square


def lpoly_wv():
    return normalize(l_polygon(), 0, 1)


def test_extract_holes_star_center_empty():
    wv = lpoly_wv()
    gs = guard_set([vertex_guard(0)], "user_supplied")
    assert extract_holes(wv, gs) == []


def test_extract_holes_all_vertices_empty():
    wv = normalize(comb_polygon(2), 0, 1)
    gs = guard_set([vertex_guard(i) for i in range(wv.polygon.n)], "user_supplied")
    assert extract_holes(wv, gs) == []


def test_verify_coverage_square():
    wv = normalize(square(), 0, 1)
    gs = guard_set([vertex_guard(2)], "user_supplied")
    rep = verify_coverage(wv, gs)
    assert rep.fully_guarded
    assert rep.holes == [] and rep.uncovered_boundary == []


def test_verify_coverage_reports_boundary_gap():
    wv = normalize(comb_polygon(3), 0, 1)
    gs = guard_set([vertex_guard(0), vertex_guard(1)], "user_supplied")
    rep = verify_coverage(wv, gs)
    assert not rep.fully_guarded
    assert rep.uncovered_boundary


def test_brute_force_square_both_modes():
    wv = normalize(square(), 0, 1)
    assert len(brute_force_opt(wv, FULL)) == 1
    assert len(brute_force_opt(wv, BOUNDARY)) == 1


def test_brute_force_comb_three_teeth():
    wv = normalize(comb_polygon(3), 0, 1)
    full = brute_force_opt(wv, FULL)
    bnd = brute_force_opt(wv, BOUNDARY)
    assert len(full) == 3
    assert len(bnd) == 3
    assert verify_coverage(wv, full).fully_guarded


def test_brute_force_budget(monkeypatch):
    monkeypatch.setenv("WVGUARD_BUDGET", "5")
    wv = normalize(comb_polygon(3), 0, 1)
    with pytest.raises(BudgetExceeded):
        brute_force_opt(wv, FULL)


def test_boundary_opt_never_exceeds_full_opt():
    for seed in range(3):
        wv = generate_wv_polygon(seed, 12, "comb")
        bnd = brute_force_opt(wv, BOUNDARY)
        full = brute_force_opt(wv, FULL)
        assert len(bnd) <= len(full)


@pytest.mark.parametrize("family", FAMILIES)
def test_generators_produce_wv(family):
    for seed in (1, 2):
        wv = generate_wv_polygon(seed, 12, family)
        assert wv.is_canonical()
        ok, _ = is_weakly_visible(wv)
        assert ok, "%s seed %d not weakly visible" % (family, seed)


def test_generator_determinism():
    a = generate_wv_polygon(7, 16, "staircase")
    b = generate_wv_polygon(7, 16, "staircase")
    assert a.polygon.vertices == b.polygon.vertices


def test_chord_generator():
    wv = generate_chord_polygon(3, 12)
    assert wv.mode == "chord"
    ok, _ = is_weakly_visible(wv)
    assert ok


def test_dense_sample_agrees_with_extraction():
    wv = normalize(comb_polygon(2), 0, 1)
    cands = all_vertex_candidates(wv.polygon)
    ws = boundary_witnesses(wv.polygon, cands)
    gs = greedy_cover(ws, cands)
    holes = [h for h in extract_holes(wv, gs) if not h.touches_boundary]
    sample_miss = dense_sample_check(wv, gs, samples=2000)
    assert (not holes) == (sample_miss is None)


def test_hole_regions_unseen(comb3):
    # drop one tooth's guards: the hole machinery must report the unseen tooth
    wv = normalize(comb_polygon(3), 0, 1)
    poly = wv.polygon
    # guards: one per tooth lip except the middle tooth
    lips = [i for i, q in enumerate(poly.vertices) if q.y == 1]
    keep = [vertex_guard(i) for i in lips if not (4 <= poly.vertices[i].x <= 5)]
    gs = guard_set(keep, "user_supplied")
    holes, touching = [], []
    for h in extract_holes(wv, gs):
        (touching if h.touches_boundary else holes).append(h)
    assert touching, "unseen middle tooth touches the boundary"
    for h in touching:
        for q in h.region.sample_points(20):
            assert not any(poly.sees(g.point(poly), q) for g in gs)
