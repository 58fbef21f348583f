"""Ground truth: exact hole extraction, coverage verification, brute-force
optima, and deterministic fixture generation.

Hole extraction overlays the polygon edges with every guard's windows; the
faces of that subdivision are each wholly seen or unseen by each guard, so
labelling one interior point per face is exact.  The optional dense-sample
check in the test-suite is the cheap differential counterpart; the overlay
result is authoritative.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .boundary import boundary_cover_check
from .errors import BudgetExceeded, GenerationFailed, InvariantViolation
from .geometry import Point, Segment, point_on_segment, pt
from .guards import EXACT, GuardPos, GuardSet, guard_set, vertex_guard
from .model import WVPolygon, edge_wv_from_points, is_weakly_visible, normalize_chord
from .overlay import (
    build_overlay,
    component_outer_ring,
    representative_point,
    union_components,
)
from .polygon import IN, OUT, SimplePolygon, validate_simple
from .visibility import ConstructedEdge, VisibilityPolygon, visibility_polygon

F0 = Fraction(0)
F1 = Fraction(1)

DEFAULT_BUDGET = 2_000_000

FULL = "full"
BOUNDARY = "boundary"

COMB = "comb"
STAIRCASE = "staircase"
SPIKES = "spikes"
RANDOM_REJECTION = "random_rejection"
FAMILIES = (COMB, STAIRCASE, SPIKES, RANDOM_REJECTION)


@dataclass
class Hole:
    region: SimplePolygon
    leaned_windows: List[List[ConstructedEdge]]  # one list per region edge
    rep: Point
    touches_boundary: bool

    @property
    def all_leaned(self) -> List[ConstructedEdge]:
        out = []
        for ws in self.leaned_windows:
            out.extend(ws)
        return out


@dataclass
class CoverageReport:
    fully_guarded: bool
    holes: List[Hole]
    uncovered_boundary: List[Tuple[int, Fraction, Fraction]]
    boundary_touching: List[Hole]
    stats: Dict[str, object] = field(default_factory=dict)


def guard_visibilities(wv: WVPolygon, gs: GuardSet) -> List[VisibilityPolygon]:
    poly = wv.polygon
    return [visibility_polygon(poly, g.point(poly), uv=wv.uv, guard=g) for g in gs]


def extract_holes(wv: WVPolygon, gs: GuardSet,
                  vis: Optional[List[VisibilityPolygon]] = None) -> List[Hole]:
    """All maximal unseen regions; interior ones are holes proper.

    Regions adjacent to unguarded boundary are flagged touches_boundary and
    reported separately by verify_coverage.
    """
    holes, touching = _unseen_components(wv, gs, vis)
    return holes + touching


def _unseen_components(wv, gs, vis=None):
    poly = wv.polygon
    if vis is None:
        vis = guard_visibilities(wv, gs)
    segments = [(poly.vertices[i], poly.vertices[(i + 1) % poly.n], ("P", i))
                for i in range(poly.n)]
    windows: List[ConstructedEdge] = []
    for gi, vp in enumerate(vis):
        for wi, w in enumerate(vp.windows):
            segments.append((w.x, w.y_pt, ("W", gi, wi)))
            windows.append(w)
    ov = build_overlay(segments)

    reps: Dict[int, Point] = {}
    unseen: Set[int] = set()
    for f in ov.faces:
        if not f.bounded:
            continue
        rp = representative_point(f.ring)
        if poly.contains(rp) != IN:
            continue
        reps[f.id] = rp
        if not any(vp.contains_point(rp) for vp in vis):
            unseen.add(f.id)

    holes: List[Hole] = []
    touching: List[Hole] = []
    for comp in union_components(ov, unseen):
        comp_set = set(comp)
        ring = component_outer_ring(ov, comp_set)
        region = SimplePolygon(ring)
        if region.signed_area2 <= 0:
            raise InvariantViolation("unseen component ring not positively oriented")
        touches = False
        for d in range(len(ov.darts)):
            if ov.face_of[d] in comp_set and ov.face_of[ov.twin[d]] not in comp_set:
                if any(k[0] == "P" for k in ov.dart_keys[d]):
                    touches = True
                    break
        leaned: List[List[ConstructedEdge]] = []
        for i in range(region.n):
            e = region.edge(i)
            on = [w for w in windows
                  if point_on_segment(e.a, w.segment()) and point_on_segment(e.b, w.segment())]
            leaned.append(on)
        rep = representative_point(ring)
        hole = Hole(region=region, leaned_windows=leaned, rep=rep,
                    touches_boundary=touches)
        (touching if touches else holes).append(hole)
    return holes, touching


def verify_coverage(wv: WVPolygon, gs: GuardSet,
                    vis: Optional[List[VisibilityPolygon]] = None) -> CoverageReport:
    """Exact full-coverage check: boundary intervals, then interior faces."""
    poly = wv.polygon
    if vis is None:
        vis = guard_visibilities(wv, gs)
    gaps = boundary_cover_check(poly, gs, vis)
    holes, touching = _unseen_components(wv, gs, vis)
    fully = not gaps and not holes and not touching
    stats = {
        "guards": len(gs),
        "holes": len(holes),
        "uncovered_boundary_intervals": len(gaps),
        "boundary_touching_regions": len(touching),
        "hole_area_total": str(sum((h.region.area() for h in holes), Fraction(0))),
        "polygon_area": str(poly.area()),
    }
    return CoverageReport(fully_guarded=fully, holes=holes,
                          uncovered_boundary=gaps, boundary_touching=touching,
                          stats=stats)


# ---------------------------------------------------------------------------
# brute-force optimum (cutting-plane loop over exact point witnesses)


def _budget() -> int:
    try:
        return int(os.environ.get("WVGUARD_BUDGET", DEFAULT_BUDGET))
    except ValueError:
        return DEFAULT_BUDGET


class _Work:
    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0

    def spend(self, amount: int = 1):
        self.used += amount
        if self.used > self.cap:
            raise BudgetExceeded("brute-force budget exhausted (WVGUARD_BUDGET=%d)" % self.cap)


def _min_point_cover(masks: List[int], nwit: int, work: _Work) -> List[int]:
    if nwit == 0:
        return []
    full = (1 << nwit) - 1
    order = sorted(range(len(masks)), key=lambda i: -bin(masks[i]).count("1"))
    for k in range(1, len(masks) + 1):
        for combo in combinations(order, k):
            work.spend()
            acc = 0
            for ci in combo:
                acc |= masks[ci]
                if acc == full:
                    break
            if acc == full:
                return sorted(combo)
    raise InvariantViolation("point witnesses not coverable by candidates")


def brute_force_opt(wv: WVPolygon, mode: str = FULL,
                    candidates: Optional[Sequence[GuardPos]] = None) -> GuardSet:
    """Minimum vertex guard set for the whole polygon (FULL) or its boundary
    (BOUNDARY), via exact set cover over a growing witness set.

    Each round solves the current witness set optimally and verifies the
    solution exactly; a failed verification contributes a new witness, so on
    termination the answer is a true optimum.
    """
    poly = wv.polygon
    if candidates is None:
        candidates = [vertex_guard(i) for i in range(poly.n)]
    cpoints = [g.point(poly) for g in candidates]
    work = _Work(_budget())

    witnesses: List[Point] = []
    masks: List[int] = [0] * len(candidates)
    seen_cache: Dict[Tuple[int, Point], bool] = {}

    def add_witness(q: Point):
        wi = len(witnesses)
        witnesses.append(q)
        for ci, gp in enumerate(cpoints):
            work.spend()
            key = (ci, q)
            ok = seen_cache.get(key)
            if ok is None:
                ok = poly.sees(gp, q)
                seen_cache[key] = ok
            if ok:
                masks[ci] |= 1 << wi

    for _ in range(10_000):
        chosen = _min_point_cover(masks, len(witnesses), work)
        gs = guard_set((candidates[ci] for ci in chosen), EXACT)
        vis = guard_visibilities(wv, gs) if chosen else []
        gaps = boundary_cover_check(poly, gs, vis) if chosen else \
            [(e, F0, F1) for e in range(poly.n)]
        if gaps:
            e, lo, hi = gaps[0]
            add_witness(poly.edge(e).point_at((lo + hi) / 2))
            continue
        if mode == BOUNDARY:
            return gs
        holes, touching = _unseen_components(wv, gs, vis)
        bad = holes + touching
        if not bad:
            return gs
        bad.sort(key=lambda h: (-h.region.area(), h.rep.x, h.rep.y))
        add_witness(bad[0].rep)
    raise InvariantViolation("cutting-plane loop failed to converge")


# ---------------------------------------------------------------------------
# fixture generation


def _frac_jitter(rng: random.Random, lo: int, hi: int, den: int = 4) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), den)


def generate_wv_polygon(seed: int, n: int, family: str) -> WVPolygon:
    """Deterministic weakly visible fixture of roughly n vertices."""
    if n < 3:
        raise GenerationFailed("n must be at least 3")
    rng = random.Random((seed, n, family).__repr__())
    if family == COMB:
        return _gen_comb(rng, n)
    if family == STAIRCASE:
        return _gen_staircase(rng, n)
    if family == SPIKES:
        return _gen_spikes(rng, n)
    if family == RANDOM_REJECTION:
        return _gen_random_monotone(rng, n)
    raise GenerationFailed("unknown family %r" % family)


def _gen_comb(rng: random.Random, n: int) -> WVPolygon:
    teeth = max(1, (n - 4) // 4)
    w = 3 * teeth + 1
    ring = [pt(0, 0), pt(w, 0), pt(w, 1)]
    for i in reversed(range(teeth)):
        a = Fraction(3 * i + 1) + Fraction(rng.randint(0, 2), 8)
        b = Fraction(3 * i + 2) + Fraction(rng.randint(0, 2), 8)
        h = 1 + _frac_jitter(rng, 1, 3)
        ring += [Point(b, F1), Point(b, h), Point(a, h), Point(a, F1)]
    ring.append(pt(0, 1))
    return edge_wv_from_points(ring)


def _gen_staircase(rng: random.Random, n: int) -> WVPolygon:
    steps = max(2, (n - 4) // 2)
    xs = sorted(rng.sample(range(1, 4 * steps), steps))
    heights = []
    h = Fraction(1)
    for _ in range(steps):
        h = h + _frac_jitter(rng, 1, 2)
        heights.append(h)
    w = 4 * steps + 1
    ring = [pt(0, 0), pt(w, 0), Point(Fraction(w), heights[-1])]
    for i in reversed(range(steps)):
        x = Fraction(xs[i])
        ring.append(Point(x, heights[i]))
        ring.append(Point(x, heights[i - 1] if i > 0 else Fraction(1)))
    ring.append(pt(0, 1))
    return edge_wv_from_points(ring)


def _gen_spikes(rng: random.Random, n: int) -> WVPolygon:
    spikes = max(1, (n - 4) // 3)
    for _ in range(60):
        w = 6 * spikes + 4
        h = 6
        ring = [pt(0, 0), pt(w, 0), pt(w, h)]
        ok_layout = True
        attach = []
        for i in reversed(range(spikes)):
            base = 6 * i + 3
            a = base + Fraction(rng.randint(-4, 4), 4)
            b = a + Fraction(rng.randint(2, 5), 4)
            tipx = (a + b) / 2 + Fraction(rng.randint(-10, 10), 4)
            tipy = Fraction(rng.randint(3, 12), 4)
            attach.append((a, b, tipx, tipy))
        attach.sort(key=lambda r: -r[0])
        prev = Fraction(w)
        for (a, b, tipx, tipy) in attach:
            if b >= prev or a <= 0:
                ok_layout = False
                break
            prev = a
            ring.append(Point(b, Fraction(h)))
            ring.append(Point(tipx, tipy))
            ring.append(Point(a, Fraction(h)))
        if not ok_layout:
            continue
        ring.append(pt(0, h))
        try:
            wv = edge_wv_from_points(ring)
        except Exception:
            continue
        ok, _ = is_weakly_visible(wv)
        if ok:
            return wv
    raise GenerationFailed("spike layout rejection budget exhausted")


def _gen_random_monotone(rng: random.Random, n: int) -> WVPolygon:
    chain = max(3, n - 2)
    for _ in range(20):
        w = 3 * chain
        xs = sorted(rng.sample(range(1, w), chain - 2))
        ring = [pt(0, 0), pt(w, 0)]
        heights = []
        for _i in range(chain - 2):
            if rng.random() < 0.18:
                heights.append(Fraction(rng.randint(1, 3), 4))  # a notch
            else:
                heights.append(Fraction(rng.randint(8, 24), 4))
        ring.append(Point(Fraction(w), Fraction(rng.randint(8, 24), 4)))
        for x, hh in zip(reversed(xs), reversed(heights)):
            ring.append(Point(Fraction(x), hh))
        ring.append(Point(F0, Fraction(rng.randint(8, 24), 4)))
        try:
            wv = edge_wv_from_points(ring)
        except Exception:
            continue
        ok, _ = is_weakly_visible(wv)
        if ok:
            return wv
    raise GenerationFailed("monotone rejection budget exhausted")


def generate_chord_polygon(seed: int, n: int) -> WVPolygon:
    """Chord-mode fixture: two monotone halves glued along the axis."""
    rng = random.Random(("chord", seed, n).__repr__())
    half = max(3, n // 2)
    w = 3 * half
    for _ in range(20):
        upper_xs = sorted(rng.sample(range(1, w), half - 2))
        lower_xs = sorted(rng.sample(range(1, w), half - 2))
        ring: List[Point] = [pt(0, 0)]
        # lower chain, left to right, below the axis
        ring.append(Point(F0 + 0, -Fraction(rng.randint(4, 16), 4)))
        for x in lower_xs:
            ring.append(Point(Fraction(x), -Fraction(rng.randint(2, 16), 4)))
        ring.append(Point(Fraction(w), -Fraction(rng.randint(4, 16), 4)))
        ring.append(pt(w, 0))
        # upper chain, right to left, above the axis
        ring.append(Point(Fraction(w), Fraction(rng.randint(4, 16), 4)))
        for x in reversed(upper_xs):
            ring.append(Point(Fraction(x), Fraction(rng.randint(2, 16), 4)))
        ring.append(Point(F0, Fraction(rng.randint(4, 16), 4)))
        try:
            poly = validate_simple(ring)
        except Exception:
            continue
        iu = poly.vertices.index(pt(0, 0))
        iv = poly.vertices.index(pt(w, 0))
        wv = normalize_chord(poly, (iu, F0), (iv, F0))
        ok, _ = is_weakly_visible(wv)
        if ok:
            return wv
    raise GenerationFailed("chord fixture rejection budget exhausted")


def dense_sample_check(wv: WVPolygon, gs: GuardSet, samples: int = 10_000,
                       vis: Optional[List[VisibilityPolygon]] = None) -> Optional[Point]:
    """First unseen sample point, or None; the cheap differential coverage
    test against the overlay-based extraction."""
    poly = wv.polygon
    if vis is None:
        vis = guard_visibilities(wv, gs)
    for q in poly.sample_points(samples):
        if not any(vp.contains_point(q) for vp in vis):
            return q
    return None
