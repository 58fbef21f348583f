"""End-to-end guard computation: parse, normalize, preprocess, phase 1,
interior completion, verification, and mapping results back to the input
polygon's frame and vertex numbering."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .boundary import (
    all_vertex_candidates,
    boundary_witnesses,
    exact_cover,
    greedy_cover,
)
from .completion import CompletionResult, complete_guards, complete_guards_chord
from .errors import InvalidGuard, WvgError
from .fileio import PolygonSpec
from .geometry import Point
from .guards import FORCED, GuardPos, GuardSet, guard_at_point, guard_set
from .model import (
    CHORD,
    EDGE,
    PreprocessReport,
    WVPolygon,
    is_weakly_visible,
    normalize,
    normalize_chord,
    preprocess_concave_endpoints,
)
from .oracle import CoverageReport, verify_coverage
from .polygon import SimplePolygon, validate_simple


@dataclass
class PipelineResult:
    wv: WVPolygon                       # working polygon (canonical frame)
    original: SimplePolygon             # validated input polygon
    file_index_of: List[int]            # validated vertex -> file vertex index
    preprocess: Optional[PreprocessReport]
    phase1: GuardSet                    # phase-1 guards (working frame)
    forced: GuardSet                    # forced endpoint guards
    completion: CompletionResult
    coverage: CoverageReport
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def final_guards(self) -> GuardSet:
        return self.completion.combined.union(self.forced)

    def guards_in_file_frame(self) -> List[Tuple[str, object]]:
        """Final guards as ('vertex', file index) or ('boundary', (edge, t))
        on the input polygon."""
        out = []
        poly = self.original
        for g in self.final_guards:
            q = self.wv.to_original(g.point(self.wv.polygon))
            pos = poly.locate_boundary_point(q)
            if pos is None:
                raise InvalidGuard("guard %r maps off the input boundary" % (g,))
            if pos.t == 0:
                out.append(("vertex", self.file_index_of[pos.edge]))
            else:
                fe = self.file_index_of[pos.edge]
                fe_next = self.file_index_of[(pos.edge + 1) % poly.n]
                t = pos.t
                if (fe + 1) % poly.n != fe_next:
                    # ring was reversed relative to the file: re-anchor on the
                    # file edge fe_next -> fe
                    fe, t = fe_next, 1 - t
                out.append(("boundary", (fe, t)))
        out.sort(key=lambda r: (r[0], r[1] if r[0] == "vertex" else r[1][0]))
        return out


def build_wv(spec: PolygonSpec) -> Tuple[WVPolygon, SimplePolygon, List[int]]:
    poly = validate_simple(list(spec.points))
    n = poly.n
    if tuple(spec.points) == poly.vertices:
        file_index = list(range(n))
    else:
        file_index = [spec.points.index(v) for v in poly.vertices]
    if spec.mode == EDGE:
        iu = spec.points[spec.u_index % n]
        iv = spec.points[spec.v_index % n]
        wv = normalize(poly, poly.vertices.index(iu), poly.vertices.index(iv))
    else:
        (e1, t1), (e2, t2) = spec.chord
        # chord endpoints are given on the FILE edge numbering; map to the
        # validated ring
        c1 = _file_edge_point(spec.points, e1, t1)
        c2 = _file_edge_point(spec.points, e2, t2)
        p1 = poly.locate_boundary_point(c1)
        p2 = poly.locate_boundary_point(c2)
        if p1 is None or p2 is None:
            raise InvalidGuard("chord endpoint not on the boundary")
        wv = normalize_chord(poly, (p1.edge, p1.t), (p2.edge, p2.t))
    return wv, poly, file_index


def _file_edge_point(points, e, t):
    n = len(points)
    a = points[e % n]
    b = points[(e + 1) % n]
    return Point(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)


def map_user_guards(wv: WVPolygon, original: SimplePolygon,
                    file_index_of: List[int], gs: GuardSet) -> GuardSet:
    """User guards reference the input file's numbering; locate them on the
    working polygon by exact position."""
    file_to_validated = {fi: vi for vi, fi in enumerate(file_index_of)}
    out = []
    for g in gs:
        if g.t == 0:
            vi = file_to_validated.get(g.edge % original.n)
            if vi is None:
                raise InvalidGuard("vertex %d not found" % g.edge)
            q = original.vertices[vi]
        else:
            vi = file_to_validated[g.edge % original.n]
            vj = file_to_validated[(g.edge + 1) % original.n]
            a, b = original.vertices[vi], original.vertices[vj]
            q = Point(a.x + (b.x - a.x) * g.t, a.y + (b.y - a.y) * g.t)
        qn = wv.from_original(q)
        pos = wv.polygon.locate_boundary_point(qn)
        if pos is None:
            raise InvalidGuard(
                "guard %r lies on a boundary portion removed by preprocessing" % (g,))
        out.append(GuardPos(pos.edge, pos.t))
    return guard_set(out, gs.provenance)


def run_guard_pipeline(spec: PolygonSpec, phase1: str = "greedy",
                       user_guards: Optional[GuardSet] = None,
                       exact_limit: int = 12) -> PipelineResult:
    timings: Dict[str, float] = {}
    t0 = time.perf_counter()
    wv, original, file_index = build_wv(spec)
    report = None
    forced = guard_set((), FORCED)
    if wv.mode == EDGE:
        wv, report = preprocess_concave_endpoints(wv)
        if report.changed:
            forced_list = []
            for q in report.forced_guards:
                forced_list.append(guard_at_point(wv.polygon, q))
            forced = guard_set(forced_list, FORCED)
    timings["normalize_s"] = time.perf_counter() - t0

    t1 = time.perf_counter()
    if user_guards is not None:
        g1 = map_user_guards(wv, original, file_index, user_guards)
    else:
        cands = all_vertex_candidates(wv.polygon)
        ws = boundary_witnesses(wv.polygon, cands)
        if phase1 == "exact":
            greedy = greedy_cover(ws, cands)
            g1 = exact_cover(ws, cands, min(len(greedy), exact_limit))
        else:
            g1 = greedy_cover(ws, cands)
    timings["phase1_s"] = time.perf_counter() - t1

    base = g1.union(forced) if len(forced) else g1
    t2 = time.perf_counter()
    if wv.mode == CHORD:
        comp = complete_guards_chord(wv, base)
    else:
        comp = complete_guards(wv, base)
    timings["phase2_s"] = time.perf_counter() - t2

    t3 = time.perf_counter()
    cov = verify_coverage(wv, comp.combined)
    timings["verify_s"] = time.perf_counter() - t3

    return PipelineResult(wv=wv, original=original, file_index_of=file_index,
                          preprocess=report, phase1=g1, forced=forced,
                          completion=comp, coverage=cov, timings=timings)


def check_polygon(spec: PolygonSpec) -> Dict[str, object]:
    """The `check` command: simplicity, weak visibility, preprocessing need."""
    wv, original, _ = build_wv(spec)
    out: Dict[str, object] = {
        "simple": True,
        "vertices": original.n,
        "mode": wv.mode,
    }
    needs_pre = wv.mode == EDGE and not wv.is_canonical()
    pre_forced = []
    if wv.mode == EDGE:
        wv2, rep = preprocess_concave_endpoints(wv)
        needs_pre = rep.changed
        pre_forced = ["u" if q == wv.u else "v" for q in rep.forced_guards]
        wv_for_test = wv2
    else:
        wv_for_test = wv
    ok, witness = is_weakly_visible(wv_for_test)
    out["weakly_visible"] = ok
    if witness is not None:
        w0 = wv_for_test.to_original(witness)
        out["witness"] = {"x": str(w0.x), "y": str(w0.y)}
    out["preprocessing_needed"] = needs_pre
    out["forced_guards"] = pre_forced
    return out
