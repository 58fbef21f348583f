"""Boundary guarding via witness intervals and set cover.

The boundary is partitioned into atomic intervals on which the set of
candidate guards seeing a point is constant.  Breakpoints are read off the
candidates' visibility polygons (visibility along an edge changes exactly
where a window endpoint lands on it), so no geometric predicate is needed at
the witness midpoints.  Greedy cover gives the working guard set; an
exhaustive exact cover is available at small scale for ratio reporting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import LimitExceeded, UncoverableWitness
from .geometry import Point
from .guards import EXACT, GREEDY, GuardPos, GuardSet, guard_set, vertex_guard
from .polygon import SimplePolygon
from .visibility import VisibilityPolygon, visibility_polygon

F0 = Fraction(0)
F1 = Fraction(1)


@dataclass(frozen=True)
class BoundaryWitness:
    edge: int
    t0: Fraction
    t1: Fraction
    seen_by: FrozenSet[int]  # indices into the candidate list
    midpoint: Point


def candidate_visibility(poly: SimplePolygon, candidates: Sequence[GuardPos],
                         uv=None) -> List[VisibilityPolygon]:
    return [visibility_polygon(poly, g.point(poly), uv=uv, guard=g)
            for g in candidates]


def boundary_witnesses(poly: SimplePolygon, candidates: Sequence[GuardPos],
                       vis: Optional[List[VisibilityPolygon]] = None,
                       ) -> List[BoundaryWitness]:
    """Atomic boundary intervals with their constant seen-by sets.

    Interval endpoints need no witnesses of their own: each candidate's
    visibility region is closed, so a breakpoint is seen by every candidate
    that sees an adjacent open interval.
    """
    if vis is None:
        vis = candidate_visibility(poly, candidates)
    per_edge: Dict[int, List[Tuple[Fraction, Fraction, int]]] = {}
    for ci, vp in enumerate(vis):
        for e, ivs in vp.visible_intervals_by_edge().items():
            per_edge.setdefault(e, []).extend((lo, hi, ci) for lo, hi in ivs)

    out: List[BoundaryWitness] = []
    for e in range(poly.n):
        ivs = per_edge.get(e, [])
        cuts = {F0, F1}
        for lo, hi, _ in ivs:
            cuts.add(lo)
            cuts.add(hi)
        ts = sorted(cuts)
        seg = poly.edge(e)
        for t0, t1 in zip(ts, ts[1:]):
            if t0 == t1:
                continue
            seen = frozenset(ci for lo, hi, ci in ivs if lo <= t0 and t1 <= hi)
            out.append(BoundaryWitness(e, t0, t1, seen,
                                       seg.point_at((t0 + t1) / 2)))
    return out


def uncovered_witnesses(witnesses: Iterable[BoundaryWitness],
                        chosen: Iterable[int]) -> List[BoundaryWitness]:
    chosen = set(chosen)
    return [w for w in witnesses if not (w.seen_by & chosen)]


def greedy_cover(witnesses: Sequence[BoundaryWitness],
                 candidates: Sequence[GuardPos]) -> GuardSet:
    """Classic greedy set cover over the atomic witnesses.

    Ties break toward the lowest candidate index, so runs are deterministic.
    """
    remaining = set(range(len(witnesses)))
    for wi in remaining:
        if not witnesses[wi].seen_by:
            raise UncoverableWitness(
                "witness on edge %d at (%s,%s) seen by no candidate"
                % (witnesses[wi].edge, witnesses[wi].t0, witnesses[wi].t1))
    cover_of: List[set] = [set() for _ in candidates]
    for wi, w in enumerate(witnesses):
        for ci in w.seen_by:
            cover_of[ci].add(wi)
    chosen: List[int] = []
    while remaining:
        best = max(range(len(candidates)),
                   key=lambda ci: (len(cover_of[ci] & remaining), -ci))
        gain = cover_of[best] & remaining
        if not gain:
            raise UncoverableWitness("greedy stalled with witnesses uncovered")
        chosen.append(best)
        remaining -= gain
    return guard_set((candidates[ci] for ci in chosen), GREEDY)


def exact_cover(witnesses: Sequence[BoundaryWitness],
                candidates: Sequence[GuardPos], limit: int) -> GuardSet:
    """Minimum-cardinality cover by increasing-size exhaustive search.

    Dominated candidates are pruned first; raises LimitExceeded when no
    cover of size <= limit exists.
    """
    masks: List[int] = [0] * len(candidates)
    for wi, w in enumerate(witnesses):
        if not w.seen_by:
            raise UncoverableWitness("witness seen by no candidate")
        for ci in w.seen_by:
            masks[ci] |= 1 << wi
    full = (1 << len(witnesses)) - 1
    # prune dominated candidates (keep the lowest index among equals)
    keep: List[int] = []
    for ci, m in enumerate(masks):
        dominated = any(
            (m | masks[cj] == masks[cj]) and (masks[cj] != m or cj < ci)
            for cj in range(len(candidates)) if cj != ci)
        if not dominated and m:
            keep.append(ci)
    if full == 0:
        return guard_set((), EXACT)
    for k in range(1, limit + 1):
        for combo in combinations(keep, k):
            acc = 0
            for ci in combo:
                acc |= masks[ci]
            if acc == full:
                return guard_set((candidates[ci] for ci in combo), EXACT)
    raise LimitExceeded("no cover of size <= %d" % limit)


def all_vertex_candidates(poly: SimplePolygon) -> List[GuardPos]:
    return [vertex_guard(i) for i in range(poly.n)]


def boundary_cover_check(poly: SimplePolygon, gs: GuardSet,
                         vis: Optional[List[VisibilityPolygon]] = None,
                         ) -> List[Tuple[int, Fraction, Fraction]]:
    """Exact boundary-coverage check; returns the uncovered intervals."""
    if vis is None:
        vis = candidate_visibility(poly, list(gs))
    per_edge: Dict[int, List[Tuple[Fraction, Fraction]]] = {}
    for vp in vis:
        for e, ivs in vp.visible_intervals_by_edge().items():
            per_edge.setdefault(e, []).extend(ivs)
    holes: List[Tuple[int, Fraction, Fraction]] = []
    for e in range(poly.n):
        merged = sorted(per_edge.get(e, []))
        cur = F0
        for lo, hi in merged:
            if lo > cur:
                holes.append((e, cur, lo))
            cur = max(cur, hi)
        if cur < F1:
            holes.append((e, cur, F1))
    return holes
