"""Exact vertex-guard computation for polygons weakly visible from an edge
or chord: boundary guarding by set cover, interior completion via triangle
tasks over uv-anchored upper windows, and a full verification oracle."""

from .geometry import Point, Segment, Line, frac, orient, pt, segment_intersection
from .polygon import SimplePolygon, validate_simple
from .model import (
    WVPolygon,
    normalize,
    normalize_chord,
    is_weakly_visible,
    preprocess_concave_endpoints,
    split_at_chord,
)
from .visibility import (
    ConstructedEdge,
    Pocket,
    VisibilityPolygon,
    classify_kind,
    pocket_of,
    visibility_polygon,
    visibility_polygon_naive,
)
from .guards import GuardPos, GuardSet, guard_set, vertex_guard
from .boundary import boundary_witnesses, exact_cover, greedy_cover
from .completion import (
    CompletionResult,
    TriangleTask,
    collect_windows,
    complete_guards,
    complete_guards_chord,
    convex_region_guard,
    topmost_qualifying_intersection,
    triangle_guard_vertex,
)
from .oracle import (
    CoverageReport,
    Hole,
    brute_force_opt,
    extract_holes,
    generate_chord_polygon,
    generate_wv_polygon,
    verify_coverage,
)
from .pipeline import run_guard_pipeline

__version__ = "0.1.0"
