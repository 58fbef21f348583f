"""SVG rendering of polygons, guards, visibility structure and holes.

Coordinates are decimal approximations for display only; files are write-only
diagnostics and never parsed back.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from .geometry import Point
from .guards import GuardSet
from .model import WVPolygon
from .oracle import CoverageReport, guard_visibilities
from .visibility import VisibilityPolygon

_VIS_FILLS = ["#9ecae1", "#a1d99b", "#fdae6b", "#bcbddc", "#fdd0a2", "#c7e9c0"]


def _f(x: Fraction) -> str:
    return "%.4f" % float(x)


def _path(points: Sequence[Point], close=True) -> str:
    parts = ["M %s %s" % (_f(points[0].x), _f(points[0].y))]
    for p in points[1:]:
        parts.append("L %s %s" % (_f(p.x), _f(p.y)))
    if close:
        parts.append("Z")
    return " ".join(parts)


def render_svg(wv: WVPolygon, guards: Optional[GuardSet] = None,
               show: Iterable[str] = (), coverage: Optional[CoverageReport] = None,
               triangles: Optional[Sequence] = None, width: int = 800) -> str:
    """Render the working polygon with optional layers.

    show: any of 'vis', 'windows', 'pockets', 'holes', 'triangles'.
    """
    show = set(show)
    poly = wv.polygon
    xs = [v.x for v in poly.vertices]
    ys = [v.y for v in poly.vertices]
    minx, maxx = min(xs), max(xs)
    miny, maxy = min(ys), max(ys)
    pad = max(maxx - minx, maxy - miny) / 20 or Fraction(1)
    vb = (float(minx - pad), float(miny - pad),
          float(maxx - minx + 2 * pad), float(maxy - miny + 2 * pad))
    height = int(width * vb[3] / vb[2]) or width

    out: List[str] = []
    out.append('<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
               'viewBox="%.4f %.4f %.4f %.4f">' % (width, height, *vb))
    # flip y so the axis points up
    out.append('<g transform="translate(0 %.4f) scale(1 -1)">' % (vb[1] * 2 + vb[3]))
    out.append('<path d="%s" fill="#f7f7f7" stroke="black" stroke-width="%.4f"/>'
               % (_path(poly.vertices), vb[2] / 400))

    vis = None
    if guards is not None and (show & {"vis", "windows", "pockets", "holes"}):
        vis = guard_visibilities(wv, guards)

    sw = vb[2] / 400
    if vis is not None and "vis" in show:
        for i, vp in enumerate(vis):
            out.append('<path d="%s" fill="%s" fill-opacity="0.35" stroke="none"/>'
                       % (_path(vp.points), _VIS_FILLS[i % len(_VIS_FILLS)]))
    if vis is not None and "pockets" in show:
        from .visibility import pocket_of
        for vp in vis:
            for w in vp.windows:
                pk = pocket_of(vp, w)
                out.append('<path d="%s" fill="#de2d26" fill-opacity="0.15" '
                           'stroke="none"/>' % _path(pk.region.vertices))
    if vis is not None and "windows" in show:
        for vp in vis:
            for w in vp.windows:
                out.append('<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="#636363" '
                           'stroke-width="%.4f" stroke-dasharray="%.4f %.4f"/>'
                           % (_f(w.x.x), _f(w.x.y), _f(w.y_pt.x), _f(w.y_pt.y),
                              sw, 4 * sw, 3 * sw))
    if coverage is not None and "holes" in show:
        for h in coverage.holes + coverage.boundary_touching:
            out.append('<path d="%s" fill="#de2d26" fill-opacity="0.5" '
                       'stroke="#a50f15" stroke-width="%.4f"/>'
                       % (_path(h.region.vertices), sw))
    if triangles and "triangles" in show:
        for t in triangles:
            out.append('<path d="%s" fill="none" stroke="#31a354" '
                       'stroke-width="%.4f"/>' % (_path(list(t.triangle)), 2 * sw))
    # the weak-visibility segment
    out.append('<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="#3182bd" '
               'stroke-width="%.4f"/>' % (_f(wv.u.x), _f(wv.u.y),
                                          _f(wv.v.x), _f(wv.v.y), 2 * sw))
    if guards is not None:
        for g in guards:
            q = g.point(poly)
            out.append('<circle cx="%s" cy="%s" r="%.4f" fill="#e6550d" '
                       'stroke="black" stroke-width="%.4f"/>'
                       % (_f(q.x), _f(q.y), 3 * sw, sw / 2))
    out.append("</g></svg>")
    return "\n".join(out) + "\n"
