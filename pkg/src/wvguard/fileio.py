"""Plain-text polygon and guard files.

Geometry stays textual rationals (`p/q`, integers allowed) so files
round-trip bit-exactly; JSON never carries coordinates.

Polygon file::

    wvpolygon v1
    edge u=<i> v=<j>          # or: chord e1=<i> t1=<p/q> e2=<k> t2=<r/s>
    <x> <y>                   # one vertex per line, '#' starts a comment

Guard file: one guard per line, ``vertex <i>`` or ``boundary <edge> <t>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import ParseError
from .geometry import Point, frac
from .guards import GuardPos, GuardSet, guard_set

HEADER = "wvpolygon v1"


@dataclass(frozen=True)
class PolygonSpec:
    points: Tuple[Point, ...]
    mode: str                      # "edge" | "chord"
    u_index: Optional[int] = None
    v_index: Optional[int] = None
    chord: Optional[Tuple[Tuple[int, Fraction], Tuple[int, Fraction]]] = None


def _strip(line: str) -> str:
    if "#" in line:
        line = line[: line.index("#")]
    return line.strip()


def _rat(tok: str, what: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as ex:
        raise ParseError("bad %s %r: %s" % (what, tok, ex))


def parse_polygon_file(text: str) -> PolygonSpec:
    lines = [s for s in (_strip(l) for l in text.splitlines()) if s]
    if not lines:
        raise ParseError("empty polygon file")
    if lines[0] != HEADER:
        raise ParseError("expected header %r, got %r" % (HEADER, lines[0]))
    if len(lines) < 2:
        raise ParseError("missing mode line")
    mode_line = lines[1].split()
    points: List[Point] = []
    for ln in lines[2:]:
        toks = ln.split()
        if len(toks) != 2:
            raise ParseError("vertex line needs two rationals: %r" % ln)
        points.append(Point(_rat(toks[0], "x"), _rat(toks[1], "y")))

    kv = {}
    for tok in mode_line[1:]:
        if "=" not in tok:
            raise ParseError("bad mode token %r" % tok)
        k, v = tok.split("=", 1)
        kv[k] = v
    if mode_line[0] == "edge":
        for need in ("u", "v"):
            if need not in kv:
                raise ParseError("edge mode needs %s=<i>" % need)
        try:
            ui, vi = int(kv["u"]), int(kv["v"])
        except ValueError:
            raise ParseError("edge indices must be integers")
        return PolygonSpec(tuple(points), "edge", u_index=ui, v_index=vi)
    if mode_line[0] == "chord":
        for need in ("e1", "t1", "e2", "t2"):
            if need not in kv:
                raise ParseError("chord mode needs e1,t1,e2,t2")
        try:
            e1, e2 = int(kv["e1"]), int(kv["e2"])
        except ValueError:
            raise ParseError("chord edge indices must be integers")
        t1 = _rat(kv["t1"], "t1")
        t2 = _rat(kv["t2"], "t2")
        return PolygonSpec(tuple(points), "chord", chord=((e1, t1), (e2, t2)))
    raise ParseError("unknown mode %r" % mode_line[0])


def _fmt(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def write_polygon_file(spec: PolygonSpec) -> str:
    out = [HEADER]
    if spec.mode == "edge":
        out.append("edge u=%d v=%d" % (spec.u_index, spec.v_index))
    else:
        (e1, t1), (e2, t2) = spec.chord
        out.append("chord e1=%d t1=%s e2=%d t2=%s" % (e1, _fmt(t1), e2, _fmt(t2)))
    for p in spec.points:
        out.append("%s %s" % (_fmt(p.x), _fmt(p.y)))
    return "\n".join(out) + "\n"


def parse_guard_file(text: str) -> GuardSet:
    guards: List[GuardPos] = []
    for ln in (_strip(l) for l in text.splitlines()):
        if not ln:
            continue
        toks = ln.split()
        if toks[0] == "vertex" and len(toks) == 2:
            try:
                guards.append(GuardPos(int(toks[1]), Fraction(0)))
            except ValueError:
                raise ParseError("bad vertex index %r" % toks[1])
        elif toks[0] == "boundary" and len(toks) == 3:
            try:
                edge = int(toks[1])
            except ValueError:
                raise ParseError("bad edge index %r" % toks[1])
            t = _rat(toks[2], "parameter")
            if not (0 <= t < 1):
                raise ParseError("boundary parameter %s outside [0,1)" % t)
            guards.append(GuardPos(edge, t))
        else:
            raise ParseError("bad guard line %r" % ln)
    return guard_set(guards, "user_supplied")


format_rational = _fmt


def write_guard_file(gs: GuardSet) -> str:
    out = []
    for g in gs:
        if g.t == 0:
            out.append("vertex %d" % g.edge)
        else:
            out.append("boundary %d %s" % (g.edge, _fmt(g.t)))
    return "\n".join(out) + ("\n" if out else "")
