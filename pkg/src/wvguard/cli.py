"""Command-line interface.

Exit codes: 0 ok, 1 domain failure (not simple / not weakly visible / not
guarded), 2 usage or parse error.  WVGUARD_BUDGET caps the brute-force
oracles.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import fileio
from .errors import ParseError, WvgError
from .fileio import (
    PolygonSpec,
    parse_guard_file,
    parse_polygon_file,
    write_guard_file,
    write_polygon_file,
)
from .guards import GuardSet, guard_set
from .oracle import (
    BOUNDARY,
    FAMILIES,
    FULL,
    brute_force_opt,
    generate_wv_polygon,
    verify_coverage,
)
from .pipeline import build_wv, check_polygon, map_user_guards, run_guard_pipeline
from .svg import render_svg

OK, DOMAIN_FAIL, USAGE_FAIL = 0, 1, 2


def _read_spec(path: str) -> PolygonSpec:
    return parse_polygon_file(Path(path).read_text())


def _emit(data, args):
    text = json.dumps(data, indent=2, sort_keys=True)
    print(text)


def cmd_check(args) -> int:
    spec = _read_spec(args.polygon)
    out = check_polygon(spec)
    _emit(out, args)
    return OK if out["weakly_visible"] else DOMAIN_FAIL


def cmd_guard(args) -> int:
    spec = _read_spec(args.polygon)
    if args.chord and spec.mode != "chord":
        print("error: --chord given but the file is edge-mode", file=sys.stderr)
        return USAGE_FAIL
    user = None
    if args.phase1 == "file":
        if not args.guards_file:
            print("error: --phase1 file needs --guards-file", file=sys.stderr)
            return USAGE_FAIL
        user = parse_guard_file(Path(args.guards_file).read_text())
    res = run_guard_pipeline(spec, phase1=args.phase1, user_guards=user)

    lines = []
    for kind, val in res.guards_in_file_frame():
        if kind == "vertex":
            lines.append("vertex %d" % val)
        else:
            e, t = val
            lines.append("boundary %d %s" % (e, fileio.format_rational(t)))
    guard_text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(guard_text)
    else:
        sys.stdout.write(guard_text)

    stats = {
        "mode": res.wv.mode,
        "phase1_guards": len(res.phase1),
        "forced_guards": len(res.forced),
        "added_guards": len(res.completion.added_guards),
        "total_guards": len(res.final_guards),
        "windows": len(res.completion.windows),
        "windows_on_uv": len(res.completion.windows_on_uv),
        "triangle_tasks": len(res.completion.tasks),
        "holes_after": len(res.coverage.holes),
        "fully_guarded": res.coverage.fully_guarded,
    }
    if not args.deterministic:
        stats["timings"] = {k: round(v, 4) for k, v in res.timings.items()}
    if args.eps_report:
        try:
            opt_full = brute_force_opt(res.wv, FULL)
            stats["opt_full"] = len(opt_full)
            stats["achieved_ratio"] = round(len(res.final_guards) / len(opt_full), 4)
        except WvgError as ex:
            stats["opt_full_error"] = str(ex)
    if args.stats:
        Path(args.stats).write_text(json.dumps(stats, indent=2, sort_keys=True) + "\n")
    else:
        print(json.dumps(stats, indent=2, sort_keys=True), file=sys.stderr)
    return OK if res.coverage.fully_guarded else DOMAIN_FAIL


def cmd_verify(args) -> int:
    spec = _read_spec(args.polygon)
    gs = parse_guard_file(Path(args.guards).read_text())
    wv, original, file_index = build_wv(spec)
    mapped = map_user_guards(wv, original, file_index, gs)
    rep = verify_coverage(wv, mapped)
    out = {
        "fully_guarded": rep.fully_guarded,
        "holes": [
            [{"x": str(q.x), "y": str(q.y)} for q in h.region.vertices]
            for h in rep.holes
        ],
        "uncovered_boundary": [
            {"edge": e, "t0": str(t0), "t1": str(t1)}
            for (e, t0, t1) in rep.uncovered_boundary
        ],
        "boundary_touching_unseen_regions": len(rep.boundary_touching),
        "stats": rep.stats,
    }
    _emit(out, args)
    return OK if rep.fully_guarded else DOMAIN_FAIL


def cmd_render(args) -> int:
    spec = _read_spec(args.polygon)
    wv, original, file_index = build_wv(spec)
    gs = None
    coverage = None
    if args.guards:
        gs = map_user_guards(wv, original, file_index,
                             parse_guard_file(Path(args.guards).read_text()))
        if "holes" in (args.show or []):
            coverage = verify_coverage(wv, gs)
    svg = render_svg(wv, guards=gs, show=args.show or [], coverage=coverage)
    if args.output:
        Path(args.output).write_text(svg)
    else:
        sys.stdout.write(svg)
    return OK


def cmd_generate(args) -> int:
    wv = generate_wv_polygon(args.seed, args.n, args.family)
    spec = PolygonSpec(points=tuple(wv.polygon.vertices), mode="edge",
                       u_index=0, v_index=1)
    text = write_polygon_file(spec)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return OK


def _batch_one(path: str):
    try:
        spec = parse_polygon_file(Path(path).read_text())
        res = run_guard_pipeline(spec)
        return {
            "file": path,
            "ok": bool(res.coverage.fully_guarded),
            "guards": len(res.final_guards),
            "added": len(res.completion.added_guards),
        }
    except WvgError as ex:
        return {"file": path, "ok": False, "error": str(ex)}


def cmd_batch(args) -> int:
    paths = sorted(str(p) for p in Path(args.directory).glob(args.glob))
    if not paths:
        print("error: no polygon files match", file=sys.stderr)
        return USAGE_FAIL
    if args.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_batch_one, paths))
    else:
        results = [_batch_one(p) for p in paths]
    for r in results:
        print(json.dumps(r, sort_keys=True))
    return OK if all(r.get("ok") for r in results) else DOMAIN_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="wvguard",
        description="Vertex guard sets for polygons weakly visible from an "
                    "edge or chord, with exact verification.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a polygon file and test weak visibility")
    p.add_argument("polygon")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("guard", help="compute a guard set (phase 1 + completion)")
    p.add_argument("polygon")
    p.add_argument("--phase1", choices=["greedy", "exact", "file"], default="greedy")
    p.add_argument("--guards-file", help="phase-1 guards when --phase1 file")
    p.add_argument("--output", "-o", help="write the guard file here")
    p.add_argument("--stats", help="write JSON stats here")
    p.add_argument("--eps-report", action="store_true",
                   help="also compute the brute-force optimum and the achieved ratio")
    p.add_argument("--chord", action="store_true",
                   help="require the input to be chord-mode")
    p.add_argument("--deterministic", action="store_true",
                   help="omit timings so identical inputs give identical output")
    p.set_defaults(fn=cmd_guard)

    p = sub.add_parser("verify", help="verify a guard set covers the polygon")
    p.add_argument("polygon")
    p.add_argument("guards")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("render", help="render an SVG diagnostic")
    p.add_argument("polygon")
    p.add_argument("guards", nargs="?")
    p.add_argument("--show", action="append",
                   choices=["vis", "windows", "pockets", "holes", "triangles"])
    p.add_argument("--output", "-o")
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("generate", help="generate a weakly visible fixture")
    p.add_argument("family", choices=list(FAMILIES))
    p.add_argument("n", type=int)
    p.add_argument("seed", type=int)
    p.add_argument("--output", "-o")
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("batch", help="run the guard pipeline over a directory")
    p.add_argument("directory")
    p.add_argument("--glob", default="*.wvp")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.set_defaults(fn=cmd_batch)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as ex:
        return USAGE_FAIL if ex.code not in (0, None) else OK
    try:
        return args.fn(args)
    except ParseError as ex:
        print("parse error: %s" % ex, file=sys.stderr)
        return USAGE_FAIL
    except FileNotFoundError as ex:
        print("error: %s" % ex, file=sys.stderr)
        return USAGE_FAIL
    except WvgError as ex:
        print("error: %s" % ex, file=sys.stderr)
        return DOMAIN_FAIL


if __name__ == "__main__":
    sys.exit(main())
