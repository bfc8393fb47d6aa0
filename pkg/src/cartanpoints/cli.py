"""Command-line front end.

Subcommands: enumerate, verify, bounds, orbit, translate, render, reduce,
stream, mordell-count.  Output goes to stdout as JSON (default) or CSV;
`render` also supports ASCII.  Exit codes: 0 success, 1 verification
failure, 2 usage error.  Set CARTAN_POINTS_CACHE to a directory to reuse
enumerated point sets across invocations.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import bounds as bounds_mod
from . import closed_forms, reduction, search, streams
from .cartan import (
    ACCEPTANCE_TYPES,
    DynkinType,
    GcmError,
    dynkin_matrix,
    matrix_from_json,
)
from .frieze import (
    FriezeError,
    frieze_grid,
    grid_to_json,
    make_point,
    orbit,
    point_from_json,
    point_to_json,
    render_ascii,
    translate,
)

__all__ = ["main", "run"]


def _matrix_from_args(args):
    if getattr(args, "type", None):
        return dynkin_matrix(DynkinType.parse(args.type))
    if getattr(args, "matrix", None):
        return matrix_from_json(json.loads(args.matrix))
    raise SystemExit2("one of --type or --matrix is required")


class SystemExit2(Exception):
    """Usage error carried to the exit-code boundary."""


def _point_from_args(args, C):
    coords = json.loads(args.point)
    if not isinstance(coords, list) or len(coords) != 2 * C.n:
        raise SystemExit2(f"--point must be a JSON list of {2 * C.n} integers")
    coords = [int(v) for v in coords]
    return make_point(C, coords[: C.n], coords[C.n :])


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _load_points_file(path, C):
    pts = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            rec = json.loads(line)
            if rec.get("record") == "count_report":
                continue
            pts.append(point_from_json(rec))
    for p in pts:
        if p.matrix != C:
            raise SystemExit2(f"point file {path} does not match the requested type")
    return pts


# ---------------------------------------------------------------------------
# enumerate


def _cache_path(C, min_entry, restricted):
    root = os.environ.get("CARTAN_POINTS_CACHE")
    if not root:
        return None
    payload = json.dumps(
        {"entries": [list(r) for r in C.entries], "min_entry": min_entry, "restricted": restricted},
        sort_keys=True,
    )
    key = hashlib.sha256(payload.encode()).hexdigest()[:24]
    os.makedirs(root, exist_ok=True)
    return os.path.join(root, f"points-{key}.jsonl")


def cmd_enumerate(args) -> int:
    C = _matrix_from_args(args)
    cache = _cache_path(C, args.min_entry, args.restricted_orbit)
    if cache and os.path.exists(cache) and not args.checkpoint:
        pts = _load_points_file(cache, C)
        report = None
    else:
        config = search.SearchConfig(
            matrix=C,
            min_entry=2 if args.restricted_orbit else args.min_entry,
            restricted_orbit=args.restricted_orbit,
            workers=args.workers,
            checkpoint_path=args.checkpoint,
            node_budget=args.budget,
            resume=args.resume,
            pivot=None if args.no_pivot else "auto",
        )
        try:
            pts, report = search.enumerate_points(config)
        except search.BudgetExhausted as exc:
            _emit({"record": "budget_exhausted", "checkpoint": exc.checkpoint_path})
            return 1
        if cache:
            search.write_points_file(cache, pts, report)
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        if args.format == "csv":
            n = C.n
            header = [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)]
            out.write(",".join(header) + "\n")
            for p in pts:
                out.write(",".join(str(v) for v in p.coordinates()) + "\n")
        else:
            for p in pts:
                out.write(json.dumps(point_to_json(p), sort_keys=True) + "\n")
            rec = {"record": "count_report", "total": len(pts)}
            if report is not None:
                rec.update(
                    orbit_count=report.orbit_count,
                    nodes=report.nodes,
                    elapsed=round(report.elapsed, 3),
                    max_coordinate=str(report.max_coordinate),
                )
            out.write(json.dumps(rec, sort_keys=True) + "\n")
    finally:
        if args.out:
            out.close()
    return 0


def cmd_verify(args) -> int:
    if args.suite != "table1":
        raise SystemExit2(f"unknown suite {args.suite!r}")
    rows = []
    ok = True
    for t in ACCEPTANCE_TYPES:
        if t.family in "ABCD" and t.rank > args.max_rank:
            continue
        pts, report = search.enumerate_points(
            search.SearchConfig(dynkin_matrix(t), workers=args.workers)
        )
        want = closed_forms.expected_count(t)
        match = len(pts) == want
        ok &= match
        rows.append(
            {
                "type": str(t),
                "expected": want,
                "found": len(pts),
                "orbits": report.orbit_count,
                "max_coordinate": str(report.max_coordinate),
                "pass": match,
            }
        )
    _emit({"suite": "table1", "rows": rows, "pass": ok})
    return 0 if ok else 1


def cmd_bounds(args) -> int:
    t = DynkinType.parse(args.type)
    _emit(bounds_mod.bounds_report(t))
    return 0


def cmd_orbit(args) -> int:
    C = _matrix_from_args(args)
    p = _point_from_args(args, C)
    for q in orbit(p):
        _emit(point_to_json(q))
    return 0


def cmd_translate(args) -> int:
    C = _matrix_from_args(args)
    p = _point_from_args(args, C)
    _emit(point_to_json(translate(p)))
    return 0


def cmd_render(args) -> int:
    C = _matrix_from_args(args)
    p = _point_from_args(args, C)
    grid = frieze_grid(p)
    if args.format == "ascii":
        sys.stdout.write(render_ascii(grid) + "\n")
    else:
        _emit(grid_to_json(grid))
    return 0


def cmd_reduce(args) -> int:
    big = dynkin_matrix(DynkinType.parse(args.from_type))
    variant = {"x": "set_x", "y": "set_y"}[args.variant]
    small, _ = reduction.delete_node(big, args.node)
    out_pts = []
    if args.mode == "slice":
        pts = _load_points_file(args.points, big)
        for p in reduction.slice_points(pts, args.node, variant):
            out_pts.append(reduction.project_point(big, args.node, p))
    else:
        pts = _load_points_file(args.points, small)
        out_pts = [reduction.lift_point(big, args.node, p, variant) for p in pts]
    out_pts = search.canonical_points(out_pts[0].matrix, [(p.x, p.y) for p in out_pts]) if out_pts else ()
    stream = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        for p in out_pts:
            stream.write(json.dumps(point_to_json(p), sort_keys=True) + "\n")
        stream.write(json.dumps({"record": "count_report", "total": len(out_pts)}) + "\n")
    finally:
        if args.out:
            stream.close()
    return 0


def cmd_stream(args) -> int:
    if (args.c is None) != (args.d is None):
        raise SystemExit2("--c and --d must be given together")
    if args.c is not None:
        pts = streams.stream3(args.a, args.b, args.c, args.d, args.take)
        for i, p in enumerate(pts, 1):
            rec = {"k": i, "x": [str(v) for v in p.x], "y": [str(v) for v in p.y]}
            if args.surface:
                rec["solution"] = [
                    str(v) for v in streams.to_surface3(p, args.a, args.b, args.c, args.d)
                ]
            _emit(rec)
        return 0
    for item in streams.stream2(args.a, args.b, args.take):
        rec = {
            "k": item.index,
            "phase": item.phase,
            "x": [str(v) for v in item.point.x],
            "y": [str(v) for v in item.point.y],
        }
        if args.surface:
            rec["solution"] = [str(v) for v in item.triple]
        _emit(rec)
    return 0


def cmd_mordell_count(args) -> int:
    if (args.c is None) != (args.d is None):
        raise SystemExit2("--c and --d must be given together")
    if args.c is None:
        C = streams.rank2_matrix(args.a, args.b)
        pts, _ = search.enumerate_points(search.SearchConfig(C))
        images = {streams.to_surface2(p, args.a, args.b) for p in pts}
        brute = streams.brute_force_surface2(args.a, args.b)
        rec = {
            "a": args.a,
            "b": args.b,
            "system_points": len(pts),
            "surface_images": len(images),
            "brute_force": brute,
            "equal": len(pts) == len(images) == brute,
        }
        _emit(rec)
        return 0 if rec["equal"] else 1
    C = streams.rank3_matrix(args.a, args.b, args.c, args.d)
    pts, _ = search.enumerate_points(search.SearchConfig(C))
    images = {streams.to_surface3(p, args.a, args.b, args.c, args.d) for p in pts}
    count = streams.brute_force_surface3(args.a, args.b, args.c, args.d)
    rec = {
        "a": args.a,
        "b": args.b,
        "c": args.c,
        "d": args.d,
        "system_points": len(pts),
        "surface_images": len(images),
        "brute_force_liftable": count.liftable,
        "brute_force_raw": count.raw,
        "equal": len(pts) == len(images) == count.liftable,
        "raw_exceeds_liftable": count.raw > count.liftable,
    }
    _emit(rec)
    return 0 if rec["equal"] else 1


# ---------------------------------------------------------------------------
# Parser


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cartan-points",
        description="Exact positive-point enumeration for frieze systems of Cartan matrices",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_matrix_opts(p):
        p.add_argument("--type", help="Dynkin type, e.g. A4, E6, G2")
        p.add_argument("--matrix", help="matrix JSON {\"n\":..,\"entries\":[[..]]}")

    p = sub.add_parser("enumerate", help="enumerate all positive integral points")
    add_matrix_opts(p)
    p.add_argument("--min-entry", type=int, choices=(1, 2), default=1)
    p.add_argument("--restricted-orbit", action="store_true")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--checkpoint", help="checkpoint file path")
    p.add_argument("--resume", action="store_true")
    p.add_argument("--budget", type=int, help="node budget; checkpoint and stop when hit")
    p.add_argument("--no-pivot", action="store_true", help="disable the pivot row cap")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write points here instead of stdout")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="compare enumeration against closed-form counts")
    p.add_argument("--suite", default="table1")
    p.add_argument("--max-rank", type=int, default=6)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="emit the bound profile of a type")
    p.add_argument("--type", required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("orbit", help="translation orbit of a point")
    add_matrix_opts(p)
    p.add_argument("--point", required=True, help="JSON list x1..xn,y1..yn")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("translate", help="apply the translation once")
    add_matrix_opts(p)
    p.add_argument("--point", required=True)
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("render", help="frieze grid of a point")
    add_matrix_opts(p)
    p.add_argument("--point", required=True)
    p.add_argument("--format", choices=("json", "ascii"), default="json")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("reduce", help="slice or lift point sets across node deletion")
    p.add_argument("--from", dest="from_type", required=True)
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--variant", choices=("x", "y"), required=True)
    p.add_argument("--points", required=True, help="point file (JSON lines)")
    p.add_argument("--mode", choices=("slice", "lift"), default="slice")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("stream", help="mutation stream of points and surface solutions")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--take", type=int, default=10)
    p.add_argument("--surface", action="store_true")
    p.set_defaults(func=cmd_stream)

    p = sub.add_parser("mordell-count", help="finite surface counts via two routes")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=int)
    p.add_argument("--d", type=int)
    p.set_defaults(func=cmd_mordell_count)

    return ap


def run(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GcmError, FriezeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
