"""Command-line front end.

Subcommands: generate, check, travel, render.  Exit codes are stable across
commands: 0 = success / all checks pass, 1 = a check failed, 2 = input or
usage error, 3 = travel target unreachable (boundary truncation).

All output is deterministic: identical inputs produce byte-identical patch
files, reports and SVG.
"""

from __future__ import annotations

import argparse
import io
import sys

from .census import check_orientation_theorem
from .generators import MultigridSpec, gen_multigrid, gen_sheared_grid, gen_square_grid
from .patchio import load_patch, save_patch
from .render import render_svg
from .tiling import ValidationReport, validate
from .travel import build_worm_graph, travel_bfs, travel_constructive, turn_budget
from .worms import (CheckReport, check_cone_lemma, check_crossing_lemma,
                    check_no_loop, extract_worms)

REPORT_HEADER = "wormkit-report 1"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_UNREACHABLE = 3


def _fmt_value(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt_value(x) for x in v)
    return str(v)


def write_reports(reports: list[CheckReport], fh) -> None:
    fh.write(REPORT_HEADER + "\n")
    for rep in reports:
        fh.write(f"check {rep.name}\n")
        fh.write(f"status {'pass' if rep.passed else 'fail'}\n")
        for key in sorted(rep.stats):
            fh.write(f"stat {key}={_fmt_value(rep.stats[key])}\n")
        for v in rep.violations:
            fields = " ".join(f"{k}={_fmt_value(v[k])}"
                              for k in sorted(v) if k != "kind")
            fh.write(f"violation {v['kind']} {fields}".rstrip() + "\n")
        fh.write("end\n")


def _validation_as_check(report: ValidationReport, patch) -> CheckReport:
    out = CheckReport("vertex")
    for rec in report.vertex_contacts:
        out.violations.append({"kind": "vertex-on-tile", **rec})
    for a, b in report.overlaps:
        out.violations.append({"kind": "overlap", "tile_a": a, "tile_b": b})
    for tid in report.degenerate:
        out.violations.append({"kind": "degenerate", "tile": tid})
    out.stats = {"tiles": len(patch.tiles), "edges": len(patch.edges),
                 "prototiles": len(patch.protoset),
                 "locally_finite": "always-for-finite-patches"}
    return out


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_generate(args) -> int:
    if args.kind == "grid":
        patch = gen_square_grid(args.w, args.h)
        prov = f"generator: grid w={args.w} h={args.h}"
    elif args.kind == "sheared":
        patch = gen_sheared_grid(args.w, args.h, args.shear)
        prov = f"generator: sheared w={args.w} h={args.h} shear={args.shear:.17g}"
    else:
        if args.offsets is None or args.n is None or args.radius is None:
            raise ValueError("multigrid needs --n, --offsets and --radius")
        offsets = tuple(float(x) for x in args.offsets.split(","))
        spec = MultigridSpec(args.n, offsets, args.radius, args.grid_range)
        patch = gen_multigrid(spec)
        prov = (f"generator: multigrid n={args.n} "
                f"offsets={','.join(f'{o:.17g}' for o in offsets)} "
                f"radius={args.radius:.17g}")
    save_patch(patch, args.out, prov)
    print(f"wrote {args.out}: {len(patch.tiles)} tiles, "
          f"{len(patch.protoset)} prototiles")
    return EXIT_OK


CHECK_NAMES = ("vertex", "loop", "crossing", "cone", "census")


def cmd_check(args) -> int:
    patch = load_patch(args.patch)
    which = CHECK_NAMES if args.which == "all" else (args.which,)
    worms = extract_worms(patch) if set(which) & {"loop", "crossing", "cone"} \
        else None
    reports = []
    for name in which:
        if name == "vertex":
            reports.append(_validation_as_check(validate(patch), patch))
        elif name == "loop":
            reports.append(check_no_loop(patch, worms))
        elif name == "crossing":
            reports.append(check_crossing_lemma(patch, worms))
        elif name == "cone":
            reports.append(check_cone_lemma(patch, worms=worms))
        elif name == "census":
            reports.append(check_orientation_theorem(patch))
    buf = io.StringIO()
    write_reports(reports, buf)
    _emit(buf.getvalue(), args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED


def cmd_travel(args) -> int:
    patch = load_patch(args.patch)
    n = len(patch.tiles)
    if not (0 <= args.s < n and 0 <= args.t < n):
        raise ValueError(f"tile ids must be in 0..{n - 1}")
    graph = build_worm_graph(patch)
    budget = turn_budget(patch.alpha)

    if args.method == "bfs":
        route = travel_bfs(graph, args.s, args.t)
        diagnostic = None if route else "disconnected in the worm graph"
    else:
        outcome = travel_constructive(patch, args.s, args.t, graph)
        route, diagnostic = outcome.route, outcome.diagnostic

    rep = CheckReport("travel")
    rep.stats = {"method": args.method, "start": args.s, "end": args.t,
                 "budget": budget}
    if route is None:
        rep.violations.append({"kind": "unreachable", "reason": diagnostic})
    else:
        rep.stats.update({
            "worms": route.worm_count,
            "worm_ids": list(route.worms),
            "turn_tiles": list(route.turns) if route.turns else "none",
            "within_budget": "yes" if route.worm_count <= budget else "no",
            "strictly_below_budget": "yes" if route.worm_count < budget else "no",
        })
        if route.worm_count > budget:
            rep.violations.append({"kind": "budget-exceeded",
                                   "worms": route.worm_count, "budget": budget})
    buf = io.StringIO()
    write_reports([rep], buf)
    _emit(buf.getvalue(), args.out)
    if args.svg and route is not None:
        _emit(render_svg(patch, graph.wormset, route=route), args.svg)
    if route is None:
        return EXIT_UNREACHABLE
    return EXIT_OK if rep.passed else EXIT_CHECK_FAILED


def cmd_render(args) -> int:
    patch = load_patch(args.patch)
    worms = None
    route = None
    if args.worms or args.route or args.cones is not None:
        worms = extract_worms(patch)
    if args.route:
        s, t = (int(x) for x in args.route.split(","))
        graph = build_worm_graph(patch, worms)
        route = travel_bfs(graph, s, t)
        if route is None:
            print("route: unreachable", file=sys.stderr)
            return EXIT_UNREACHABLE
    if args.cones is not None and not 0 <= args.cones < len(worms.worms):
        raise ValueError(f"worm id must be in 0..{len(worms.worms) - 1}")
    _emit(render_svg(patch, worms, show_worms=args.worms, route=route,
                     cone_worm=args.cones, labels=args.labels), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wormkit",
        description="Build parallelogram-tiling patches, extract worms, and "
                    "machine-check their structural properties.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a patch file")
    g.add_argument("kind", choices=("grid", "sheared", "multigrid"))
    g.add_argument("--w", type=int, default=10)
    g.add_argument("--h", type=int, default=10)
    g.add_argument("--shear", type=float, default=0.5)
    g.add_argument("--n", type=int, help="multigrid direction count")
    g.add_argument("--offsets", help="comma-separated multigrid offsets")
    g.add_argument("--radius", type=float, help="multigrid intersection radius")
    g.add_argument("--grid-range", type=int, default=None,
                   help="line index range per family (default: from radius)")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("check", help="run structural checks on a patch file")
    c.add_argument("patch")
    c.add_argument("--which", default="all", choices=("all",) + CHECK_NAMES)
    c.add_argument("--out", default=None, help="report path (default stdout)")
    c.set_defaults(func=cmd_check)

    t = sub.add_parser("travel", help="route between two tiles along worms")
    t.add_argument("patch")
    t.add_argument("--s", type=int, required=True, help="start tile id")
    t.add_argument("--t", type=int, required=True, help="end tile id")
    t.add_argument("--method", default="bfs", choices=("bfs", "constructive"))
    t.add_argument("--out", default=None, help="report path (default stdout)")
    t.add_argument("--svg", default=None, help="also render the route")
    t.set_defaults(func=cmd_travel)

    r = sub.add_parser("render", help="render a patch file to SVG")
    r.add_argument("patch")
    r.add_argument("--out", required=True)
    r.add_argument("--worms", action="store_true",
                   help="overlay worm spines, one color per family")
    r.add_argument("--route", default=None, metavar="S,T",
                   help="highlight the bfs route between two tile ids")
    r.add_argument("--cones", type=int, default=None, metavar="WORM_ID",
                   help="shade the forbidden cones at the worm's middle rung")
    r.add_argument("--labels", action="store_true", help="draw tile ids")
    r.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
