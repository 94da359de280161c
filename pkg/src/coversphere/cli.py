"""Command-line front end.

All statistics are emitted as JSON with sorted keys so identical
invocations produce byte-identical output.
"""

import argparse
import json
import sys

from . import catalog, cayley, growth, pack as packmod
from .cover import build_cover
from .gluing import load_gluing_spec
from .rules import apply_replacement, apply_subdivision
from .tiling import Tiling, isomorphic


def _emit(obj, path):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load_spec(name_or_path):
    if name_or_path.endswith(".glue"):
        return load_gluing_spec(name_or_path)
    return catalog.load_spec(name_or_path)


def _cmd_rules(args):
    _emit([{"name": n, "geometry": g, "modes": list(m)}
           for n, g, m in catalog.list_rules()], "-")
    return 0


def _cmd_subdivide(args):
    entry = catalog.get_rule(args.rule)
    tilings = list(growth.stage_tilings(entry, args.steps, args.mode))
    stats = {
        "rule": entry.name,
        "mode": args.mode or (entry.modes[-1] if entry.modes else None),
        "steps": args.steps,
        "face_counts": [len(t.face_start) for t in tilings],
        "edge_counts": [len(t.edges) for t in tilings],
        "vertex_counts": [len(t.vertex_names) for t in tilings],
    }
    if args.stats:
        _emit(stats, args.stats)
    if args.out:
        _write(tilings[-1].to_json() + "\n", args.out)
    if args.svg:
        t = tilings[-1]
        label = packmod.pack(packmod.triangulate(t, args.open))
        _write(packmod.render_svg(label), args.svg)
    return 0


def _cmd_cover(args):
    spec = _load_spec(args.spec)
    state = build_cover(spec, 0)
    cells, faces, spheres = [], [], []
    for _ in range(args.steps):
        if state.num_cells > args.cap:
            print(f"cell cap {args.cap} exceeded", file=sys.stderr)
            return 2
        sphere = state.boundary_sphere()
        cells.append(state.num_cells)
        faces.append(len(sphere.face_start))
        spheres.append(sphere.is_sphere())
        state.expand()
    _emit({"spec": spec.name or args.spec, "steps": args.steps,
           "cells": cells, "face_counts": faces,
           "all_spheres": all(spheres)}, args.stats)
    return 0


def _cmd_growth(args):
    entry = catalog.get_rule(args.rule)
    rep = growth.growth_report(entry, args.steps, args.mode)
    _emit({"rule": rep.name, "mode": rep.mode,
           "face_counts": rep.faces, "edge_counts": rep.edges,
           "vertex_counts": rep.vertices,
           "classification": str(rep.classification),
           "evidence": {k: v for k, v in
                        rep.classification.evidence.items()}}, "-")
    return 0


def _cmd_cayley(args):
    g = cayley.make_group(args.group)
    if args.ac2:
        table = cayley.ac_profile(g, args.radius, 2, cap=args.cap)
        _emit({"group": g.name, "m": 2,
               "K": {str(n): table[n] for n in sorted(table)}}, "-")
        return 0
    if args.cones:
        rep = cayley.cone_type_count(g, args.radius, args.depth,
                                     cap=args.cap)
        _emit({"group": rep.group, "radius": rep.radius,
               "depth": rep.depth, "class_count": rep.class_count,
               "class_sizes": rep.class_sizes}, "-")
        return 0
    bd = cayley.ball(g, args.radius, cap=args.cap)
    _emit({"group": g.name, "radius": args.radius,
           "ball_sizes": [bd.ball_size(k)
                          for k in range(args.radius + 1)]}, "-")
    return 0


def _cmd_pack(args):
    with open(args.infile) as fh:
        t = Tiling.from_json(fh.read())
    label = packmod.pack(packmod.triangulate(t, args.open),
                         tolerance=args.tolerance)
    if args.svg:
        _write(packmod.render_svg(label), args.svg)
    rows = [{"vertex": str(v), "radius": round(label.radius[v], 9),
             "x": round(label.center[v][0], 9),
             "y": round(label.center[v][1], 9)}
            for v in sorted(label.center, key=str)]
    _emit({"residual": label.residual <= args.tolerance,
           "tangency_error_ok": packmod.tangency_error(label) <= 1e-6,
           "circles": rows}, args.stats)
    return 0


def _cmd_verify(args):
    entry = catalog.get_rule(args.rule)
    if entry.companion is None:
        print(f"rule {entry.name!r} has no companion gluing spec",
              file=sys.stderr)
        return 2
    spec = catalog.load_spec(entry.companion)
    state = build_cover(spec, 1)
    t = entry.initial
    for stage in range(1, args.steps + 1):
        sphere = state.boundary_sphere()
        if not isomorphic(t, sphere):
            print(f"stage {stage}: rule output does not match cover "
                  f"({len(t.face_start)} vs {len(sphere.face_start)} faces)",
                  file=sys.stderr)
            return 1
        if stage < args.steps:
            state.expand()
            t = apply_replacement(entry.rule.replacement, t)
    _emit({"rule": entry.name, "spec": entry.companion,
           "steps": args.steps, "equivalent": True}, "-")
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="coversphere",
        description="Subdivision/replacement rules on boundary spheres "
                    "of glued-polyhedron covers.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rules", help="catalog operations")
    p.add_argument("action", choices=["list"])
    p.set_defaults(fn=_cmd_rules)

    p = sub.add_parser("subdivide", help="run a rule for N steps")
    p.add_argument("--rule", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--mode", choices=["replacement", "subdivision"])
    p.add_argument("--stats", help="stats JSON path or '-'")
    p.add_argument("--out", help="final-stage tiling JSON path or '-'")
    p.add_argument("--svg", help="circle-pack the final stage to SVG")
    p.add_argument("--open", type=int, default=0,
                   help="face to remove before packing")
    p.set_defaults(fn=_cmd_subdivide)

    p = sub.add_parser("cover", help="grow a cover from a gluing spec")
    p.add_argument("--spec", required=True,
                   help="bundled spec name or .glue path")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--stats", default="-")
    p.add_argument("--cap", type=int, default=10 ** 6)
    p.set_defaults(fn=_cmd_cover)

    p = sub.add_parser("growth", help="classify a rule's face-count growth")
    p.add_argument("--rule", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--mode", choices=["replacement", "subdivision"])
    p.set_defaults(fn=_cmd_growth)

    p = sub.add_parser("cayley", help="Cayley-graph experiments")
    p.add_argument("--group", required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--ac2", action="store_true",
                   help="almost-convexity table K(2, n)")
    p.add_argument("--cones", action="store_true",
                   help="approximate cone-type count")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--cap", type=int, default=10 ** 6)
    p.set_defaults(fn=_cmd_cayley)

    p = sub.add_parser("pack", help="circle-pack a tiling JSON file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--open", type=int, default=0)
    p.add_argument("--svg")
    p.add_argument("--stats", default="-")
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.set_defaults(fn=_cmd_pack)

    p = sub.add_parser("verify",
                       help="check a rule against its companion cover")
    p.add_argument("--rule", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.set_defaults(fn=_cmd_verify)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
