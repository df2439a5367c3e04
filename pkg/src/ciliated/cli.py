"""Command line front end.

Every command prints one JSON document (schema ``ciliated.v1``) or, with
``--dot``, a DOT graph.  Exit status: 0 on success, 1 on a domain error, 2 on
a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import arcs as arcs_mod
from .cluster import Seed, b_matrix, exchange_check, mutate
from .complexes import ball, build_arc_complex, build_flip_graph, flip_graph_stats, stats
from .errors import CiliatedError, InvalidSurface, MalformedTriangulation, ParseError
from .export import complex_dot, flip_graph_dot
from .surface import (arc_count, classify, complex_dim, is_finite_type, parse_surface,
                      triangle_count)
from .symmetry import (DEFAULT_MAX_VERTICES, automorphisms, distinguish, flipgraph_aut_check,
                       graph_automorphisms, rigidity_report)
from .triangulation import GluedTriangulation, fan, triangulation, validate

SCHEMA = "ciliated.v1"
DEFAULT_MAX_RADIUS = 8
HARD_MAX_RADIUS = 16
HARD_MAX_VERTICES = 512


class UsageError(Exception):
    pass


def _surface(text):
    try:
        return parse_surface(text)
    except (ParseError, InvalidSurface) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read_glued(path) -> GluedTriangulation:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    return GluedTriangulation.from_text(text)


def _require_valid_file(g: GluedTriangulation):
    report = validate(g)
    if not report.ok:
        raise _Violations(report.to_dict())


class _Violations(CiliatedError):
    code = "InvalidTriangulation"

    def __init__(self, report):
        super().__init__("glued triangulation failed validation")
        self.report = report

    def to_dict(self):
        return {"code": self.code, "message": str(self), "report": self.report}


def _max_radius(args):
    cap = args.max_radius
    if cap > HARD_MAX_RADIUS:
        raise UsageError(f"--max-radius may not exceed {HARD_MAX_RADIUS}")
    if args.radius > cap:
        raise UsageError(f"radius {args.radius} exceeds --max-radius {cap}")


def _max_vertices(args):
    if args.max_vertices > HARD_MAX_VERTICES:
        raise UsageError(f"--max-vertices may not exceed {HARD_MAX_VERTICES}")
    return args.max_vertices


# Commands -----------------------------------------------------------------------

def cmd_classify(args):
    s = args.surface
    out = {
        "surface": s.descriptor(),
        "canonical": s.canonical().descriptor(),
        "tag": classify(s).tag.value,
        "dim": complex_dim(s),
        "finite_type": is_finite_type(s),
    }
    try:
        out["arc_count"] = arc_count(s)
        out["triangle_count"] = triangle_count(s)
    except CiliatedError:
        out["arc_count"] = out["triangle_count"] = None
    return out


def cmd_arcs(args):
    found = arcs_mod.enumerate_arcs(args.surface, args.winding_bound)
    return {"surface": args.surface.descriptor(), "count": len(found), "arcs": [a.text() for a in found]}


def cmd_complex(args):
    c = build_arc_complex(args.surface, args.winding_bound)
    if args.dot:
        return complex_dot(c)
    return {**c.to_dict(), "stats": stats(c)}


def cmd_flipgraph(args):
    g = build_flip_graph(args.surface, args.winding_bound)
    if args.dot:
        return flip_graph_dot(g, f"F({args.surface.descriptor()})")
    return {"surface": args.surface.descriptor(), **g.to_dict(), "stats": flip_graph_stats(g)}


def cmd_ball(args):
    _max_radius(args)
    t0 = _read_glued(args.file)
    _require_valid_file(t0)
    g = ball(t0, args.radius)
    if args.dot:
        return flip_graph_dot(g, f"ball_r{args.radius}({t0.surface.descriptor()})")
    out = g.to_dict()
    out["flips"] = [{"arc": arc, "from": src} for arc, src in g.provenance]
    return {"surface": t0.surface.descriptor(), "radius": args.radius, **out, "stats": flip_graph_stats(g)}


def cmd_stats(args):
    if args.flipgraph:
        return {"surface": args.surface.descriptor(),
                **flip_graph_stats(build_flip_graph(args.surface, args.winding_bound))}
    return stats(build_arc_complex(args.surface, args.winding_bound))


def _perm_labels(labels, perm):
    return [labels[i] for i in perm]


def cmd_aut(args):
    limit = _max_vertices(args)
    if args.flipgraph:
        g = build_flip_graph(args.surface)
        group = graph_automorphisms(g.adjacency(), limit)
        labels = list(g.vertices)
    else:
        c = build_arc_complex(args.surface)
        group = automorphisms(c, limit)
        labels = c.labels
    return {
        "surface": args.surface.descriptor(),
        "object": "flipgraph" if args.flipgraph else "complex",
        "order": group.order,
        "vertices": labels,
        "generators": [_perm_labels(labels, g.images) for g in group.generators],
    }


def cmd_rigidity(args):
    report = rigidity_report(args.surface, _max_vertices(args))
    if args.flipgraph:
        report["flipgraph"] = flipgraph_aut_check(args.surface, _max_vertices(args))
    return report


def cmd_distinguish(args):
    return distinguish(args.a, args.b, _max_vertices(args), force_search=args.force_search)


def cmd_bmatrix(args):
    if args.file:
        g = _read_glued(args.file)
        _require_valid_file(g)
        seed = b_matrix(g)
    elif args.surface is None:
        raise UsageError("bmatrix needs a surface descriptor or --file")
    elif args.arcs:
        seed = b_matrix(triangulation(args.surface, args.arcs.split()))
    else:
        seed = b_matrix(fan(args.surface))
    return seed.to_text() if args.text else seed.to_dict()


def cmd_mutate(args):
    if args.seed_file:
        try:
            seed = Seed.from_text(Path(args.seed_file).read_text())
        except OSError as exc:
            raise UsageError(f"cannot read {args.seed_file}: {exc}") from None
    elif args.matrix:
        try:
            rows = [[int(x) for x in row.split(",")] for row in args.matrix.split(";")]
        except ValueError:
            raise UsageError("--matrix expects rows like '0,1;-1,0'") from None
        if any(len(r) != len(rows) for r in rows):
            raise UsageError("--matrix must be square")
        seed = Seed(tuple(f"x{i}" for i in range(len(rows))), np.array(rows, dtype=np.int64))
    else:
        raise UsageError("mutate needs --seed-file or --matrix")
    out = mutate(seed, args.k)
    return out.to_text() if args.text else out.to_dict()


def cmd_exchange_check(args):
    if args.file:
        _max_radius(args)
        g = _read_glued(args.file)
        _require_valid_file(g)
        return exchange_check(glued=g, radius=args.radius)
    if args.surface is None:
        raise UsageError("exchange-check needs a surface descriptor or --file")
    return exchange_check(args.surface)


def cmd_validate(args):
    report = validate(_read_glued(args.file))
    out = report.to_dict()
    if not report.ok:
        raise _Violations(out)
    return out


# Parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ciliated", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    def surface_arg(p, optional=False):
        if optional:
            p.add_argument("surface", type=_surface, nargs="?", help="descriptor g,b,s;p1,...,pb")
        else:
            p.add_argument("surface", type=_surface, help="descriptor g,b,s;p1,...,pb")

    def window(p):
        p.add_argument("--winding-bound", type=int, default=None,
                       help="window |w| <= W for the (1,1)-annulus (default 4 for complexes)")

    def limits(p):
        p.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES,
                       help=f"automorphism search bound (default {DEFAULT_MAX_VERTICES}, cap {HARD_MAX_VERTICES})")

    def radius(p, required):
        p.add_argument("--radius", type=int, required=required, default=2, help="flip radius")
        p.add_argument("--max-radius", type=int, default=DEFAULT_MAX_RADIUS,
                       help=f"radius bound (default {DEFAULT_MAX_RADIUS}, cap {HARD_MAX_RADIUS})")

    p = add("classify", cmd_classify, "low-dimensional classification and counts")
    surface_arg(p)

    p = add("arcs", cmd_arcs, "enumerate arcs of a finite model")
    surface_arg(p)
    window(p)

    p = add("complex", cmd_complex, "build the arc complex")
    surface_arg(p)
    window(p)
    p.add_argument("--dot", action="store_true", help="emit the 1-skeleton as DOT")

    p = add("flipgraph", cmd_flipgraph, "build the flip graph")
    surface_arg(p)
    window(p)
    p.add_argument("--dot", action="store_true")

    p = add("ball", cmd_ball, "flip-graph ball around a glued triangulation")
    p.add_argument("file", help="glued triangulation file")
    radius(p, required=True)
    p.add_argument("--dot", action="store_true")

    p = add("stats", cmd_stats, "structural statistics")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--complex", action="store_true", help="arc complex statistics (default)")
    group.add_argument("--flipgraph", action="store_true", help="flip graph statistics")
    surface_arg(p)
    window(p)

    p = add("aut", cmd_aut, "automorphism group")
    surface_arg(p)
    p.add_argument("--flipgraph", action="store_true", help="use the flip graph instead of the complex")
    limits(p)

    p = add("rigidity", cmd_rigidity, "compare Aut(A) with the mapping class group image")
    surface_arg(p)
    p.add_argument("--flipgraph", action="store_true", help="also compare Aut(F) with Aut(A)")
    limits(p)

    p = add("distinguish", cmd_distinguish, "certify (non-)isomorphism of two arc complexes")
    p.add_argument("a", type=_surface)
    p.add_argument("b", type=_surface)
    p.add_argument("--force-search", action="store_true", help="run the exhaustive search even if invariants differ")
    limits(p)

    p = add("bmatrix", cmd_bmatrix, "signed adjacency matrix of a triangulation")
    surface_arg(p, optional=True)
    p.add_argument("--arcs", help="space-separated arcs, e.g. 'C(0,2) C(0,3)' (default: the fan)")
    p.add_argument("--file", help="glued triangulation file instead of a descriptor")
    p.add_argument("--text", action="store_true", help="print the seed text format")

    p = add("mutate", cmd_mutate, "mutate a seed")
    p.add_argument("--seed-file")
    p.add_argument("--matrix", help="rows separated by ';', entries by ','")
    p.add_argument("-k", type=int, required=True, help="mutation index (0-based)")
    p.add_argument("--text", action="store_true")

    p = add("exchange-check", cmd_exchange_check, "verify flips against mutations")
    surface_arg(p, optional=True)
    p.add_argument("--file")
    radius(p, required=False)

    p = add("validate", cmd_validate, "validate a glued triangulation file")
    p.add_argument("file")
    return parser


def _emit(command, payload, stream):
    if isinstance(payload, str):
        stream.write(payload)
        return
    doc = {"schema": SCHEMA, "command": command, "result": payload}
    stream.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload = args.func(args)
    except UsageError as exc:
        stdout.write(json.dumps({"schema": SCHEMA, "command": args.command,
                                 "error": {"code": "UsageError", "message": str(exc)}},
                                indent=2, sort_keys=True) + "\n")
        return 2
    except (ParseError, InvalidSurface) as exc:
        stdout.write(json.dumps({"schema": SCHEMA, "command": args.command, "error": exc.to_dict()},
                                indent=2, sort_keys=True) + "\n")
        return 2
    except (CiliatedError, MalformedTriangulation) as exc:
        stdout.write(json.dumps({"schema": SCHEMA, "command": args.command, "error": exc.to_dict()},
                                indent=2, sort_keys=True) + "\n")
        return 1
    _emit(args.command, payload, stdout)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
