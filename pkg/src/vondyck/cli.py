"""Command-line interface.

Exit codes: 0 when everything passes, 1 when a verification fails, 2 on a
usage error (bad arguments, infinite model without a depth, spherical
render).
"""

from __future__ import annotations

import argparse
import sys

from .cayley import build_cayley
from .cosets import build_coset_geometry
from .groups import GeometricModel, UnboundedEnumerationError, enumerate_elements, make_model
from .presentation import CurvatureClass, VonDyckParams, format_word
from .render import (SphericalRenderError, render_cayley, render_coset, render_derived,
                     render_tiling)
from .tiling import (BoundaryError, EnlargementError, enumerate_dnnn, expected_added,
                     ring_boundary, touching_tiles, build_polygon_tiling)
from .verify import duality_checks, prepare

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    pass


def _params(args) -> VonDyckParams:
    if None in (args.a, args.b, args.c):
        raise UsageError("--a, --b and --c are required")
    try:
        return VonDyckParams(args.a, args.b, args.c)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _add_abc(p, required=False):
    p.add_argument("--a", type=int, required=required)
    p.add_argument("--b", type=int, required=required)
    p.add_argument("--c", type=int, required=required)


def cmd_classify(args, out):
    p = _params(args)
    cls = p.curvature
    if cls == CurvatureClass.SPHERICAL:
        order = len(enumerate_elements(GeometricModel(p)))
        print(f"{cls.value}, order {order}", file=out)
    else:
        print(cls.value, file=out)
    return 0


def _store(args):
    if args.model == "geometric":
        model = make_model("geometric", _params(args))
    else:
        model = make_model(args.model)
    try:
        return enumerate_elements(model, args.depth)
    except UnboundedEnumerationError as exc:
        raise UsageError(f"{exc}; pass --depth") from exc


def cmd_build(args, out):
    store = _store(args)
    if args.graph == "cayley":
        g = build_cayley(store)
    else:
        g = build_coset_geometry(store)
    text = g.dumps(store) + "\n" if args.format == "json" else g.to_dot(store)
    out.write(text)
    return 0


def cmd_verify(args, out):
    params = _params(args) if args.model == "geometric" else None
    try:
        run = prepare(args.model, params, args.depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    scope = "truncated, compared on %d elements" % len(run.window) if run.truncated else "complete"
    print(f"model {args.model}{'' if params is None else ' ' + str(params)}: "
          f"{len(run.store)} elements ({scope})", file=out)
    ok = True
    for rep in duality_checks(run):
        for line in rep.lines():
            print(line, file=out)
        ok &= rep.ok
    print("ALL PASS" if ok else "FAILED", file=out)
    return 0 if ok else 1


def cmd_enumerate(args, out):
    if args.n < 3:
        raise UsageError("--n must be at least 3")
    if args.rings < 0:
        raise UsageError("--rings must be nonnegative")
    patches: list = []
    try:
        rows = enumerate_dnnn(args.n, args.rings, patches)
    except (BoundaryError, EnlargementError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print("index\tring\tword", file=out)
    for r in rows:
        print(f"{r.index}\t{r.ring}\t{format_word(r.word)}", file=out)
    if not args.check:
        return 0
    ok = True
    for r in range(1, len(patches)):
        q, nxt = patches[r - 1], patches[r]
        bd = ring_boundary(q)
        added = len(nxt.tiles) - len(q.tiles)
        formula = expected_added(bd, args.n)
        brute = len(touching_tiles(q))
        good = added == formula == brute
        ok &= good
        print(f"{'PASS' if good else 'FAIL'}  ring {r}: N={bd.N} sum(i_k)={sum(bd.counts)} "
              f"added={added} formula={formula} touching={brute}", file=out)
    return 0 if ok else 1


RENDERERS = {"tiling": render_tiling, "coset": render_coset,
             "derived": render_derived, "cayley": render_cayley}


def cmd_render(args, out):
    p = _params(args)
    if p.curvature == CurvatureClass.SPHERICAL:
        raise UsageError("spherical models are not rendered")
    try:
        svg = RENDERERS[args.what](build_polygon_tiling(p, args.depth))
    except SphericalRenderError as exc:
        raise UsageError(str(exc)) from exc
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {args.out}", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vondyck", description="von Dyck groups, their Cayley "
                                 "graphs, coset geometries and tilings")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="curvature class (and order when finite)")
    _add_abc(p, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("build", help="emit a Cayley graph or coset geometry")
    p.add_argument("graph", choices=["cayley", "coset"])
    p.add_argument("--model", choices=["geometric", "z6", "b23"], required=True)
    _add_abc(p)
    p.add_argument("--depth", type=int)
    p.add_argument("--format", choices=["dot", "json"], required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run the duality checks")
    p.add_argument("--model", choices=["geometric", "z6", "b23"], required=True)
    _add_abc(p)
    p.add_argument("--depth", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="list the elements of D(n,n,n) ring by ring")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rings", type=int, required=True)
    p.add_argument("--check", action="store_true", help="check added-tile counts per ring")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("render", help="write an SVG picture")
    p.add_argument("--what", choices=sorted(RENDERERS), required=True)
    _add_abc(p, required=True)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "depth", None) is not None and args.depth < 0:
        print("error: --depth must be nonnegative", file=sys.stderr)
        return 2
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
