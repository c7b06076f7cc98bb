"""SVG drawings of polygon tilings, coset geometries and derived tilings.

Euclidean pictures use straight segments. Hyperbolic pictures live inside
the unit circle and draw each geodesic as an arc of the circle through both
endpoints that meets the boundary at right angles.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .cayley import CayleyGraph, Color, build_cayley
from .presentation import CurvatureClass
from .tiling import PolygonTiling, derived_tiling

__all__ = ["RenderStyle", "SphericalRenderError", "geodesic_path", "render_tiling",
           "render_coset", "render_derived", "render_cayley", "svg_metadata"]

CANVAS = 800.0


class SphericalRenderError(ValueError):
    """Spherical models are verified graph-theoretically only."""


@dataclass
class RenderStyle:
    vertex_colors: dict = field(default_factory=lambda: {"A": "red", "B": "blue"})
    edge_colors: dict = field(default_factory=lambda: {"x": "red", "y": "blue"})
    skeleton_color: str = "black"
    stroke_width: float = 1.5
    vertex_radius: float = 3.0
    disk_boundary: bool = True
    arrowheads: bool = True


def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


class _Canvas:
    def __init__(self, kind: CurvatureClass, points, style: RenderStyle):
        if kind == CurvatureClass.SPHERICAL:
            raise SphericalRenderError("spherical models are not rendered")
        self.kind = kind
        self.style = style
        if kind == CurvatureClass.HYPERBOLIC:
            self.center, self.scale = 0j, 0.47 * CANVAS
        else:
            pts = list(points) or [0j]
            lo_x, hi_x = min(p.real for p in pts), max(p.real for p in pts)
            lo_y, hi_y = min(p.imag for p in pts), max(p.imag for p in pts)
            span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
            self.center = complex((lo_x + hi_x) / 2, (lo_y + hi_y) / 2)
            self.scale = 0.45 * CANVAS / span * 2
        self.body: list[str] = []

    def xy(self, z: complex) -> tuple[str, str]:
        w = (z - self.center) * self.scale
        return _fmt(CANVAS / 2 + w.real), _fmt(CANVAS / 2 - w.imag)

    def path(self, p: complex, q: complex) -> str:
        x0, y0 = self.xy(p)
        if self.kind == CurvatureClass.HYPERBOLIC:
            arc = geodesic_path(p, q)
            if arc is not None:
                r, sweep = arc
                x1, y1 = self.xy(q)
                return f"M {x0} {y0} A {_fmt(r * self.scale)} {_fmt(r * self.scale)} 0 0 {sweep} {x1} {y1}"
        x1, y1 = self.xy(q)
        return f"M {x0} {y0} L {x1} {y1}"

    def edge(self, p, q, color, cls, marker=None):
        m = f' marker-end="url(#{marker})"' if marker else ""
        self.body.append(f'<path class="{cls}" d="{self.path(p, q)}" fill="none" '
                         f'stroke="{color}" stroke-width="{_fmt(self.style.stroke_width)}"{m}/>')

    def dot(self, z, color, cls):
        x, y = self.xy(z)
        self.body.append(f'<circle class="{cls}" cx="{x}" cy="{y}" '
                         f'r="{_fmt(self.style.vertex_radius)}" fill="{color}"/>')

    def document(self, title: str, meta: dict) -> str:
        size = _fmt(CANVAS)
        head = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
            f'viewBox="0 0 {size} {size}">',
            f"<title>{escape(title)}</title>",
            f"<metadata>{escape(json.dumps(meta, sort_keys=True))}</metadata>",
        ]
        if self.style.arrowheads:
            head.append("<defs>")
            for name, color in sorted(self.style.edge_colors.items()):
                head.append(f'<marker id="arrow-{name}" viewBox="0 0 10 10" refX="10" refY="5" '
                            f'markerWidth="6" markerHeight="6" orient="auto">'
                            f'<path d="M 0 0 L 10 5 L 0 10 z" fill="{color}"/></marker>')
            head.append("</defs>")
        if self.kind == CurvatureClass.HYPERBOLIC and self.style.disk_boundary:
            c = _fmt(CANVAS / 2)
            head.append(f'<circle class="boundary" cx="{c}" cy="{c}" r="{_fmt(self.scale)}" '
                        f'fill="none" stroke="gray"/>')
        return "\n".join(head + self.body + ["</svg>"]) + "\n"


def geodesic_path(p: complex, q: complex, eps: float = 1e-9):
    """Radius and SVG sweep flag of the arc joining p and q in the Poincare
    disk, or None when the geodesic is a diameter (drawn straight)."""
    cross = p.real * q.imag - p.imag * q.real
    if abs(cross) < eps:
        return None
    # the orthogonal circle's center c satisfies Re(c conj(z)) = (1 + |z|^2) / 2 for z = p, q
    a = (1 + abs(p) ** 2) / 2
    b = (1 + abs(q) ** 2) / 2
    cx = (a * q.imag - b * p.imag) / cross
    cy = (b * p.real - a * q.real) / cross
    c = complex(cx, cy)
    r = math.sqrt(abs(c) ** 2 - 1)
    u, v = p - c, q - c
    turn = u.real * v.imag - u.imag * v.real
    # flipping y for the screen reverses handedness, so a clockwise turn
    # in the plane is SVG's positive-angle (sweep 1) direction
    return r, 1 if turn < 0 else 0


def svg_metadata(svg: str) -> dict:
    """The JSON counts embedded in a rendered SVG."""
    import xml.etree.ElementTree as ET

    root = ET.fromstring(svg)
    node = root.find("{http://www.w3.org/2000/svg}metadata")
    return json.loads(node.text)


def _meta(tiling: PolygonTiling, what: str, **counts) -> dict:
    p = tiling.params
    return {"what": what, "params": [p.a, p.b, p.c], "model": tiling.kind.value,
            "depth": tiling.depth, **counts}


def _skeleton_picture(tiling: PolygonTiling, style: RenderStyle, what: str, names: dict) -> str:
    sk = tiling.skeleton
    cv = _Canvas(tiling.kind, sk.points, style)
    for e in sk.edges:
        cv.edge(sk.points[e.a], sk.points[e.b], style.skeleton_color, "edge")
    for i, t in enumerate(sk.types):
        cv.dot(sk.points[i], style.vertex_colors[t], f"vertex {names[t]}")
    meta = _meta(tiling, what, tiles=len(tiling.tiles), vertices=len(sk.types),
                 edges=len(sk.edges), **{f"{names[t]}_vertices": sk.types.count(t) for t in "AB"})
    return cv.document(f"{what} {tiling.params}", meta)


def render_tiling(tiling: PolygonTiling, style: RenderStyle | None = None) -> str:
    """The polygon tiling: tile boundaries with A- and B-vertices."""
    return _skeleton_picture(tiling, style or RenderStyle(), "tiling", {"A": "A", "B": "B"})


def render_coset(tiling: PolygonTiling, style: RenderStyle | None = None) -> str:
    """The coset geometry drawn on the skeleton: H-cosets at A-vertices,
    K-cosets at B-vertices."""
    return _skeleton_picture(tiling, style or RenderStyle(), "coset", {"A": "H", "B": "K"})


def render_derived(tiling: PolygonTiling, style: RenderStyle | None = None) -> str:
    """The derived tiling: midpoints of skeleton edges joined by directed
    arrows colored by the type of the shared vertex."""
    style = style or RenderStyle()
    der = derived_tiling(tiling)
    cv = _Canvas(tiling.kind, der.vertices.values(), style)
    color = {"A": "x", "B": "y"}
    for s, t, c in sorted(der.edges):
        name = color[c]
        cv.edge(der.vertices[s], der.vertices[t], style.edge_colors[name], f"edge {name}",
                f"arrow-{name}" if style.arrowheads else None)
    for d in sorted(der.vertices):
        cv.dot(der.vertices[d], "black", "vertex")
    meta = _meta(tiling, "derived", vertices=len(der.vertices), edges=len(der.edges),
                 A_edges=sum(c == "A" for *_, c in der.edges),
                 B_edges=sum(c == "B" for *_, c in der.edges))
    return cv.document(f"derived {tiling.params}", meta)


def render_cayley(tiling: PolygonTiling, graph: CayleyGraph | None = None,
                  style: RenderStyle | None = None) -> str:
    """The Cayley graph placed at the skeleton-edge midpoints, restricted to
    elements labelling an edge of the tiling."""
    style = style or RenderStyle()
    der = derived_tiling(tiling)
    graph = (graph or build_cayley(tiling.store)).restrict(der.vertices)
    cv = _Canvas(tiling.kind, der.vertices.values(), style)
    for s, t, c in graph.sorted_edges():
        cv.edge(der.vertices[s], der.vertices[t], style.edge_colors[c.value], f"edge {c.value}",
                f"arrow-{c.value}" if style.arrowheads else None)
    for d in graph.vertices:
        cv.dot(der.vertices[d], "black", "vertex")
    meta = _meta(tiling, "cayley", vertices=len(graph.vertices), edges=len(graph.edges),
                 x_edges=len(graph.colored(Color.X)), y_edges=len(graph.colored(Color.Y)))
    return cv.document(f"cayley {tiling.params}", meta)
