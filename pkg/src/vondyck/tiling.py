"""Tilings realizing the coset geometry and the Cayley graph.

The polygon tiling P_{a,b,c} has one 2c-gon per O-type vertex of the triangle
tiling. Its 1-skeleton is bipartite on A- and B-type vertices and the edge
d(A, B) carries the label d. The derived tiling has the midpoints of those
edges as vertices; two of them are joined when their edges are consecutive
on a common tile, colored by the type of the shared vertex and directed by
the counterclockwise turn inside that tile.

For P_{n,n,n} the module also grows sub-tilings ring by ring and checks the
added-tile count N(n-1) - sum(i_k) at every step.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import NamedTuple

from . import geometry as geo
from .cayley import CayleyGraph, Color
from .cosets import CosetGeometry
from .groups import ElementStore, GeometricModel, enumerate_elements
from .presentation import (CurvatureClass, Letter, VonDyckParams, Word, _coerce,
                           format_word, torsion_normalize)
from .report import IncompleteStoreError, Report

__all__ = [
    "Tile", "Skeleton", "PTile", "PolygonTiling", "DerivedTiling",
    "RingBoundary", "Patch", "EnumeratedEdge", "BoundaryError",
    "EnlargementError", "polygon_template", "build_triangle_tiling",
    "build_polygon_tiling", "abstract_polygon_tiling",
    "identify_skeleton_with_coset_geometry", "derived_tiling",
    "derived_equals_cayley", "interior_labels", "basic_patch", "ring_boundary", "enlarge",
    "touching_tiles", "enumerate_dnnn", "region_elements",
]

X, Y, XI, YI = Letter.X, Letter.Y, Letter.Xinv, Letter.Yinv


class BoundaryError(ValueError):
    """The boundary of a sub-tiling is not a single simple loop."""


class EnlargementError(RuntimeError):
    """An enlargement disagreed with the added-tile count formula."""


# --- the basic polygon ------------------------------------------------------

def _rot_word(k: int, c: int) -> Word:
    """A short word for the counterclockwise rotation by 2 pi k / c about O,
    which is (xy)^-k."""
    k %= c
    if 2 * k <= c:
        return (YI, XI) * k
    return (X, Y) * (c - k)


def polygon_template(params):
    """Vertices and edge labels of P_0, counterclockwise from A.

    Vertex 2k is R^k(A) and vertex 2k+1 is R^k(B), with R the rotation by
    2 pi / c about O. Edge i joins vertex i to vertex i+1; edge 2k is
    labelled R^k and edge 2k+1 is labelled R^k y^-1. As words these are the
    length-i prefix of y^-1 x^-1 y^-1 ... (walking counterclockwise from the
    identity edge) or, from edge c on, the length-(2c-i) prefix of x y x ...
    (walking clockwise).
    """
    p = _coerce(params)
    t = geo.build_basic_triangle(p)
    c = p.c
    r = geo.rotation(t.kind, t.vO, 2 * math.pi / c)
    pts, types, words = [], [], []
    g = geo.identity(t.kind)
    for k in range(c):
        pts += [geo.apply(g, t.vA), geo.apply(g, t.vB)]
        types += ["A", "B"]
        g = geo.compose(r, g)
    for i in range(2 * c):
        if i < c:
            words.append(tuple((YI, XI)[j % 2] for j in range(i)))
        else:
            words.append(tuple((X, Y)[j % 2] for j in range(2 * c - i)))
    return pts, types, words


# --- triangle tiling --------------------------------------------------------

@dataclass
class Tile:
    vertices: tuple
    types: tuple
    orientation: int        # +1 counterclockwise in type order, -1 otherwise
    element: int | None = None
    word: Word | None = None
    center: object = None

    @property
    def positive(self) -> bool:
        return self.orientation > 0


def build_triangle_tiling(params, depth: int) -> list[Tile]:
    """Positive triangles g(T_0) for every g of word length <= depth, plus
    the negative triangles across each of their sides."""
    p = _coerce(params)
    store = enumerate_elements(GeometricModel(p), depth)
    t = geo.build_basic_triangle(p)
    kind = t.kind
    seen = geo.PointIndex()
    tiles: list[Tile] = []
    pos = []
    for e in store:
        verts = tuple(geo.apply(e.payload, v) for v in t.vertices)
        seen.add(verts)
        tile = Tile(verts, ("A", "B", "O"), geo.orientation(kind, *verts), e.id, e.word)
        tiles.append(tile)
        pos.append(tile)
    for tile in pos:
        vs = tile.vertices
        for i in range(3):
            # reflect the vertex opposite side (j, k)
            j, k = (i + 1) % 3, (i + 2) % 3
            new = list(vs)
            new[i] = geo.reflect(kind, vs[j], vs[k], vs[i])
            new = tuple(new)
            _, fresh = seen.add(new)
            if fresh:
                tiles.append(Tile(new, ("A", "B", "O"), geo.orientation(kind, *new)))
    return tiles


# --- polygon tiling and its skeleton -----------------------------------------

class SkeletonEdge(NamedTuple):
    a: int                  # vertex id of the A-type end
    b: int                  # vertex id of the B-type end
    element: int | None     # label as an element id of the tiling's store
    word: Word | None       # label as a word


@dataclass
class Skeleton:
    types: list[str] = field(default_factory=list)
    points: list = field(default_factory=list)      # None entries for abstract skeletons
    edges: list[SkeletonEdge] = field(default_factory=list)
    _edge_ids: dict = field(default_factory=dict, repr=False)
    _by_element: dict = field(default_factory=dict, repr=False)

    def add_vertex(self, typ, point=None) -> int:
        self.types.append(typ)
        self.points.append(point)
        return len(self.types) - 1

    def add_edge(self, a, b, element, word) -> int:
        key = (a, b)
        i = self._edge_ids.get(key)
        if i is not None:
            old = self.edges[i]
            if element is not None and old.element is not None and element != old.element:
                raise ValueError(f"edge {key} labelled both {old.element} and {element}")
            if old.element is None and element is not None:
                self.edges[i] = SkeletonEdge(a, b, element, word)
                self._by_element[element] = i
            return i
        i = len(self.edges)
        self.edges.append(SkeletonEdge(a, b, element, word))
        self._edge_ids[key] = i
        if element is not None:
            if element in self._by_element:
                raise ValueError(f"element {element} labels two skeleton edges")
            self._by_element[element] = i
        return i

    def edge_id(self, u, v):
        return self._edge_ids.get((u, v), self._edge_ids.get((v, u)))

    def edge_of_element(self, d):
        i = self._by_element.get(d)
        return None if i is None else self.edges[i]

    def incident(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, e in enumerate(self.edges):
            out.setdefault(e.a, []).append(i)
            out.setdefault(e.b, []).append(i)
        return out

    def is_bipartite(self) -> bool:
        return all(self.types[e.a] == "A" and self.types[e.b] == "B" for e in self.edges)


@dataclass
class PTile:
    vertex_ids: list[int]       # counterclockwise (nominally)
    edge_ids: list[int]         # edge i joins vertex i and vertex i+1
    orientation: int
    center: object = None
    word: Word | None = None
    element: int | None = None


@dataclass
class PolygonTiling:
    params: VonDyckParams | None
    kind: CurvatureClass | None     # None for abstract (finite quotient) tilings
    store: ElementStore
    tiles: list[PTile]
    skeleton: Skeleton
    depth: int | None = None

    def tile_records(self) -> list[dict]:
        out = []
        for t in self.tiles:
            rec = {"vertices": [self.skeleton.types[v] for v in t.vertex_ids],
                   "edges": [self.skeleton.edges[e].element for e in t.edge_ids],
                   "word": format_word(t.word) if t.word is not None else None}
            if self.kind is not None:
                rec["coords"] = [_round_coords(self.skeleton.points[v]) for v in t.vertex_ids]
            out.append(rec)
        return out

    def to_json(self) -> dict:
        sk = self.skeleton
        return {
            "schema": "vondyck.tiling/1",
            "params": None if self.params is None else [self.params.a, self.params.b, self.params.c],
            "model": None if self.kind is None else self.kind.value,
            "vertices": [{"id": i, "type": t,
                          "coords": None if sk.points[i] is None else _round_coords(sk.points[i])}
                         for i, t in enumerate(sk.types)],
            "edges": [{"a": e.a, "b": e.b, "element": e.element,
                       "word": None if e.word is None else format_word(e.word)} for e in sk.edges],
            "tiles": self.tile_records(),
        }


def _round_coords(p):
    return [round(v, 9) + 0.0 for v in geo.point_coords(p)]


def build_polygon_tiling(params, depth: int, store: ElementStore | None = None) -> PolygonTiling:
    """One 2c-gon per O-type vertex g(O) with g of word length <= depth.

    Edges are labelled with element ids looked up in ``store``; by default
    the store is enumerated to depth + c so that every edge of every tile
    built here is labelled.
    """
    p = _coerce(params)
    model = GeometricModel(p)
    if store is None:
        bound = None if model.finite else depth + p.c
        store = enumerate_elements(model, bound)
    t = geo.build_basic_triangle(p)
    kind = t.kind
    pts0, types0, words0 = polygon_template(p)
    labels0 = [geo.evaluate_word(w, p) for w in words0]
    m = len(pts0)
    centers = geo.PointIndex()
    vindex = geo.PointIndex()
    sk = Skeleton()
    tiles: list[PTile] = []
    for e in store:
        if e.layer > depth:
            break
        g = e.payload
        center = geo.apply(g, t.vO)
        _, fresh = centers.add(center)
        if not fresh:
            continue
        vids = []
        pts = []
        for i in range(m):
            q = geo.apply(g, pts0[i])
            vid, new = vindex.add(q)
            if new:
                sk.add_vertex(types0[i], q)
            vids.append(vid)
            pts.append(q)
        eids = []
        for i in range(m):
            u, v = vids[i], vids[(i + 1) % m]
            a, b = (u, v) if types0[i] == "A" else (v, u)
            lab = store.lookup(geo.compose(g, labels0[i]))
            word = torsion_normalize(e.word + words0[i], p)
            eids.append(sk.add_edge(a, b, lab, word))
        tiles.append(PTile(vids, eids, geo.turn_sign(kind, center, pts), center, e.word, e.id))
    return PolygonTiling(p, kind, store, tiles, sk, depth)


def abstract_polygon_tiling(store: ElementStore) -> PolygonTiling:
    """The polygon tiling of a finite model built from its permutation
    action alone: A-vertices are the x-cycles, B-vertices the y-cycles,
    tiles the xy-cycles, and every element d is the edge between the x- and
    y-cycles through it. Tiles are listed counterclockwise by convention,
    i.e. as d, d y^-1, d y^-1 x^-1, ..."""
    if not store.complete:
        raise IncompleteStoreError("abstract tilings need a complete store")
    sk = Skeleton()
    vertex_of = {}
    for typ, letter in (("A", X), ("B", Y)):
        for e in store:
            if (typ, e.id) in vertex_of:
                continue
            vid = sk.add_vertex(typ)
            d = e.id
            while (typ, d) not in vertex_of:
                vertex_of[(typ, d)] = vid
                d = store.act(d, letter)
    for e in store:
        sk.add_edge(vertex_of[("A", e.id)], vertex_of[("B", e.id)], e.id, e.word)
    tiles = []
    covered = set()
    for e in store:
        if e.id in covered:
            continue
        seq = [e.id]
        d = e.id
        while True:
            d = store.act(d, YI if len(seq) % 2 else XI)
            # in small quotients d can recur at an odd position; the tile
            # closes only after a full (y^-1 x^-1)-period
            if d == e.id and len(seq) % 2 == 0:
                break
            seq.append(d)
        # the tile is the xy-orbit of e, walked backwards
        covered.update(seq[::2])
        vids = []
        for i, d in enumerate(seq):
            vids.append(vertex_of[("A" if i % 2 == 0 else "B", d)])
        eids = [sk._by_element[d] for d in seq]
        tiles.append(PTile(vids, eids, 1, None, e.word, e.id))
    return PolygonTiling(None, None, store, tiles, sk)


def identify_skeleton_with_coset_geometry(tiling: PolygonTiling, geometry: CosetGeometry) -> Report:
    """Check the label-preserving bijection between the skeleton and the
    coset geometry: A-vertices to H-cosets, B-vertices to K-cosets, labelled
    edges to labelled edges.

    On truncated inputs the comparison window is the set of cosets whose
    members all label skeleton edges and the skeleton vertices whose full
    star (a or b edges) is labelled by elements of the geometry. Everything
    inside the window must match, and the window must not be empty.
    """
    sk = tiling.skeleton
    rep = Report("skeleton = coset geometry")
    inc = sk.incident()
    order = {"A": geometry.orders[0], "B": geometry.orders[1]}
    vmap: dict[int, object] = {}
    bad_star, skipped = [], 0
    for cosets, typ in ((geometry.h_vertices, "A"), (geometry.k_vertices, "B")):
        for c in cosets:
            found = [sk.edge_of_element(d) for d in c.members]
            if any(se is None for se in found):
                skipped += 1
                continue
            ends = {se.a if typ == "A" else se.b for se in found}
            if len(ends) != 1:
                bad_star.append((c.name, sorted(ends)))
                continue
            v = ends.pop()
            star = {sk.edges[i].element for i in inc[v]}
            if sk.types[v] != typ or star != set(c.members) or v in vmap:
                bad_star.append((c.name, v))
                continue
            vmap[v] = c
    rep.check("each windowed coset is the star of its own skeleton vertex of matching type",
              not bad_star and len(vmap) > 0, f"{len(vmap)} matched, {skipped} outside window")
    labels = geometry.labels
    unmatched = [v for v, es in inc.items()
                 if v not in vmap and len(es) == order[sk.types[v]]
                 and all(sk.edges[i].element in labels for i in es)]
    rep.check("every fully labelled skeleton vertex is a coset", not unmatched)
    bad_edge = []
    for e in geometry.edges:
        if e.h not in vmap.values() or e.k not in vmap.values():
            continue
        se = sk.edge_of_element(e.label)
        if se is None or vmap.get(se.a) is not e.h or vmap.get(se.b) is not e.k:
            bad_edge.append(e.label)
    extra = [i for i, se in enumerate(sk.edges)
             if se.a in vmap and se.b in vmap
             and (se.element is None or geometry.edge_of(se.element) is None)]
    n_edges = sum(1 for se in sk.edges if se.a in vmap and se.b in vmap)
    rep.check("labelled edges agree between matched vertices", not bad_edge and not extra,
              f"{n_edges} edges")
    if tiling.store.complete and len(sk._by_element) == len(tiling.store):
        rep.check("counts agree", len(sk.edges) == len(geometry.edges)
                  and sk.types.count("A") == len(geometry.h_vertices)
                  and sk.types.count("B") == len(geometry.k_vertices),
                  f"{len(sk.edges)} edges")
    rep.violations = bad_star + unmatched + bad_edge + extra
    return rep


def interior_labels(tiling: PolygonTiling) -> frozenset:
    """Labels of skeleton edges lying on two tiles of the tiling."""
    count: dict[int, int] = {}
    for t in tiling.tiles:
        for e in set(t.edge_ids):
            count[e] = count.get(e, 0) + 1
    sk = tiling.skeleton
    return frozenset(sk.edges[e].element for e, k in count.items()
                     if k == 2 and sk.edges[e].element is not None)


# --- derived tiling ---------------------------------------------------------

@dataclass
class DerivedTiling:
    vertices: dict                   # element id -> midpoint (None if abstract)
    edges: frozenset                 # (src, dst, "A" | "B")
    kind: CurvatureClass | None = None

    def degree(self, d) -> int:
        return sum((s == d) + (t == d) for s, t, _ in self.edges)

    def as_cayley(self) -> CayleyGraph:
        col = {"A": Color.X, "B": Color.Y}
        edges = frozenset((s, t, col[c]) for s, t, c in self.edges)
        return CayleyGraph(tuple(sorted(self.vertices)), edges, frozenset())

    def color_cycles(self, color: str) -> list[int]:
        """Lengths of the cycles formed by edges of one color (each vertex has
        exactly one outgoing edge of each color in a complete derived tiling)."""
        succ = {s: t for s, t, c in self.edges if c == color}
        seen, out = set(), []
        for v in sorted(succ):
            if v in seen:
                continue
            n, d = 0, v
            while d in succ and d not in seen:
                seen.add(d)
                d = succ[d]
                n += 1
            if d == v:
                out.append(n)
        return sorted(out)


def derived_tiling(tiling: PolygonTiling) -> DerivedTiling:
    sk = tiling.skeleton
    verts = {}
    for se in sk.edges:
        if se.element is None:
            continue
        pt = None
        if tiling.kind is not None:
            pt = geo.midpoint(tiling.kind, sk.points[se.a], sk.points[se.b])
        verts[se.element] = pt
    edges = set()
    for t in tiling.tiles:
        if t.orientation == 0:
            raise ValueError("degenerate tile orientation")
        m = len(t.edge_ids)
        for i in range(m):
            prev, cur = sk.edges[t.edge_ids[i - 1]], sk.edges[t.edge_ids[i]]
            if prev.element is None or cur.element is None:
                continue
            color = sk.types[t.vertex_ids[i]]
            # turning counterclockwise about the shared vertex through the
            # tile carries the later edge (in ccw order) onto the earlier one
            if t.orientation > 0:
                edges.add((cur.element, prev.element, color))
            else:
                edges.add((prev.element, cur.element, color))
    return DerivedTiling(verts, frozenset(edges), tiling.kind)


def derived_equals_cayley(derived: DerivedTiling, cayley: CayleyGraph,
                          vertices=None) -> Report:
    """A-colored edges against x-edges and B-colored against y-edges,
    identifying the midpoint of edge d with the element d; compared on
    ``vertices`` (default: the Cayley graph's interior, which is every
    vertex for a complete store)."""
    rep = Report("derived tiling = Cayley graph")
    keep = set(cayley.interior if vertices is None else vertices) & set(derived.vertices)
    rep.check("vertices compared", len(keep) > 0, f"{len(keep)} vertices")
    d = derived.as_cayley().restrict(keep)
    c = cayley.restrict(keep)
    for color in Color:
        dc, cc = d.colored(color), c.colored(color)
        rep.check(f"{'A' if color is Color.X else 'B'}-colored = {color.value}-colored",
                  dc == cc, f"{len(cc)} edges")
        rep.violations += [("derived only", e) for e in sorted(dc - cc)]
        rep.violations += [("cayley only", e) for e in sorted(cc - dc)]
    return rep


# --- ring enlargements of P_{n,n,n} -----------------------------------------

@dataclass
class PatchTile:
    word: Word
    iso: geo.Isometry
    center: object
    vertex_ids: list[int]


@dataclass
class Patch:
    """A sub-tiling Q of P_{n,n,n}, stored as tiles over shared vertex and
    tile-center indices."""

    params: VonDyckParams
    tiles: list[PatchTile] = field(default_factory=list)
    vertices: geo.PointIndex = field(default_factory=geo.PointIndex)
    centers: geo.PointIndex = field(default_factory=geo.PointIndex)
    members: set = field(default_factory=set)       # center ids in Q
    added: list = field(default_factory=list)       # (k, position, tile index) of the last enlargement

    @property
    def n(self) -> int:
        return self.params.a

    @property
    def kind(self):
        return self.params.curvature

    def tile_at(self, word: Word) -> tuple[int, PatchTile]:
        """Center id and a (not yet inserted) tile for word.P_0."""
        p = self.params
        g = geo.evaluate_word(word, p)
        t = geo.build_basic_triangle(p)
        cid, _ = self.centers.add(geo.apply(g, t.vO))
        pts0, _, _ = polygon_template(p)
        vids = [self.vertices.add(geo.apply(g, q))[0] for q in pts0]
        return cid, PatchTile(word, g, geo.apply(g, t.vO), vids)

    def insert(self, cid: int, tile: PatchTile) -> int:
        self.members.add(cid)
        self.tiles.append(tile)
        self._by_center[cid] = len(self.tiles) - 1
        return len(self.tiles) - 1

    def __post_init__(self):
        self._by_center: dict[int, int] = {}

    def copy(self) -> "Patch":
        q = Patch(self.params, list(self.tiles), self.vertices, self.centers, set(self.members))
        q._by_center = dict(self._by_center)
        return q

    def edge_count(self) -> int:
        keys = set()
        for t in self.tiles:
            m = len(t.vertex_ids)
            for i in range(m):
                keys.add(frozenset((t.vertex_ids[i], t.vertex_ids[(i + 1) % m])))
        return len(keys)


def basic_patch(n: int) -> Patch:
    if n < 3:
        raise ValueError("P_{n,n,n} enlargements need n >= 3")
    q = Patch(VonDyckParams(n, n, n))
    cid, tile = q.tile_at(())
    q.insert(cid, tile)
    return q


@dataclass
class RingBoundary:
    loop: list[int]             # boundary vertex ids v_1..v_N, Q on the left
    counts: list[int]           # i_k: number of Q-tiles at v_k
    points: list

    @property
    def N(self) -> int:
        return len(self.loop)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(self.loop[k], self.loop[(k + 1) % self.N]) for k in range(self.N)]


def _anchor_key(p):
    ang = round(cmath.phase(p) % (2 * math.pi), 9) % round(2 * math.pi, 9)
    return (ang, -round(abs(p), 9))


def ring_boundary(Q: Patch) -> RingBoundary:
    """Walk the edges that belong to exactly one tile of Q."""
    n = Q.n
    uses: dict[frozenset, list[tuple[int, int]]] = {}
    at_vertex: dict[int, int] = {}
    for t in Q.tiles:
        pts = [Q.vertices.items[v] for v in t.vertex_ids]
        if geo.turn_sign(Q.kind, t.center, pts) != 1:
            raise BoundaryError("tile is not counterclockwise")
        m = len(t.vertex_ids)
        for i in range(m):
            u, v = t.vertex_ids[i], t.vertex_ids[(i + 1) % m]
            uses.setdefault(frozenset((u, v)), []).append((u, v))
            at_vertex[u] = at_vertex.get(u, 0) + 1
    succ: dict[int, int] = {}
    for key, dirs in uses.items():
        if len(dirs) > 2:
            raise BoundaryError(f"edge shared by {len(dirs)} tiles")
        if len(dirs) == 1:
            u, v = dirs[0]
            if u in succ:
                raise BoundaryError(f"boundary passes twice through vertex {u}")
            succ[u] = v
    if not succ:
        raise BoundaryError("empty boundary")
    start = min(succ, key=lambda v: _anchor_key(Q.vertices.items[v]))
    loop = [start]
    v = succ[start]
    while v != start:
        if v not in succ or len(loop) > len(succ):
            raise BoundaryError("boundary is not a closed loop")
        loop.append(v)
        v = succ[v]
    if len(loop) != len(succ):
        raise BoundaryError(f"boundary has several components ({len(loop)} of {len(succ)} edges)")
    counts = [at_vertex[v] for v in loop]
    if any(not 1 <= i <= n - 1 for i in counts):
        raise BoundaryError(f"tile count outside 1..{n - 1} at a boundary vertex")
    return RingBoundary(loop, counts, [Q.vertices.items[v] for v in loop])


def _tiles_around(Q: Patch, v: int):
    """The n tiles hinged at vertex v in counterclockwise order, as
    (center id, tile) pairs, starting from a tile of Q."""
    p = Q.params
    for t in Q.tiles:
        if v in t.vertex_ids:
            j = t.vertex_ids.index(v)
            break
    else:
        raise BoundaryError(f"vertex {v} is not on Q")
    turn = X if j % 2 == 0 else Y
    base = t.word + _rot_word(j // 2, p.c)
    out = []
    for m in range(Q.n):
        word = torsion_normalize(base + (turn,) * m, p)
        out.append(Q.tile_at(word))
    return out


def expected_added(boundary: RingBoundary, n: int) -> int:
    return boundary.N * (n - 1) - sum(boundary.counts)


def enlarge(Q: Patch) -> tuple[Patch, int]:
    """Add every tile outside Q that meets the boundary of Q.

    Tiles are taken boundary vertex by boundary vertex and, around each
    vertex, counterclockwise from the tile across the incoming boundary edge,
    leaving the tile across the outgoing edge to the next vertex. The number
    added must be N(n-1) - sum(i_k).
    """
    bd = ring_boundary(Q)
    n = Q.n
    out = Q.copy()
    added = []
    N = bd.N
    for k, v in enumerate(bd.loop):
        around = _tiles_around(Q, v)
        inside = [cid in Q.members for cid, _ in around]
        # the last Q-tile before the external run, counterclockwise
        last_in = next(i for i in range(n) if inside[i] and not inside[(i + 1) % n])
        ext = []
        for s in range(1, n + 1):
            i = (last_in + s) % n
            if inside[i]:
                break
            ext.append(around[i])
        if len(ext) != n - bd.counts[k] or any(inside[(last_in + 1 + len(ext) + s) % n] is False
                                              for s in range(n - len(ext) - 1)):
            raise BoundaryError(f"tiles of Q are not contiguous around boundary vertex {k}")
        prev_v, next_v = bd.loop[k - 1], bd.loop[(k + 1) % N]
        if prev_v not in ext[0][1].vertex_ids or next_v not in ext[-1][1].vertex_ids:
            raise EnlargementError(f"external tiles at boundary vertex {k} do not meet its edges")
        for pos, (cid, tile) in enumerate(ext[:-1], start=1):
            if cid in out.members:
                raise EnlargementError(f"tile added twice (boundary vertex {k}, position {pos})")
            idx = out.insert(cid, tile)
            added.append((k, pos, idx))
    want = expected_added(bd, n)
    if len(added) != want:
        raise EnlargementError(f"added {len(added)} tiles, formula gives {want}")
    out.added = added
    return out, len(added)


def touching_tiles(Q: Patch) -> set[int]:
    """Center ids of all tiles outside Q sharing a vertex with Q, found by
    rotating about every vertex of every tile."""
    out = set()
    for t in Q.tiles:
        for v in t.vertex_ids:
            for cid, _ in _tiles_around(Q, v):
                if cid not in Q.members:
                    out.add(cid)
    return out


class EnumeratedEdge(NamedTuple):
    index: int
    word: Word
    ring: int
    fingerprint: tuple
    ends: tuple[int, int]       # vertex ids in the patch


def _tile_edges_from(Q: Patch, tile: PatchTile, start_vertex: int | None):
    p = Q.params
    _, types0, words0 = polygon_template(p)
    m = len(tile.vertex_ids)
    j0 = tile.vertex_ids.index(start_vertex) if start_vertex is not None else 0
    for s in range(m):
        i = (j0 + s) % m
        u, v = tile.vertex_ids[i], tile.vertex_ids[(i + 1) % m]
        yield (u, v) if types0[i] == "A" else (v, u), torsion_normalize(tile.word + words0[i], p)


def enumerate_dnnn(n: int, rings: int, patches: list | None = None) -> list[EnumeratedEdge]:
    """List the edges of P_{n,n,n}, hence the elements of D(n,n,n), without
    repetition: the 2n edges of P_0 counterclockwise from the identity edge,
    then the new edges of each tile added by successive enlargements.

    Each listed word is checked to carry (A, B) onto its edge, and the
    fingerprints of all listed elements must be distinct. If ``patches`` is
    a list, the successive sub-tilings are appended to it.
    """
    if rings < 0:
        raise ValueError("rings must be >= 0")
    Q = basic_patch(n)
    p = Q.params
    tri = geo.build_basic_triangle(p)
    listed: dict[tuple[int, int], int] = {}
    seen_fp: dict = {}
    out: list[EnumeratedEdge] = []

    def emit(ends, word, ring):
        if ends in listed:
            return
        g = geo.evaluate_word(word, p)
        a, b = Q.vertices.find(geo.apply(g, tri.vA)), Q.vertices.find(geo.apply(g, tri.vB))
        if (a, b) != ends:
            raise EnlargementError(f"word {format_word(word)} does not carry (A,B) onto its edge")
        fp = geo.fingerprint(g, tri)
        if fp in seen_fp:
            raise EnlargementError(f"repeated element {format_word(word)}")
        seen_fp[fp] = len(out)
        listed[ends] = len(out)
        out.append(EnumeratedEdge(len(out), word, ring, fp, ends))

    for ends, word in _tile_edges_from(Q, Q.tiles[0], None):
        emit(ends, word, 0)
    if patches is not None:
        patches.append(Q)
    for r in range(1, rings + 1):
        bd = ring_boundary(Q)
        try:
            Q, _ = enlarge(Q)
        except (BoundaryError, EnlargementError) as exc:
            raise type(exc)(f"ring {r}: {exc}") from exc
        for k, _, idx in Q.added:
            for ends, word in _tile_edges_from(Q, Q.tiles[idx], bd.loop[k]):
                emit(ends, word, r)
        if patches is not None:
            patches.append(Q)
    return out


def region_elements(store: ElementStore, Q: Patch) -> set[int]:
    """Ids of stored elements d whose edge d(A, B) lies on a tile of Q, i.e.
    d(O) or d x^-1(O) is the center of a tile of Q."""
    p = Q.params
    tri = geo.build_basic_triangle(p)
    xinv = geo.generator_isometry(p, XI)
    out = set()
    for e in store:
        for g in (e.payload, geo.compose(e.payload, xinv)):
            cid = Q.centers.find(geo.apply(g, tri.vO))
            if cid is not None and cid in Q.members:
                out.add(e.id)
                break
    return out
