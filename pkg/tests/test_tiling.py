import json
import math

import numpy as np
import pytest

from tile_oracle import TileOracle, bfs, region_fingerprints
from tile_oracle import key as _key, patch_keys as _patch_keys
from vondyck import geometry as geo
from vondyck.cayley import build_cayley
from vondyck.cosets import build_coset_geometry
from vondyck.groups import GeometricModel, enumerate_elements, make_model
from vondyck.presentation import Letter, parse_word
from vondyck.tiling import (BoundaryError, abstract_polygon_tiling, basic_patch,
                            build_polygon_tiling,
                            build_triangle_tiling, derived_equals_cayley, derived_tiling,
                            enlarge, enumerate_dnnn, expected_added,
                            identify_skeleton_with_coset_geometry, interior_labels,
                            polygon_template, ring_boundary, touching_tiles)

X, Y, XI, YI = Letter.X, Letter.Y, Letter.Xinv, Letter.Yinv


# --- polygon template ---------------------------------------------------------

def test_polygon_template_444():
    pts, types, words = polygon_template((4, 4, 4))
    assert types == ["A", "B"] * 4
    want = ["1", "y^-1", "y^-1 x^-1", "y^-1 x^-1 y^-1", "x y x y", "x y x", "x y", "x"]
    assert words == [parse_word(w) for w in want]
    t = geo.build_basic_triangle((4, 4, 4))
    for i, w in enumerate(words):
        g = geo.evaluate_word(w, (4, 4, 4))
        a_end, b_end = (pts[i], pts[(i + 1) % 8]) if types[i] == "A" else (pts[(i + 1) % 8], pts[i])
        assert abs(geo.apply(g, t.vA) - a_end) < 1e-9
        assert abs(geo.apply(g, t.vB) - b_end) < 1e-9
    assert geo.turn_sign(t.kind, t.vO, pts) == 1


@pytest.mark.parametrize("abc", [(3, 3, 3), (2, 4, 4), (2, 3, 6), (2, 3, 7), (2, 3, 5)])
def test_polygon_template_labels(abc):
    pts, types, words = polygon_template(abc)
    m = 2 * abc[2]
    t = geo.build_basic_triangle(abc)
    assert len(pts) == m
    for i, w in enumerate(words):
        assert len(w) <= abc[2]
        g = geo.evaluate_word(w, abc)
        ends = {_key(pts[i]), _key(pts[(i + 1) % m])}
        assert {_key(geo.apply(g, t.vA)), _key(geo.apply(g, t.vB))} == ends


# --- triangle tiling ----------------------------------------------------------

def test_triangle_tiling_333():
    tiles = build_triangle_tiling((3, 3, 3), 4)
    pos = [t for t in tiles if t.positive]
    neg = [t for t in tiles if not t.positive]
    assert pos and neg
    assert all(t.element is not None for t in pos)
    for t in tiles:
        assert t.orientation in (1, -1)
    # 2a = 6 triangles around the A-vertex of T_0, alternating in orientation
    tri = geo.build_basic_triangle((3, 3, 3))
    at_a = [t for t in tiles if any(abs(v - tri.vA) < 1e-9 and typ == "A"
                                    for v, typ in zip(t.vertices, t.types))]
    assert len(at_a) == 6
    assert sum(t.positive for t in at_a) == 3
    angle = sum(geo.angle_at(tri.kind, tri.vA, *[v for v in t.vertices if abs(v - tri.vA) > 1e-9])
                for t in at_a)
    assert abs(angle - 2 * math.pi) < 1e-9


def test_positive_triangles_are_distinct_elements():
    tiles = build_triangle_tiling((4, 4, 4), 3)
    pos = [t for t in tiles if t.positive]
    assert len({t.element for t in pos}) == len(pos)
    assert len({tuple(_key(v) for v in t.vertices) for t in pos}) == len(pos)


# --- polygon tiling -----------------------------------------------------------

@pytest.mark.parametrize("abc,tiles,a_verts,b_verts", [
    ((2, 3, 5), 12, 30, 20), ((2, 3, 4), 6, 12, 8), ((2, 3, 3), 4, 6, 4)])
def test_spherical_polygon_tilings_are_complete(abc, tiles, a_verts, b_verts):
    run_store = enumerate_elements(GeometricModel(abc))
    pt = build_polygon_tiling(abc, max(e.layer for e in run_store), run_store)
    assert len(pt.tiles) == tiles
    assert pt.skeleton.types.count("A") == a_verts
    assert pt.skeleton.types.count("B") == b_verts
    assert len(pt.skeleton.edges) == len(run_store)
    assert pt.skeleton.is_bipartite()
    geometry = build_coset_geometry(run_store)
    assert identify_skeleton_with_coset_geometry(pt, geometry).ok


@pytest.mark.parametrize("abc,depth", [((3, 3, 3), 4), ((2, 4, 4), 4), ((4, 4, 4), 2),
                                       ((2, 3, 7), 4)])
def test_skeleton_properties(abc, depth):
    pt = build_polygon_tiling(abc, depth)
    sk = pt.skeleton
    assert sk.is_bipartite()
    for t in pt.tiles:
        assert len(t.vertex_ids) == 2 * abc[2]
        assert [sk.types[v] for v in t.vertex_ids] == ["A", "B"] * abc[2]
        assert t.orientation == 1
    tri = geo.build_basic_triangle(abc)
    labelled = 0
    for se in sk.edges:
        assert sk.types[se.a] == "A" and sk.types[se.b] == "B"
        if se.element is None:
            continue
        labelled += 1
        # the canonical word of the label carries (A, B) onto the edge
        g = geo.evaluate_word(pt.store[se.element].word, abc)
        assert abs(geo.apply(g, tri.vA) - sk.points[se.a]) < 1e-8
        assert abs(geo.apply(g, tri.vB) - sk.points[se.b]) < 1e-8
        g = geo.evaluate_word(se.word, abc)
        assert abs(geo.apply(g, tri.vA) - sk.points[se.a]) < 1e-8
    assert labelled == len(sk.edges)


def test_polygon_tiling_matches_tile_oracle():
    pt = build_polygon_tiling((4, 4, 4), 2)
    oracle = TileOracle((4, 4, 4), 8)
    full = oracle.full_tiles()
    for t in pt.tiles:
        verts = {_key(pt.skeleton.points[v]) for v in t.vertex_ids}
        assert full[_key(t.center)] == verts


def test_tile_stabilizer_is_generated_by_xy():
    store = enumerate_elements(GeometricModel((2, 3, 5)))
    t = geo.build_basic_triangle((2, 3, 5))
    fixing = [e for e in store if np.linalg.norm(geo.apply(e.payload, t.vO) - t.vO) < 1e-9]
    assert len(fixing) == 5
    xy = store.id_of_word((X, Y))
    powers = {0}
    d = 0
    for _ in range(5):
        d = store.act(store.act(d, X), Y)
        powers.add(d)
    assert {e.id for e in fixing} == powers and xy in powers


def test_tiling_json():
    pt = build_polygon_tiling((4, 4, 4), 1)
    doc = pt.to_json()
    assert doc["schema"] == "vondyck.tiling/1"
    assert len(doc["tiles"]) == len(pt.tiles) == 4  # y(O) = x^-1(O) since xy fixes O
    assert json.dumps(doc, sort_keys=True) == json.dumps(build_polygon_tiling((4, 4, 4), 1).to_json(),
                                                         sort_keys=True)


@pytest.mark.parametrize("name,tiles,size", [("z6", 1, 12), ("b23", 9, 6)])
def test_abstract_tilings(name, tiles, size):
    store = enumerate_elements(make_model(name))
    pt = abstract_polygon_tiling(store)
    assert len(pt.tiles) == tiles
    assert all(len(t.edge_ids) == size for t in pt.tiles)
    assert pt.skeleton.is_bipartite()
    assert identify_skeleton_with_coset_geometry(pt, build_coset_geometry(store)).ok


# --- skeleton = coset geometry, derived tiling = Cayley graph ----------------

@pytest.mark.parametrize("abc,depth", [((3, 3, 3), 3), ((4, 4, 4), 1), ((2, 3, 7), 4)])
def test_identify_on_windows(abc, depth):
    pt = build_polygon_tiling(abc, depth)
    geometry = build_coset_geometry(pt.store)
    rep = identify_skeleton_with_coset_geometry(pt, geometry)
    assert rep.ok, rep.violations


def test_identify_detects_a_wrong_label():
    store = enumerate_elements(GeometricModel((2, 3, 4)))
    pt = build_polygon_tiling((2, 3, 4), max(e.layer for e in store), store)
    geometry = build_coset_geometry(store)
    sk = pt.skeleton
    e0, e1 = sk.edges[0], sk.edges[5]
    sk.edges[0], sk.edges[5] = e0._replace(element=e1.element), e1._replace(element=e0.element)
    sk._by_element[e0.element], sk._by_element[e1.element] = 5, 0
    assert not identify_skeleton_with_coset_geometry(pt, geometry).ok


@pytest.mark.parametrize("abc,depth", [((3, 3, 3), 3), ((2, 4, 4), 3), ((4, 4, 4), 2)])
def test_derived_degree_four_on_interior(abc, depth):
    pt = build_polygon_tiling(abc, depth)
    der = derived_tiling(pt)
    inner = interior_labels(pt) & build_cayley(pt.store).interior
    # vertices whose two tiles are both in the window
    full = {d for d in inner if all(x in der.vertices for x in _neighbours(pt.store, d))}
    assert len(full) > 10
    for d in full:
        assert der.degree(d) == 4


def _neighbours(store, d):
    return [store.act(d, l) for l in Letter]


@pytest.mark.parametrize("abc", [(2, 3, 5), (2, 3, 4), (2, 2, 5)])
def test_derived_complete_color_cycles(abc):
    store = enumerate_elements(GeometricModel(abc))
    pt = build_polygon_tiling(abc, max(e.layer for e in store), store)
    der = derived_tiling(pt)
    a, b, _ = abc
    assert set(der.color_cycles("A")) == {a}
    assert set(der.color_cycles("B")) == {b}
    assert derived_equals_cayley(der, build_cayley(store)).ok


def test_derived_444_octagon_of_alternating_arrows():
    pt = build_polygon_tiling((4, 4, 4), 0)
    der = derived_tiling(pt)
    assert len(der.vertices) == 8 and len(der.edges) == 8
    succ = {s: (t, c) for s, t, c in der.edges}
    colors = []
    d = 0
    for _ in range(8):
        d, c = succ[d]
        colors.append(c)
    assert d == 0 and colors in (["A", "B"] * 4, ["B", "A"] * 4)
    # the arrows run along the x- and y-edges of the Cayley graph
    assert derived_equals_cayley(der, build_cayley(pt.store), set(der.vertices)).ok


@pytest.mark.parametrize("abc,depth", [((3, 3, 3), 4), ((4, 4, 4), 2)])
def test_derived_equals_cayley_on_window(abc, depth):
    pt = build_polygon_tiling(abc, depth)
    cay = build_cayley(pt.store)
    geometry = build_coset_geometry(pt.store)
    window = interior_labels(pt) & cay.interior & geometry.labels
    assert derived_equals_cayley(derived_tiling(pt), cay, window).ok


def test_derived_midpoints_are_edge_midpoints():
    pt = build_polygon_tiling((4, 4, 4), 1)
    der = derived_tiling(pt)
    sk = pt.skeleton
    for se in sk.edges:
        m = der.vertices[se.element]
        pa, pb = sk.points[se.a], sk.points[se.b]
        assert abs(geo.distance(pt.kind, pa, m) - geo.distance(pt.kind, m, pb)) < 1e-9


# --- ring enlargements ----------------------------------------------------------

def test_ring_boundary_examples():
    q = basic_patch(3)
    bd = ring_boundary(q)
    assert bd.N == 6 and bd.counts == [1] * 6
    q1, added = enlarge(q)
    assert added == 6
    bd1 = ring_boundary(q1)
    assert bd1.N == 18
    assert ring_boundary(basic_patch(4)).N == 8
    # the anchor is the vertex of least polar angle; the loop runs counterclockwise
    pts = bd.points
    assert abs(pts[0] - geo.build_basic_triangle((3, 3, 3)).vA) < 1e-9
    assert geo.turn_sign(q.kind, 0j, pts) == 1


@pytest.mark.parametrize("n,rings,depth", [(3, 3, 14), (4, 2, 12), (5, 1, 10)])
def test_added_counts_formula_and_brute_force(n, rings, depth):
    patches = []
    enumerate_dnnn(n, rings, patches)
    oracle = TileOracle((n, n, n), depth)
    for q, nxt in zip(patches, patches[1:]):
        bd = ring_boundary(q)
        added = len(nxt.tiles) - len(q.tiles)
        centers, verts = _patch_keys(q)
        brute = oracle.touching(centers, verts)
        assert added == expected_added(bd, n) == len(brute)
        assert {_key(t.center) for t in nxt.tiles} == centers | brute
        assert touching_tiles(q) and len(touching_tiles(q)) == added


def test_ring_counts_333_and_444():
    patches = []
    enumerate_dnnn(3, 2, patches)
    assert [len(q.tiles) for q in patches] == [1, 7, 19]
    bd1 = ring_boundary(patches[1])
    assert len(patches[2].tiles) - 7 == 18 * 2 - sum(bd1.counts) == 12
    patches = []
    enumerate_dnnn(4, 1, patches)
    assert len(patches[1].tiles) - 1 == 16


def test_tiles_grow_as_expected():
    counts = {}
    for n, rings in [(3, 4), (4, 3), (5, 2)]:
        patches = []
        enumerate_dnnn(n, rings, patches)
        counts[n] = [len(q.tiles) for q in patches]
    assert counts[3] == [1, 7, 19, 37, 61]
    assert counts[4] == [1, 17, 177, 1761]
    assert counts[5] == [1, 31, 691]


def test_enumerate_n4_rings0():
    rows = enumerate_dnnn(4, 0)
    assert len(rows) == 8
    _, _, words = polygon_template((4, 4, 4))
    assert [r.word for r in rows] == words
    assert rows[0].index == 0 and rows[0].word == ()


def test_enumerate_n3_rings0():
    rows = enumerate_dnnn(3, 0)
    assert len(rows) == 6 and rows[0].word == ()


@pytest.mark.parametrize("n,rings,depth", [(3, 3, 14), (4, 2, 12)])
def test_enumeration_is_the_region_of_the_patch(n, rings, depth):
    patches = []
    rows = enumerate_dnnn(n, rings, patches)
    Q = patches[-1]
    assert len({r.fingerprint for r in rows}) == len(rows) == Q.edge_count()
    # elements d whose edge d(A,B) lies on a tile of Q, from the BFS store
    assert max(e.layer for e in bfs((n, n, n), depth)) == depth
    region = region_fingerprints(Q, depth)
    assert region == {r.fingerprint for r in rows}


def test_boundary_rejects_a_pinched_patch():
    # P_0 and x^2 P_0 meet only at the vertex A, so the boundary is not a simple loop
    q = basic_patch(4)
    cid, tile = q.tile_at((X, X))
    shared = set(tile.vertex_ids) & set(q.tiles[0].vertex_ids)
    assert len(shared) == 1
    q.insert(cid, tile)
    with pytest.raises(BoundaryError):
        ring_boundary(q)
    with pytest.raises(BoundaryError):
        enlarge(q)
