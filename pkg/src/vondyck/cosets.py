"""The rank-two coset geometry T = G/H u G/K as a bipartite graph.

H = <x> and K = <y>. Vertices are the H- and K-cosets, an edge joins two
cosets that intersect, and every edge carries as label the unique element
in that intersection. ``b_map`` sends an element d to the edge (dH, dK)
and ``psi`` recovers the generator power relating two incident edges,
which is all that is needed to rebuild the Cayley graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .cayley import CayleyGraph, Color
from .groups import ElementNotFound, ElementStore, multiply
from .presentation import Letter, Word
from .report import IncompleteStoreError, Report

__all__ = [
    "Coset", "CosetEdge", "CosetGeometry", "NotAnEdge", "NotIncident",
    "build_coset_geometry", "edge_label", "b_map", "psi", "coset_left_action",
    "edge_left_action", "verify_edge_action", "verify_b_equivariance",
    "reconstruct_cayley",
]


class NotAnEdge(KeyError):
    pass


class NotIncident(ValueError):
    pass


@dataclass(frozen=True)
class Coset:
    type: str                   # "H" or "K"
    rep: int                    # least element id in the coset
    members: tuple[int, ...]    # sorted
    cycle: tuple[int, ...]      # rep, rep.g, rep.g^2, ... with g = x or y

    @property
    def name(self) -> str:
        return f"{self.type}{self.rep}"

    def position(self, d: int) -> int:
        return self.cycle.index(d)


class CosetEdge(NamedTuple):
    h: Coset
    k: Coset
    label: int


@dataclass
class CosetGeometry:
    h_vertices: list[Coset]
    k_vertices: list[Coset]
    edges: list[CosetEdge]
    orders: tuple[int, int]
    _h_of: dict = field(default_factory=dict, repr=False)
    _k_of: dict = field(default_factory=dict, repr=False)
    _by_label: dict = field(default_factory=dict, repr=False)
    _by_pair: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for h in self.h_vertices:
            for m in h.members:
                self._h_of[m] = h
        for k in self.k_vertices:
            for m in k.members:
                self._k_of[m] = k
        for e in self.edges:
            self._by_label[e.label] = e
            self._by_pair[(e.h.rep, e.k.rep)] = e

    @property
    def labels(self) -> frozenset:
        return frozenset(self._by_label)

    @property
    def basic_edge(self) -> CosetEdge:
        return self._by_label[0]

    def h_of(self, d: int) -> Coset | None:
        return self._h_of.get(d)

    def k_of(self, d: int) -> Coset | None:
        return self._k_of.get(d)

    def edge_of(self, d: int) -> CosetEdge | None:
        return self._by_label.get(d)

    def edge_between(self, h: Coset, k: Coset) -> CosetEdge | None:
        return self._by_pair.get((h.rep, k.rep))

    def star(self, v: Coset) -> list[CosetEdge]:
        """Edges hinged at ``v`` in rotation order (d, d.g, d.g^2, ...)."""
        return [self._by_label[m] for m in v.cycle if m in self._by_label]

    def to_json(self, store: ElementStore | None = None) -> dict:
        def vertex(c):
            return {"id": c.name, "type": c.type, "rep": c.rep, "members": list(c.members)}

        def edge(e):
            rec = {"h": e.h.name, "k": e.k.name, "label": e.label}
            if store is not None:
                rec["word"] = store[e.label].text
            return rec
        return {
            "schema": "vondyck.coset/1",
            "vertices": [vertex(c) for c in self.h_vertices + self.k_vertices],
            "edges": [edge(e) for e in self.edges],
        }

    def dumps(self, store=None) -> str:
        return json.dumps(self.to_json(store), sort_keys=True)

    def to_dot(self, store: ElementStore | None = None) -> str:
        lines = ["graph coset_geometry {"]
        for c in self.h_vertices:
            lines.append(f'  {c.name} [type="H", color="red"];')
        for c in self.k_vertices:
            lines.append(f'  {c.name} [type="K", color="blue"];')
        for e in self.edges:
            label = store[e.label].text if store is not None else str(e.label)
            lines.append(f'  {e.h.name} -- {e.k.name} [label="{label}", element={e.label}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _orbit(store: ElementStore, d: int, letter: Letter, interior: frozenset):
    """The cycle d, d.g, d.g^2, ... if it closes through interior elements."""
    cyc = [d]
    cur = d
    while True:
        if cur not in interior:
            return None
        cur = store.act(cur, letter)
        if cur == d:
            return tuple(cyc)
        cyc.append(cur)


def _cosets(store, letter, tag, interior) -> dict[int, Coset]:
    out: dict[int, Coset] = {}
    seen: set[int] = set()
    for d in sorted(interior):
        if d in seen:
            continue
        cyc = _orbit(store, d, letter, interior)
        if cyc is None:
            continue
        seen.update(cyc)
        rep = min(cyc)
        i = cyc.index(rep)
        out[rep] = Coset(tag, rep, tuple(sorted(cyc)), cyc[i:] + cyc[:i])
    return out


def build_coset_geometry(store: ElementStore) -> CosetGeometry:
    """All H- and K-cosets (only those made of interior elements when the
    store is truncated) and the labelled incidence edges between them."""
    interior = store.interior
    hs = _cosets(store, Letter.X, "H", interior)
    ks = _cosets(store, Letter.Y, "K", interior)
    h_of = {m: h for h in hs.values() for m in h.members}
    k_of = {m: k for k in ks.values() for m in k.members}
    edges: dict[tuple[int, int], CosetEdge] = {}
    for d in sorted(set(h_of) & set(k_of)):
        h, k = h_of[d], k_of[d]
        if (h.rep, k.rep) in edges:
            continue
        common = set(h.members) & set(k.members)
        if len(common) != 1:
            raise ValueError(f"cosets {h.name} and {k.name} meet in {sorted(common)}")
        edges[(h.rep, k.rep)] = CosetEdge(h, k, common.pop())
    return CosetGeometry(
        h_vertices=[hs[r] for r in sorted(hs)],
        k_vertices=[ks[r] for r in sorted(ks)],
        edges=[edges[p] for p in sorted(edges)],
        orders=(store.model.orders[0], store.model.orders[1]),
    )


def edge_label(geometry: CosetGeometry, h: Coset, k: Coset) -> int:
    e = geometry.edge_between(h, k)
    if e is None:
        raise NotAnEdge((h.name, k.name))
    return e.label


def b_map(geometry: CosetGeometry, d: int) -> CosetEdge:
    """The edge (dH, dK)."""
    h, k = geometry.h_of(d), geometry.k_of(d)
    if h is None or k is None:
        raise ElementNotFound(d)
    e = geometry.edge_between(h, k)
    if e is None:
        raise ElementNotFound(d)
    return e


def psi(geometry: CosetGeometry, e1: CosetEdge, e2: CosetEdge) -> Word:
    """The power x^r (shared H-vertex) or y^s (shared K-vertex), as a word
    with 0 <= r < a, 0 <= s < b, carrying label(e1) to label(e2)."""
    if e1 == e2:
        return ()
    if e1.h == e2.h:
        v, letter = e1.h, Letter.X
    elif e1.k == e2.k:
        v, letter = e1.k, Letter.Y
    else:
        raise NotIncident((e1.label, e2.label))
    r = (v.position(e2.label) - v.position(e1.label)) % len(v.cycle)
    return (letter,) * r


def coset_left_action(store: ElementStore, geometry: CosetGeometry, g: int, c: Coset):
    """g.c as a coset of the geometry, or None if it cannot be resolved."""
    try:
        img = {multiply(store, g, m) for m in c.members}
    except ElementNotFound:
        return None
    lookup = geometry.h_of if c.type == "H" else geometry.k_of
    target = lookup(next(iter(img)))
    if target is None or set(target.members) != img:
        return None
    return target


def edge_left_action(store, geometry, g: int, e: CosetEdge):
    h = coset_left_action(store, geometry, g, e.h)
    k = coset_left_action(store, geometry, g, e.k)
    if h is None or k is None:
        return None
    return geometry.edge_between(h, k)


def verify_edge_action(geometry: CosetGeometry, store: ElementStore,
                       allow_partial: bool = False) -> Report:
    """Edge-transitivity and edge-regularity of the left action.

    On a truncated store (``allow_partial=True``) only the actions whose
    images are materialized are checked.
    """
    if not store.complete and not allow_partial:
        raise IncompleteStoreError("edge action needs a complete store")
    rep = Report("edge action")
    basic = geometry.basic_edge
    reached = set()
    stab_basic = []
    stab_other = []
    resolved = 0
    edge_set = set(geometry.edges)
    for g in store:
        img = edge_left_action(store, geometry, g.id, basic)
        if img is not None:
            reached.add(img)
            if img == basic:
                stab_basic.append(g.id)
        if g.id == 0:
            continue
        for e in geometry.edges:
            ge = edge_left_action(store, geometry, g.id, e)
            if ge is None:
                continue
            resolved += 1
            if ge == e:
                stab_other.append((g.id, e.label))
    missing = edge_set - reached
    if store.complete:
        rep.check("transitive: every edge is g.(H,K)", not missing,
                  f"{len(edge_set)} edges, {len(store)} elements")
    else:
        # an edge labelled d is d.(H,K); check that whenever it resolves
        bad = [e.label for e in geometry.edges
               if (img := edge_left_action(store, geometry, e.label, basic)) is not None and img != e]
        rep.check("transitive on resolvable edges: label(e).(H,K) = e", not bad,
                  f"{len(edge_set)} edges")
    rep.check("stabilizer of the basic edge is trivial", stab_basic == [0])
    rep.check("no non-identity element fixes an edge", not stab_other, f"{resolved} pairs")
    rep.violations = [("missing", e.label) for e in missing] if store.complete else []
    rep.violations += [("fixes", p) for p in stab_other]
    return rep


def verify_b_equivariance(geometry: CosetGeometry, store: ElementStore,
                          pairs: Iterable[tuple[int, int]] | None = None) -> Report:
    """b(d'd) = d'.b(d) over all pairs (or the given ones), skipping pairs
    whose products are not materialized."""
    rep = Report("b equivariance")
    if pairs is None:
        labels = sorted(geometry.labels)
        pairs = ((g.id, d) for g in store for d in labels)
    bad, tested = [], 0
    for g, d in pairs:
        e = geometry.edge_of(d)
        if e is None:
            continue
        try:
            gd = multiply(store, g, d)
        except ElementNotFound:
            continue
        lhs = geometry.edge_of(gd)
        rhs = edge_left_action(store, geometry, g, e)
        if lhs is None or rhs is None:
            continue
        tested += 1
        if lhs != rhs:
            bad.append((g, d))
    labels = [e.label for e in geometry.edges]
    rep.check("b is a bijection onto edges", len(set(labels)) == len(labels) == len(geometry.labels))
    rep.check("b(d'd) = d'.b(d)", not bad and tested > 0, f"{tested} pairs")
    rep.violations = bad
    return rep


def reconstruct_cayley(geometry: CosetGeometry) -> CayleyGraph:
    """Rebuild the Cayley graph from the coset geometry alone: an x-edge
    label(e1) -> label(e2) whenever psi(e1, e2) = x, likewise for y."""
    vertices = sorted(geometry.labels)
    edges = set()
    for v in geometry.h_vertices + geometry.k_vertices:
        star = geometry.star(v)
        for e1 in star:
            for e2 in star:
                if e1 == e2:
                    continue
                w = psi(geometry, e1, e2)
                if w == (Letter.X,):
                    edges.add((e1.label, e2.label, Color.X))
                elif w == (Letter.Y,):
                    edges.add((e1.label, e2.label, Color.Y))
    out_deg: dict = {}
    in_deg: dict = {}
    for s, t, c in edges:
        out_deg.setdefault(s, set()).add(c)
        in_deg.setdefault(t, set()).add(c)
    interior = frozenset(v for v in vertices
                         if len(out_deg.get(v, ())) == 2 and len(in_deg.get(v, ())) == 2)
    return CayleyGraph(tuple(vertices), frozenset(edges), interior)
