"""The edge-colored, directed Cayley graph on the generators {x, y}."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .groups import ElementStore, multiply
from .presentation import Letter
from .report import IncompleteStoreError, Report

__all__ = ["Color", "CayleyGraph", "build_cayley", "verify_vertex_regularity",
           "cycle_structure", "successor_maps"]


class Color(str, Enum):
    X = "x"
    Y = "y"

    @property
    def letter(self) -> Letter:
        return Letter.X if self is Color.X else Letter.Y


@dataclass(frozen=True)
class CayleyGraph:
    vertices: tuple[int, ...]
    edges: frozenset  # of (src, dst, Color)
    interior: frozenset

    def colored(self, color: Color) -> set:
        return {(s, t) for s, t, c in self.edges if c == color}

    def restrict(self, keep: Iterable[int]) -> "CayleyGraph":
        """Induced subgraph on ``keep``."""
        keep = frozenset(keep) & frozenset(self.vertices)
        return CayleyGraph(tuple(sorted(keep)),
                           frozenset(e for e in self.edges if e[0] in keep and e[1] in keep),
                           self.interior & keep)

    def same_graph(self, other: "CayleyGraph") -> bool:
        return set(self.vertices) == set(other.vertices) and self.edges == other.edges

    def sorted_edges(self) -> list:
        return sorted(self.edges, key=lambda e: (e[0], e[2].value, e[1]))

    def to_json(self, store: ElementStore | None = None) -> dict:
        def vertex(v):
            rec = {"id": v, "interior": v in self.interior}
            if store is not None:
                rec["word"] = store[v].text
            return rec
        return {
            "schema": "vondyck.cayley/1",
            "vertices": [vertex(v) for v in self.vertices],
            "edges": [{"src": s, "dst": t, "color": c.value} for s, t, c in self.sorted_edges()],
        }

    def to_dot(self, store: ElementStore | None = None) -> str:
        lines = ["digraph cayley {"]
        for v in self.vertices:
            label = store[v].text if store is not None else str(v)
            lines.append(f'  {v} [label="{label}", interior={str(v in self.interior).lower()}];')
        for s, t, c in self.sorted_edges():
            lines.append(f'  {s} -> {t} [color="{c.value}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def dumps(self, store=None) -> str:
        return json.dumps(self.to_json(store), sort_keys=True)


def build_cayley(store: ElementStore) -> CayleyGraph:
    """Edges d -> d.x (color x) and d -> d.y (color y) wherever the target
    is known; a vertex is interior when all four of its actions are known."""
    if len(store) == 0:
        raise ValueError("empty store")
    edges = set()
    for e in store:
        for color in Color:
            t = store.act(e.id, color.letter)
            if t is not None:
                edges.add((e.id, t, color))
    return CayleyGraph(tuple(e.id for e in store), frozenset(edges), store.interior)


def successor_maps(graph: CayleyGraph) -> dict:
    succ = {Color.X: {}, Color.Y: {}}
    for s, t, c in graph.edges:
        if s in succ[c]:
            raise ValueError(f"vertex {s} has two outgoing {c.value}-edges")
        succ[c][s] = t
    return succ


def verify_vertex_regularity(graph: CayleyGraph, store: ElementStore) -> Report:
    """Check that left multiplication by each element is a colour- and
    direction-preserving automorphism and that only the identity fixes a
    vertex."""
    if not store.complete:
        raise IncompleteStoreError("vertex regularity needs a complete store")
    rep = Report("vertex regularity")
    verts = set(graph.vertices)
    not_auto, fixing = [], []
    for g in store:
        img = {d: multiply(store, g.id, d) for d in graph.vertices}
        if set(img.values()) != verts or any((img[s], img[t], c) not in graph.edges
                                             for s, t, c in graph.edges):
            not_auto.append(g.id)
        if g.id != 0 and any(img[d] == d for d in graph.vertices):
            fixing.append(g.id)
    rep.violations = [(g, "not an automorphism") for g in not_auto] + \
                     [(g, "fixes a vertex") for g in fixing]
    rep.check("left action is by colored automorphisms", not not_auto, f"{len(store)} elements")
    rep.check("only the identity fixes a vertex", not fixing)
    return rep


def cycle_structure(graph: CayleyGraph, colors: Sequence) -> list[int]:
    """Sorted orbit lengths of the composite action d -> d.c1.c2...

    ``colors`` is a sequence of :class:`Color` (or the strings "x", "y").
    """
    colors = [Color(c) for c in colors]
    succ = successor_maps(graph)
    for c in set(colors):
        if len(succ[c]) != len(graph.vertices):
            raise IncompleteStoreError("cycle structure needs every action to be known")

    def step(d):
        for c in colors:
            d = succ[c][d]
        return d

    seen = set()
    lengths = []
    for v in graph.vertices:
        if v in seen:
            continue
        n, d = 0, v
        while True:
            seen.add(d)
            d = step(d)
            n += 1
            if d == v:
                break
            if d in seen:
                raise ValueError("composite action is not a permutation")
        lengths.append(n)
    return sorted(lengths)


def cycle_length_counts(graph: CayleyGraph, colors: Sequence) -> Counter:
    return Counter(cycle_structure(graph, colors))
