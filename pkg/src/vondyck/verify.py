"""The full duality check list for one model, shared by the CLI and tests.

Finite models are checked exhaustively. An infinite model is checked on a
window: the polygon tiling grown from elements of word length <= depth,
with labels resolved in a store deep enough to name every edge of it, and
comparisons restricted to elements whose neighbourhoods are fully known.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cayley import CayleyGraph, build_cayley, verify_vertex_regularity
from .cosets import (CosetGeometry, build_coset_geometry, reconstruct_cayley,
                     verify_b_equivariance, verify_edge_action)
from .groups import ElementStore, GeometricModel, enumerate_elements, make_model
from .presentation import _coerce
from .report import Report
from .tiling import (PolygonTiling, abstract_polygon_tiling, build_polygon_tiling,
                     derived_equals_cayley, derived_tiling,
                     identify_skeleton_with_coset_geometry, interior_labels)

__all__ = ["DualityRun", "compare_cayley", "prepare", "duality_checks"]


@dataclass
class DualityRun:
    store: ElementStore
    cayley: CayleyGraph
    geometry: CosetGeometry
    tiling: PolygonTiling
    window: frozenset       # element ids every comparison is restricted to

    @property
    def truncated(self) -> bool:
        return not self.store.complete


def compare_cayley(rebuilt: CayleyGraph, built: CayleyGraph, keep=None,
                   title: str = "reconstructed = Cayley graph") -> Report:
    rep = Report(title)
    if keep is not None:
        rebuilt, built = rebuilt.restrict(keep), built.restrict(keep)
    rep.check("same vertices", set(rebuilt.vertices) == set(built.vertices) and len(built.vertices) > 0,
              f"{len(built.vertices)} vertices")
    rep.check("same colored directed edges", rebuilt.edges == built.edges,
              f"{len(built.edges)} edges")
    rep.violations = sorted(rebuilt.edges ^ built.edges, key=lambda e: (e[0], e[1], e[2].value))
    return rep


def prepare(model: str, params=None, depth: int | None = None) -> DualityRun:
    if model != "geometric":
        store = enumerate_elements(make_model(model))
        tiling = abstract_polygon_tiling(store)
    else:
        p = _coerce(params)
        gm = GeometricModel(p)
        if gm.finite:
            store = enumerate_elements(gm)
            tiling = build_polygon_tiling(p, max(e.layer for e in store), store)
        else:
            if depth is None:
                raise ValueError(f"{p} is infinite; a depth is required")
            tiling = build_polygon_tiling(p, depth)
            store = tiling.store
    cayley = build_cayley(store)
    geometry = build_coset_geometry(store)
    if store.complete:
        window = frozenset(e.id for e in store)
    else:
        window = interior_labels(tiling) & cayley.interior & geometry.labels
    return DualityRun(store, cayley, geometry, tiling, window)


def duality_checks(run: DualityRun) -> list[Report]:
    out = []
    if run.store.complete:
        out.append(verify_vertex_regularity(run.cayley, run.store))
        out.append(verify_edge_action(run.geometry, run.store))
        out.append(compare_cayley(reconstruct_cayley(run.geometry), run.cayley))
    else:
        out.append(verify_edge_action(run.geometry, run.store, allow_partial=True))
        keep = run.cayley.interior & run.geometry.labels
        out.append(compare_cayley(reconstruct_cayley(run.geometry), run.cayley, keep))
    out.append(verify_b_equivariance(run.geometry, run.store))
    out.append(identify_skeleton_with_coset_geometry(run.tiling, run.geometry))
    out.append(derived_equals_cayley(derived_tiling(run.tiling), run.cayley, run.window))
    return out
