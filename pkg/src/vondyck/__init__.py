"""Von Dyck groups D(a,b,c) = <x, y | x^a = y^b = (xy)^c = 1>, their Cayley
graphs and coset geometries, and the tilings that realize both."""

from .presentation import (CurvatureClass, Letter, VonDyckParams, classify_curvature,
                           format_word, free_reduce, parse_word, torsion_normalize)
from .groups import (BurnsideB23, ElementStore, GeometricModel, ToyZ6, b23_multiply,
                     canonical_word, enumerate_elements, make_model, multiply)
from .cayley import CayleyGraph, Color, build_cayley, cycle_structure, verify_vertex_regularity
from .cosets import (CosetGeometry, b_map, build_coset_geometry, edge_label, psi,
                     reconstruct_cayley, verify_b_equivariance, verify_edge_action)
from .tiling import (abstract_polygon_tiling, build_polygon_tiling, build_triangle_tiling,
                     derived_equals_cayley, derived_tiling, enlarge, enumerate_dnnn,
                     identify_skeleton_with_coset_geometry, ring_boundary)

__all__ = [
    "CurvatureClass", "Letter", "VonDyckParams", "classify_curvature", "format_word",
    "free_reduce", "parse_word", "torsion_normalize",
    "BurnsideB23", "ElementStore", "GeometricModel", "ToyZ6", "b23_multiply",
    "canonical_word", "enumerate_elements", "make_model", "multiply",
    "CayleyGraph", "Color", "build_cayley", "cycle_structure", "verify_vertex_regularity",
    "CosetGeometry", "b_map", "build_coset_geometry", "edge_label", "psi",
    "reconstruct_cayley", "verify_b_equivariance", "verify_edge_action",
    "abstract_polygon_tiling", "build_polygon_tiling", "build_triangle_tiling",
    "derived_equals_cayley", "derived_tiling", "enlarge", "enumerate_dnnn",
    "identify_skeleton_with_coset_geometry", "ring_boundary",
]
