"""Arc complexes, flip graphs and cluster seeds of ciliated surfaces."""

from .surface import CiliatedSurface, SurfaceClass, SurfaceTag, parse_surface
from .arcs import Chord, SidedChord, Radius, Loop, Winding, parse_arc, enumerate_arcs, iota, compatible
from .triangulation import ExplicitTriangulation, GluedTriangulation, fan, flip, flippable, flip_glued, validate
from .complexes import SimplicialComplex, FlipGraph, build_arc_complex, build_flip_graph, ball, stats
from .cluster import Seed, b_matrix, mutate, exchange_check

__version__ = "0.1.0"

__all__ = [
    "CiliatedSurface", "SurfaceClass", "SurfaceTag", "parse_surface",
    "Chord", "SidedChord", "Radius", "Loop", "Winding", "parse_arc", "enumerate_arcs", "iota", "compatible",
    "ExplicitTriangulation", "GluedTriangulation", "fan", "flip", "flippable", "flip_glued", "validate",
    "SimplicialComplex", "FlipGraph", "build_arc_complex", "build_flip_graph", "ball", "stats",
    "Seed", "b_matrix", "mutate", "exchange_check",
]
