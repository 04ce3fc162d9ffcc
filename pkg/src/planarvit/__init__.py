"""Max flow and edge/vertex vitality in capacitated planar graphs.

Typical use::

    from planarvit import analyze, vitality_report
    from planarvit.generate import grid_instance

    g = grid_instance(8, 1, 5, seed=1)
    a = analyze(g)              # dual, sliced dual, shortest path family
    rep = vitality_report(g, mode="approx", c=10, delta=1)
"""

from .errors import PlanarVitError, ValidationError
from .exact import VitalityReport, VitalityValue
from .graphio import emit_graph, emit_report, parse_graph, read_graph
from .pipeline import Analysis, analyze, vitality_report
from .planar import PlaneGraph, build_dual, build_plane_graph, rotations_from_coords

__all__ = [
    "Analysis",
    "PlaneGraph",
    "PlanarVitError",
    "ValidationError",
    "VitalityReport",
    "VitalityValue",
    "analyze",
    "build_dual",
    "build_plane_graph",
    "emit_graph",
    "emit_report",
    "parse_graph",
    "read_graph",
    "rotations_from_coords",
    "vitality_report",
]
