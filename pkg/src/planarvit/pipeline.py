"""One-call setup: dual, sliced dual and path family for a plane graph."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .approx import approx_vitality, clamp_capacities
from .decomposition import SlicedDual, slice_dual
from .errors import BadParams
from .exact import VitalityReport, all_edge_vitality, all_vertex_vitality
from .paths import PathFamily, noncrossing_family
from .planar import DualGraph, PlaneGraph, build_dual


@dataclass(eq=False)
class Analysis:
    graph: PlaneGraph
    dual: DualGraph
    sd: SlicedDual
    fam: PathFamily

    @property
    def mf(self) -> float:
        return min(self.fam.d)


def analyze(g: PlaneGraph) -> Analysis:
    d = build_dual(g)
    sd = slice_dual(d)
    return Analysis(g, d, sd, noncrossing_family(sd))


def vitality_report(
    g: PlaneGraph,
    mode: str = "exact",
    scope: str = "both",
    c: float | None = None,
    delta: float | None = None,
    clamp: bool = False,
    *,
    schedule: str = "maximal",
) -> VitalityReport:
    """Vitality of the requested elements of ``g`` as a report.

    With ``clamp`` capacities above MF are lowered to MF first (this changes
    no value); the qualifier c(v) is then taken on the clamped graph, while
    rows still show the capacities of the input.
    """
    if mode not in ("exact", "approx"):
        raise BadParams(f"mode must be exact or approx, got {mode!r}")
    if scope not in ("edges", "vertices", "both"):
        raise BadParams(f"scope must be edges, vertices or both, got {scope!r}")
    a = analyze(g)
    if clamp:
        h = clamp_capacities(g, a.mf)
        if h is not g:
            a = analyze(h)
    sd, fam = a.sd, a.fam
    if mode == "approx":
        if c is None or delta is None:
            raise BadParams("approx mode needs both c and delta")
        rows = approx_vitality(sd, fam, c, delta, scope=scope, schedule=schedule)
    else:
        rows = []
        if scope in ("edges", "both"):
            rows += all_edge_vitality(sd, fam, c)
        if scope in ("vertices", "both"):
            rows += all_vertex_vitality(sd, fam, c)
    rows = [
        replace(r, capacity=g.capacity(r.id) if r.kind == "edge" else g.vertex_capacity(r.id))
        for r in rows
    ]
    return VitalityReport(a.mf, g.n, g.m, mode, c, delta, clamp, rows)
