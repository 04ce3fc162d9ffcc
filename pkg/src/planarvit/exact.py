"""Exact max flow and exact edge/vertex vitality from distances in the sliced dual.

Deleting a primal edge contracts the two ends of its dual copy; deleting a
vertex contracts the dual face around it.  The new max flow is the
shortest x_i y_i distance after the contraction, which only needs
distances from the contracted set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .decomposition import SlicedDual
from .errors import TerminalQuery
from .paths import PathFamily, sssp

INF = math.inf


@dataclass(frozen=True)
class VitalityValue:
    kind: str  # "edge" | "vertex"
    id: int
    value: float
    capacity: float
    mode: str = "exact"  # "exact" | "approx"
    delta: float | None = None
    notes: tuple[str, ...] = ()


@dataclass
class VitalityReport:
    mf: float
    n: int
    m: int
    mode: str
    c: float | None
    delta: float | None
    clamp: bool
    rows: list[VitalityValue]

    def values(self) -> dict[tuple[str, int], float]:
        return {(r.kind, r.id): r.value for r in self.rows}


def max_flow_value(fam: PathFamily) -> float:
    return min(fam.d)


def _d_min(sd: SlicedDual, fam: PathFamily, sources, limit: float = INF) -> float:
    """min_i d_i(S) for the vertex set S = ``sources``; d_i(empty) drops the second term."""
    best = min(fam.d)
    if not sources:
        return best
    dist, _ = sssp(sd.adjacency(), list(sources), limit=limit)
    for i in range(sd.k):
        dx = dist.get(sd.x(i), INF)
        dy = dist.get(sd.y(i), INF)
        if dx + dy < best:
            best = dx + dy
    return best


def d_i_of_set(sd: SlicedDual, fam: PathFamily, i: int, S) -> float:
    """min(d_i, dist(x_i, S) + dist(y_i, S)); equals d_i when S is empty."""
    if not S:
        return fam.d[i]
    dist, _ = sssp(sd.adjacency(), list(S), targets=[sd.x(i), sd.y(i)])
    return min(fam.d[i], dist.get(sd.x(i), INF) + dist.get(sd.y(i), INF))


def edge_max_flow_after_removal(sd: SlicedDual, fam: PathFamily, e: int) -> float:
    """MF of G - e: the best over the copies of e in D of the contracted distance."""
    best = min(fam.d)
    for de in sd.primal_to_d[e]:
        a, b = sd.edges[de][:2]
        best = min(best, _d_min(sd, fam, (a, b), limit=best))
    return best


def edge_vitality_exact(sd: SlicedDual, fam: PathFamily, e: int) -> VitalityValue:
    mf = min(fam.d)
    cap = sd.dual.primal.capacity(e)
    val = max(0.0, mf - edge_max_flow_after_removal(sd, fam, e))
    return VitalityValue("edge", e, val, cap)


def vertex_max_flow_after_removal(sd: SlicedDual, fam: PathFamily, v: int) -> float:
    rec = sd.face_record(v)
    mf = min(fam.d)
    best = _d_min(sd, fam, rec.face, limit=mf)
    if not rec.indices:
        return best
    # dist(f, q^x) and dist(f, q^y) from one search out of V(f)
    targets = rec.qx | rec.qy
    if targets:
        dist, _ = sssp(sd.adjacency(), list(rec.face), limit=best, targets=targets)
        for q in targets:
            best = min(best, dist.get(q, INF))
    best = min(best, _d_min(sd, fam, rec.qx, limit=best))
    best = min(best, _d_min(sd, fam, rec.qy, limit=best))
    return best


def vertex_vitality_exact(sd: SlicedDual, fam: PathFamily, v: int) -> VitalityValue:
    g = sd.dual.primal
    if v in (g.s, g.t):
        raise TerminalQuery(f"vertex {v} is a terminal")
    mf = min(fam.d)
    val = max(0.0, mf - vertex_max_flow_after_removal(sd, fam, v))
    return VitalityValue("vertex", v, val, g.vertex_capacity(v))


def batch_vertex_vitality(sd: SlicedDual, fam: PathFamily, S) -> list[VitalityValue]:
    return [vertex_vitality_exact(sd, fam, v) for v in S]


def all_edge_vitality(sd: SlicedDual, fam: PathFamily, c: float | None = None) -> list[VitalityValue]:
    g = sd.dual.primal
    return [
        edge_vitality_exact(sd, fam, e)
        for e in range(g.m)
        if c is None or g.capacity(e) <= c
    ]


def all_vertex_vitality(sd: SlicedDual, fam: PathFamily, c: float | None = None) -> list[VitalityValue]:
    g = sd.dual.primal
    return [
        vertex_vitality_exact(sd, fam, v)
        for v in range(g.n)
        if v not in (g.s, g.t) and (c is None or g.vertex_capacity(v) <= c)
    ]
