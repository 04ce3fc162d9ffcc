"""delta-additive approximation of edge and vertex vitality.

Paths are grouped into buckets L_r by length; within a bucket only the
paths bounding the slab that holds an edge or face need to be examined,
so one SSSP pair per path and slab covers every edge and face.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field

from .decomposition import FaceRecord, SlicedDual
from .errors import EmptyBucket, NonPositiveC, NonPositiveDelta
from .exact import VitalityValue
from .paths import PathFamily, Slabs, classify, face_slab, region_adjacency, shared_subpath, sssp
from .planar import PlaneGraph

INF = math.inf


def clamp_capacities(g: PlaneGraph, mf: float) -> PlaneGraph:
    """Lower every capacity above ``mf`` to ``mf``; max flow and vitalities are unchanged."""
    if all(c <= mf for _, _, c in g.edges):
        return g
    return g.with_capacities([min(c, mf) for _, _, c in g.edges])


# --------------------------------------------------------------------------
# buckets


@dataclass
class Buckets:
    delta: float
    mf: float
    lists: dict[int, list[int]]

    def __getitem__(self, r: int) -> list[int]:
        return self.lists.get(r, [])

    def rounds(self, c: float) -> list[int]:
        """Nonempty buckets among r = 0 .. ceil(c / delta)."""
        top = math.ceil(c / self.delta)
        return [r for r in sorted(self.lists) if r <= top]

    def index_of(self, d: float) -> int:
        return bucket_index(d, self.mf, self.delta)


def bucket_index(d: float, mf: float, delta: float) -> int:
    r = max(0, math.floor((d - mf) / delta))
    while r > 0 and mf + delta * r > d:
        r -= 1
    while mf + delta * (r + 1) <= d:
        r += 1
    return r


def build_buckets(fam: PathFamily, delta: float) -> Buckets:
    if not delta > 0:
        raise NonPositiveDelta(f"delta must be > 0, got {delta}")
    mf = min(fam.d)
    lists: dict[int, list[int]] = defaultdict(list)
    for i, d in enumerate(fam.d):
        lists[bucket_index(d, mf, delta)].append(i)
    return Buckets(delta, mf, dict(lists))


# --------------------------------------------------------------------------
# slices


@dataclass
class Slice:
    """Region between two consecutive paths of an index sequence.

    ``lo``/``hi`` are path indices (``None`` for the unbounded Left/Right
    sides).  ``edges`` are sliced-dual edge ids; when the bounding paths
    share a subpath with edges, that subpath is dropped and replaced by the
    single ``virtual`` edge ``(a, b, length, id)``.
    """

    lo: int | None
    hi: int | None
    edges: list[int]
    virtual: list[tuple[int, int, float, int]] = field(default_factory=list)

    def adjacency(self, sd: SlicedDual):
        return region_adjacency(sd, self.edges, self.virtual)

    def bounds(self) -> list[int]:
        return [b for b in (self.lo, self.hi) if b is not None]


class Layout:
    """Slab classification of one index sequence plus its compressed slices."""

    def __init__(self, fam: PathFamily, indices):
        self.fam = fam
        self.A = list(indices)
        self.slabs, aux = classify(fam, self.A)
        self.on = aux["on"]
        by_slab: dict[int, list[int]] = defaultdict(list)
        for e, s in enumerate(self.slabs.edge_slab):
            if s is not None:
                by_slab[s].append(e)
        self._by_slab = by_slab
        self.regions: dict[int, Slice] = {}
        z = len(self.A)
        for j in range(-1, z):
            self.regions[j] = self._make(j)

    def _make(self, j: int) -> Slice:
        fam, A = self.fam, self.A
        lo = A[j] if j >= 0 else None
        hi = A[j + 1] if j + 1 < len(A) else None
        own = list(self._by_slab.get(j, []))
        bound_edges: list[int] = []
        for b in (lo, hi):
            if b is not None:
                bound_edges.extend(fam.paths[b].eids)
        virtual = []
        if lo is not None and hi is not None:
            verts, eids, length = shared_subpath(fam, lo, hi)
            if eids:
                drop = set(eids)
                bound_edges = [e for e in bound_edges if e not in drop]
                virtual.append((verts[0], verts[-1], length, -2 - j))
        return Slice(lo, hi, own + list(dict.fromkeys(bound_edges)), virtual)

    def slices(self) -> list[Slice]:
        """Slices between consecutive indices (without the Left/Right sides)."""
        return [self.regions[j] for j in range(len(self.A) - 1)]

    def span(self, lo: int | None, hi: int | None) -> list[int]:
        """Edges of the region between paths ``lo`` and ``hi`` (both in A, or None)."""
        A = self.A
        a = A.index(lo) if lo is not None else -1
        b = A.index(hi) if hi is not None else len(A)
        out = []
        for j in range(a, b):
            out.extend(self._by_slab.get(j, []))
        for idx in A[max(a, 0) : min(b, len(A) - 1) + 1]:
            out.extend(self.fam.paths[idx].eids)
        return list(dict.fromkeys(out))

    def slab_of_face(self, rec: FaceRecord) -> int:
        return face_slab(self.fam, self.slabs, self.on, rec)


def build_slices(sd: SlicedDual, fam: PathFamily, indices) -> list[Slice]:
    return Layout(fam, indices).slices()


def _slab_distances(sd: SlicedDual, fam: PathFamily, layout: Layout, limit: float):
    """Per slab, distances from x_l and y_l of each bounding path l."""
    out = {}
    for j, sl in layout.regions.items():
        adj = sl.adjacency(sd)
        per = {}
        for b in sl.bounds():
            dx, _ = sssp(adj, [sd.x(b)], limit=limit)
            dy, _ = sssp(adj, [sd.y(b)], limit=limit)
            per[b] = (dx, dy)
        out[j] = per
    return out


def _d_of(fam, b, dx, dy, verts) -> float:
    mx = min((dx.get(u, INF) for u in verts), default=INF)
    my = min((dy.get(u, INF) for u in verts), default=INF)
    return min(fam.d[b], mx + my)


# --------------------------------------------------------------------------
# alpha labels


def alpha_edges(
    sd: SlicedDual,
    fam: PathFamily,
    indices,
    *,
    layout: Layout | None = None,
    dists=None,
    limit: float = INF,
) -> list[float]:
    """alpha_r(e) for every sliced-dual edge, for the bucket with paths ``indices``.

    Each label lies in [min_l d_l(e), min_l d_l(e) + delta) over l in the
    bucket.  An edge on a bucket path p_l gets d_l - w(e), which is exactly
    d_l(e).  Any other edge sits in one slab and takes the minimum over the
    (at most two) paths bounding it, with distances measured inside the slab.
    """
    if not indices:
        raise EmptyBucket("bucket has no paths")
    layout = layout or Layout(fam, indices)
    dists = dists if dists is not None else _slab_distances(sd, fam, layout, limit)
    alpha = [INF] * sd.ne
    for b in layout.A:
        for e in fam.paths[b].eids:
            alpha[e] = min(alpha[e], fam.d[b] - sd.edges[e][2])
    for e, s in enumerate(layout.slabs.edge_slab):
        if s is None:
            continue
        a, bb = sd.edges[e][:2]
        best = INF
        for b, (dx, dy) in dists[s].items():
            best = min(best, _d_of(fam, b, dx, dy, (a, bb)))
        alpha[e] = best
    return alpha


def alpha_faces(
    sd: SlicedDual,
    fam: PathFamily,
    indices,
    records,
    *,
    layout: Layout | None = None,
    dists=None,
    limit: float = INF,
) -> dict[int, float]:
    """alpha_r(f) for the face of each record (keyed by primal vertex)."""
    if not indices:
        raise EmptyBucket("bucket has no paths")
    layout = layout or Layout(fam, indices)
    dists = dists if dists is not None else _slab_distances(sd, fam, layout, limit)
    out = {}
    for rec in records:
        s = layout.slab_of_face(rec)
        best = INF
        for b, (dx, dy) in dists[s].items():
            best = min(best, _d_of(fam, b, dx, dy, rec.face))
        out[rec.vertex] = best
    return out


# --------------------------------------------------------------------------
# faces touching pi: boundary distances and beta labels
#
# side "y" concerns faces with q^y_f nonempty.  Such a face touches the x
# copy of pi (y_i missing from f forces x_i onto it), so its index range
# [f^-, f^+] comes from the x vertices on f and searches start at x_l.
# side "x" is the mirror image.


def _q(rec: FaceRecord, side: str) -> frozenset[int]:
    return rec.qy if side == "y" else rec.qx


def _q_index(sd: SlicedDual, side: str, u: int) -> int:
    return u - sd.k if side == "y" else u


def _src(sd: SlicedDual, side: str, i: int) -> int:
    return sd.x(i) if side == "y" else sd.y(i)


def face_boundary_distance(
    sd: SlicedDual, side: str, records=None, *, limit: float = INF
) -> dict[int, float]:
    """dist_D(f, q^side_f) for every face record with nonempty q^side_f.

    One multi-source search from V(f) per face, stopped at the first vertex
    of q^side_f; faces whose q set is empty are absent (distance +inf).
    Distances above ``limit`` are reported as +inf.
    """
    records = sd.face_records() if records is None else records
    adj = sd.adjacency()
    out = {}
    for rec in records:
        q = _q(rec, side)
        if not q:
            continue
        dist, _ = sssp(adj, list(rec.face), limit=limit, targets=q, stop_at_first=True)
        out[rec.vertex] = min((dist.get(u, INF) for u in q), default=INF)
    return out


@dataclass
class FaceIndex:
    """Range of pi positions a face touches on the searched side."""

    vertex: int
    lo: int  # f^-
    hi: int  # f^+
    gaps: dict[int, list[int]]  # position -> rotation gaps of the face's corners there

    def bucket_range(self, L: list[int]) -> tuple[int, int, int | None, int | None]:
        """(f^-_r, f^+_r, lower bound, upper bound) for the sorted bucket ``L``.

        f^-_r is the largest index of L below f^-, f^+_r the smallest above
        f^+; when none exists the first (resp. last) index of L is used and
        the matching region bound is ``None`` (unbounded side).
        """
        from bisect import bisect_left, bisect_right

        a = bisect_left(L, self.lo) - 1
        b = bisect_right(L, self.hi)
        lb = L[a] if a >= 0 else None
        ub = L[b] if b < len(L) else None
        return (lb if lb is not None else L[0]), (ub if ub is not None else L[-1]), lb, ub


def face_indices(sd: SlicedDual, side: str, records=None) -> dict[int, FaceIndex]:
    records = sd.face_records() if records is None else records
    k = sd.k
    out = {}
    for rec in records:
        if not _q(rec, side):
            continue
        gaps: dict[int, list[int]] = defaultdict(list)
        for u, gap in rec.corners:
            if side == "y" and u < k:
                gaps[u].append(gap)
            elif side == "x" and k <= u < 2 * k:
                gaps[u - k].append(gap)
        pos = sorted(gaps)
        out[rec.vertex] = FaceIndex(rec.vertex, pos[0], pos[-1], dict(gaps))
    return out


def _encloses(f: FaceIndex, g: FaceIndex, side: str) -> bool:
    """g precedes f: g lies between pi and the boundary of f."""
    j = g.lo
    gap = g.gaps[j][0]
    if j < f.lo or j > f.hi:
        return False
    mine = f.gaps.get(j)
    if not mine:
        return f.lo < j < f.hi
    # at x_j low gaps point toward x_{j+1}; at y_j toward y_{j-1}
    if gap < min(mine):
        up = side == "y"
    elif gap > max(mine):
        up = side != "y"
    else:
        return True
    return j < f.hi if up else j > f.lo


def maximal_faces(idx: dict[int, FaceIndex], side: str) -> dict[int, int | None]:
    """Map every face to a maximal face enclosing it (itself when maximal)."""
    faces = sorted(idx.values(), key=lambda f: (f.lo - f.hi, f.vertex))
    maximal: list[FaceIndex] = []
    owner: dict[int, int] = {}
    for g in faces:
        host = next((f for f in maximal if _encloses(f, g, side)), None)
        if host is None:
            # g is not inside an earlier (wider) face; check the rest too
            host = next(
                (f for f in faces if f is not g and _encloses(f, g, side) and not _encloses(g, f, side)),
                None,
            )
        if host is None:
            maximal.append(g)
            owner[g.vertex] = g.vertex
        else:
            owner[g.vertex] = host.vertex
    # resolve chains to a maximal face
    for v in list(owner):
        h = owner[v]
        seen = {v}
        while owner[h] != h:
            if h in seen:
                raise RuntimeError("face enclosure is cyclic")
            seen.add(h)
            h = owner[h]
        owner[v] = h
    return owner


def _pi_to_q(sd: SlicedDual, side: str, i: int, q) -> float:
    """dist_D between the opposite-side copy of position i and the set q."""
    return min(sd.pi_length(i, _q_index(sd, side, u)) for u in q)


def beta_faces(
    sd: SlicedDual,
    fam: PathFamily,
    L: list[int],
    side: str,
    bdist: dict[int, float],
    *,
    records=None,
    idx: dict[int, FaceIndex] | None = None,
    schedule: str = "naive",
    layout: Layout | None = None,
    owner: dict[int, int] | None = None,
    cache: dict | None = None,
    limit: float = INF,
) -> dict[int, tuple[float, bool]]:
    """beta_r(f) = min(d_{f^-_r}(q), d_{f^+_r}(q)) for faces with nonempty q = q^side_f.

    Returns vertex -> (value, applicable); ``applicable`` is False when the
    value is not below dist_D(f, q), in which case the guarantee does not
    apply (the value is still an upper bound and harmless in the min).

    ``schedule="naive"`` runs one search in all of D from every needed
    source.  ``schedule="maximal"`` searches inside the region of each
    maximal face only and derives nested faces from pi prefix lengths.
    """
    if not L:
        raise EmptyBucket("bucket has no paths")
    records = sd.face_records() if records is None else records
    recs = {r.vertex: r for r in records}
    idx = idx if idx is not None else face_indices(sd, side, records)
    if schedule == "naive":
        values = _beta_naive(sd, fam, L, side, idx, recs, cache, limit)
    elif schedule == "maximal":
        layout = layout or Layout(fam, L)
        owner = owner if owner is not None else maximal_faces(idx, side)
        values = _beta_maximal(sd, fam, L, side, idx, recs, layout, owner, limit)
    else:
        raise ValueError(f"unknown schedule {schedule!r}")
    return {v: (b, b < bdist.get(v, INF)) for v, b in values.items()}


def _d_q(sd, fam, side, j, dist_src_q, q) -> float:
    return min(fam.d[j], dist_src_q + _pi_to_q(sd, side, j, q))


def _beta_naive(sd, fam, L, side, idx, recs, cache, limit):
    cache = {} if cache is None else cache
    adj = sd.adjacency()
    out = {}
    for v, fi in idx.items():
        q = _q(recs[v], side)
        lo_r, hi_r, _, _ = fi.bucket_range(L)
        best = INF
        for j in {lo_r, hi_r}:
            key = (side, j)
            if key not in cache:
                cache[key] = sssp(adj, [_src(sd, side, j)], limit=limit)[0]
            dj = cache[key]
            best = min(best, _d_q(sd, fam, side, j, min(dj.get(u, INF) for u in q), q))
        out[v] = best
    return out


def _beta_maximal(sd, fam, L, side, idx, recs, layout, owner, limit):
    groups: dict[tuple, list[int]] = defaultdict(list)
    for v, host in owner.items():
        if host == v:
            groups[idx[v].bucket_range(L)].append(v)
    out = {}
    members: dict[tuple, list[int]] = defaultdict(list)
    key_of_host = {}
    for key, hosts in groups.items():
        for h in hosts:
            key_of_host[h] = key
    for v, host in owner.items():
        members[key_of_host[host]].append(v)
    for key, hosts in groups.items():
        lo_r, hi_r, lb, ub = key
        adj = region_adjacency(sd, layout.span(lb, ub))
        sources = {lo_r, hi_r}
        for h in hosts:
            sources.update((idx[h].lo, idx[h].hi))
        dist = {j: sssp(adj, [_src(sd, side, j)], limit=limit)[0] for j in sources}
        for v in members[key]:
            fi = idx[v]
            q = _q(recs[v], side)
            host = idx[owner[v]]
            g_lo, g_hi, _, _ = fi.bucket_range(L)
            best = INF
            for j in {g_lo, g_hi}:
                if j in (lo_r, hi_r):
                    dxq = min(dist[j].get(u, INF) for u in q)
                else:
                    # j is enclosed by the host face: leave through one of its ends
                    dxq = min(
                        sd.pi_length(j, host.lo) + min(dist[host.lo].get(u, INF) for u in q),
                        sd.pi_length(j, host.hi) + min(dist[host.hi].get(u, INF) for u in q),
                    )
                best = min(best, _d_q(sd, fam, side, j, dxq, q))
            out[v] = best
    return out


# --------------------------------------------------------------------------
# drivers


def _check_params(c: float, delta: float) -> None:
    if not delta > 0:
        raise NonPositiveDelta(f"delta must be > 0, got {delta}")
    if not c > 0:
        raise NonPositiveC(f"c must be > 0, got {c}")


def _rounds(sd, fam, c, delta, limit):
    buckets = build_buckets(fam, delta)
    for r in buckets.rounds(c):
        L = buckets[r]
        layout = Layout(fam, L)
        yield r, L, layout, _slab_distances(sd, fam, layout, limit)


def approx_vitality(
    sd: SlicedDual,
    fam: PathFamily,
    c: float,
    delta: float,
    *,
    scope: str = "both",
    schedule: str = "maximal",
) -> list[VitalityValue]:
    """vit^delta for edges with c(e) <= c and/or vertices with c(v) <= c.

    Every value lies in (vit - delta, vit].  Searches are cut off at MF:
    anything farther cannot lower the max flow.
    """
    _check_params(c, delta)
    g = sd.dual.primal
    mf = min(fam.d)
    do_edges = scope in ("edges", "both")
    do_vertices = scope in ("vertices", "both")
    records = []
    if do_vertices:
        records = [
            sd.face_record(v)
            for v in range(g.n)
            if v not in (g.s, g.t) and g.vertex_capacity(v) <= c
        ]
    alpha_d = [INF] * sd.ne
    alpha_f = {rec.vertex: INF for rec in records}
    beta = {side: {} for side in "xy"}
    bdist = {}
    idx = {}
    owner = {}
    if records:
        for side in "xy":
            bdist[side] = face_boundary_distance(sd, side, records, limit=mf)
            idx[side] = face_indices(sd, side, records)
            owner[side] = maximal_faces(idx[side], side) if schedule == "maximal" else None
    caches = {"x": {}, "y": {}}
    for r, L, layout, dists in _rounds(sd, fam, c, delta, mf):
        if do_edges:
            a = alpha_edges(sd, fam, L, layout=layout, dists=dists)
            alpha_d = [min(p, q) for p, q in zip(alpha_d, a)]
        if records:
            af = alpha_faces(sd, fam, L, records, layout=layout, dists=dists)
            for v, val in af.items():
                alpha_f[v] = min(alpha_f[v], val)
            for side in "xy":
                if not idx[side]:
                    continue
                b = beta_faces(
                    sd, fam, L, side, bdist[side],
                    records=records, idx=idx[side], schedule=schedule,
                    layout=layout, owner=owner[side], cache=caches[side], limit=mf,
                )
                for v, (val, ok) in b.items():
                    old = beta[side].get(v, (INF, False))
                    beta[side][v] = (min(old[0], val), old[1] or ok)

    rows: list[VitalityValue] = []
    if do_edges:
        for e in range(g.m):
            cap = g.capacity(e)
            if cap > c:
                continue
            est = min(alpha_d[de] for de in sd.primal_to_d[e])
            rows.append(VitalityValue("edge", e, max(0.0, mf - est), cap, "approx", delta))
    for rec in records:
        v = rec.vertex
        est = alpha_f[v]
        notes = []
        for side in "xy":
            if v in bdist.get(side, {}):
                est = min(est, bdist[side][v])
                val, ok = beta[side].get(v, (INF, False))
                est = min(est, val)
                if not ok:
                    notes.append(f"beta_{side}=na")
        rows.append(
            VitalityValue("vertex", v, max(0.0, mf - est), rec.weight, "approx", delta, tuple(notes))
        )
    return rows


def approx_edge_vitality(sd: SlicedDual, fam: PathFamily, c: float, delta: float) -> list[VitalityValue]:
    return approx_vitality(sd, fam, c, delta, scope="edges")


def approx_vertex_vitality(
    sd: SlicedDual, fam: PathFamily, c: float, delta: float, *, schedule: str = "maximal"
) -> list[VitalityValue]:
    return approx_vitality(sd, fam, c, delta, scope="vertices", schedule=schedule)
