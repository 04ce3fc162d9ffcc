"""Dual terminals, the shortest dual path pi, and the dual cut open along pi.

Vertex ids of the sliced dual: ``x_i = i`` and ``y_i = k + i`` for the
0-based positions ``i`` on pi; every dual vertex off pi gets an id >= 2k.
Rotations of sliced-dual vertices hold half-edge ids ``2 * eid + end``
plus the marker :data:`OUTER` for the corner that faces the cut.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from .errors import SameDualVertex, TerminalQuery
from .planar import DualGraph, dart_head

OUTER = -1

NORMAL, XCOPY, YCOPY = 0, 1, 2


def dual_terminals(d: DualGraph, strict: bool = False) -> tuple[int, int]:
    """Pick v*_s on f*_s and v*_t on f*_t.

    Lowest id wins, preferring a vertex that is not shared with the other
    terminal's face; the two picks differ whenever the dual has more than
    one vertex.  With ``strict`` a single-vertex dual raises
    :class:`SameDualVertex` instead of returning the same vertex twice.
    """
    g = d.primal
    fs = d.face_vertices(g.s)
    ft = d.face_vertices(g.t)
    vs = min(fs - ft) if fs - ft else min(fs)
    cand = (ft - fs) or (ft - {vs})
    if cand:
        return vs, min(cand)
    if strict:
        raise SameDualVertex("dual graph has a single vertex")
    return vs, vs


def _dijkstra_pi(d: DualGraph, src: int):
    adj = d.adjacency()
    dist = [math.inf] * d.n
    parent: list[tuple[int, int] | None] = [None] * d.n
    dist[src] = 0.0
    heap = [(0.0, src)]
    done = [False] * d.n
    while heap:
        du, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w, e in adj[u]:
            if done[v]:
                continue
            nd = du + w
            # equal distance: keep the lexicographically smallest (parent, edge)
            if nd < dist[v] or (nd == dist[v] and parent[v] is not None and (u, e) < parent[v]):
                dist[v] = nd
                parent[v] = (u, e)
                heapq.heappush(heap, (nd, v))
    return dist, parent


def shortest_pi(d: DualGraph, vs: int, vt: int) -> tuple[list[int], list[int], float]:
    """Shortest dual path from ``vs`` to ``vt``: (vertices, edge ids, length)."""
    if vs == vt:
        return [vs], [], 0.0
    dist, parent = _dijkstra_pi(d, vs)
    verts = [vt]
    eids = []
    while verts[-1] != vs:
        u, e = parent[verts[-1]]
        verts.append(u)
        eids.append(e)
    verts.reverse()
    eids.reverse()
    return verts, eids, dist[vt]


@dataclass
class FaceRecord:
    vertex: int
    face: frozenset[int]
    indices: frozenset[int]
    qx: frozenset[int]
    qy: frozenset[int]
    in_fx: bool
    in_fy: bool
    weight: float
    x_on: tuple[int, ...] = ()
    y_on: tuple[int, ...] = ()
    corners: tuple[tuple[int, int], ...] = ()


@dataclass(eq=False)
class SlicedDual:
    dual: DualGraph
    k: int
    pi: list[int]
    pi_edges: list[int]
    prefix: list[float]
    nv: int
    edges: list[tuple[int, int, float, int, int]]
    rotation: list[list[int]]
    hpos: list[int]
    origin: list[tuple[int, int]]
    primal_to_d: list[tuple[int, ...]]
    corners: list[list[tuple[int, int]]]
    records: dict[int, FaceRecord] = field(default_factory=dict)
    _adj: list | None = field(default=None, repr=False)

    def x(self, i: int) -> int:
        return i

    def y(self, i: int) -> int:
        return self.k + i

    @property
    def ne(self) -> int:
        return len(self.edges)

    def pi_length(self, i: int, j: int) -> float:
        """|pi[v_i, v_j]|, the length of the subpath of pi between two positions."""
        return abs(self.prefix[j] - self.prefix[i])

    def half_vertex(self, h: int) -> int:
        return self.edges[h >> 1][h & 1]

    def adjacency(self) -> list[list[tuple[int, float, int]]]:
        if self._adj is None:
            self._adj = adjacency_of(self.nv, self.edges, range(len(self.edges)))
        return self._adj

    def total_weight(self) -> float:
        return sum(e[2] for e in self.edges)

    def face_record(self, v: int) -> FaceRecord:
        g = self.dual.primal
        if v in (g.s, g.t):
            raise TerminalQuery(f"vertex {v} is a terminal; f^D_s and f^D_t do not exist")
        if v not in self.records:
            self.records[v] = _make_record(self, v)
        return self.records[v]

    def face_records(self) -> list[FaceRecord]:
        g = self.dual.primal
        return [self.face_record(v) for v in range(g.n) if v not in (g.s, g.t)]


def adjacency_of(nv, edges, eids):
    adj: list[list[tuple[int, float, int]]] = [[] for _ in range(nv)]
    for e in eids:
        a, b, w = edges[e][:3]
        adj[a].append((b, w, e))
        if a != b:
            adj[b].append((a, w, e))
    return adj


def face_record(sd: SlicedDual, v: int) -> FaceRecord:
    return sd.face_record(v)


def _make_record(sd: SlicedDual, v: int) -> FaceRecord:
    k = sd.k
    verts = frozenset(dv for dv, _ in sd.corners[v])
    pos = {dv: i for i, dv in enumerate(sd.pi)}
    idx = frozenset(pos[f] for f in sd.dual.face_vertices(v) if f in pos)
    qx = frozenset(i for i in idx if i not in verts)
    qy = frozenset(k + i for i in idx if k + i not in verts)
    rec = FaceRecord(
        vertex=v,
        face=verts,
        indices=idx,
        qx=qx,
        qy=qy,
        in_fx=any(u < k for u in verts),
        in_fy=any(k <= u < 2 * k for u in verts),
        weight=sd.dual.primal.vertex_capacity(v),
        x_on=tuple(sorted(u for u in verts if u < k)),
        y_on=tuple(sorted(u - k for u in verts if k <= u < 2 * k)),
        corners=tuple(sd.corners[v]),
    )
    return rec


def cut_along_pi(d: DualGraph, pi: list[int], pi_edges: list[int]) -> SlicedDual:
    """Cut the dual open along ``pi``.

    Around each v*_i the cyclic order is split at its two pi edges; edges
    strictly counterclockwise from the outgoing pi edge up to the incoming
    one go to x_i, the rest to y_i.  At the ends of pi the missing pi edge
    is replaced by the corner of v*_1 lying in f*_s (resp. of v*_k in f*_t).
    """
    g = d.primal
    k = len(pi)
    pos = {f: i for i, f in enumerate(pi)}
    pi_edge_set = set(pi_edges)

    ids = [-1] * d.n
    origin: list[tuple[int, int]] = [(f, 1) for f in pi] + [(f, 2) for f in pi]
    nxt = 2 * k
    for f in range(d.n):
        if f not in pos:
            ids[f] = nxt
            origin.append((f, 0))
            nxt += 1
    nv = nxt

    # side assignment of every dual half-edge (dart) and corner at pi vertices
    side_of_dart: dict[int, int] = {}
    rotation: list[list[int]] = [[] for _ in range(nv)]
    corners: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    d_edges: list[tuple[int, int, float, int, int]] = []
    primal_to_d: list[tuple[int, ...]] = [()] * g.m

    def dart_vertex(dart: int) -> int:
        f = g.dart_face[dart]
        if f in pos:
            i = pos[f]
            return i if side_of_dart[dart] == 1 else k + i
        return ids[f]

    arcs = {}
    for i, f in enumerate(pi):
        darts = d.rotation[f]
        m = len(darts)
        jo = ji = None
        if i + 1 < k:
            e = pi_edges[i]
            jo = next(j for j, dd in enumerate(darts) if dd >> 1 == e)
            out_slot = 2 * jo
        else:
            jb = next(j for j, dd in enumerate(darts) if dart_head(g.edges, dd) == g.t)
            out_slot = 2 * jb + 1
        if i > 0:
            e = pi_edges[i - 1]
            ji = next(j for j, dd in enumerate(darts) if dd >> 1 == e)
            in_slot = 2 * ji
        else:
            ja = next(j for j, dd in enumerate(darts) if dart_head(g.edges, dd) == g.s)
            in_slot = 2 * ja + 1
        ns = 2 * m
        left = [(out_slot + 1 + t) % ns for t in range((in_slot - out_slot - 1) % ns)]
        right = [(in_slot + 1 + t) % ns for t in range((out_slot - in_slot - 1) % ns)]
        for slot in left:
            if slot % 2 == 0:
                side_of_dart[darts[slot // 2]] = 1
        for slot in right:
            if slot % 2 == 0:
                side_of_dart[darts[slot // 2]] = 2
        arcs[i] = (darts, left, right, jo, ji)

    # sliced-dual edges
    for e in range(g.m):
        w = d.weight[e]
        if e in pi_edge_set:
            a, b = d.ends[e]
            ia, ib = pos[a], pos[b]
            ex = len(d_edges)
            d_edges.append((ia, ib, w, e, XCOPY))
            d_edges.append((k + ia, k + ib, w, e, YCOPY))
            primal_to_d[e] = (ex, ex + 1)
        else:
            a = dart_vertex(2 * e)
            b = dart_vertex(2 * e + 1)
            primal_to_d[e] = (len(d_edges),)
            d_edges.append((a, b, w, e, NORMAL))

    def half(dart: int) -> int:
        e = dart >> 1
        return 2 * primal_to_d[e][0] + (dart & 1)

    def copy_half(dart: int, which: int) -> int:
        return 2 * primal_to_d[dart >> 1][which] + (dart & 1)

    # rotations of vertices off pi
    for f in range(d.n):
        if f in pos:
            continue
        u = ids[f]
        darts = d.rotation[f]
        rotation[u] = [half(dd) for dd in darts]
        for j, dd in enumerate(darts):
            corners[dart_head(g.edges, dd)].append((u, j))

    # rotations of x_i, y_i
    for i in range(k):
        darts, left, right, jo, ji = arcs[i]
        xr = [OUTER]
        if jo is not None:
            xr.append(copy_half(darts[jo], 0))
        for slot in left:
            if slot % 2 == 0:
                xr.append(half(darts[slot // 2]))
            else:
                corners[dart_head(g.edges, darts[slot // 2])].append((i, len(xr) - 1))
        if ji is not None:
            xr.append(copy_half(darts[ji], 0))
        yr = [OUTER]
        if ji is not None:
            yr.append(copy_half(darts[ji], 1))
        for slot in right:
            if slot % 2 == 0:
                yr.append(half(darts[slot // 2]))
            else:
                corners[dart_head(g.edges, darts[slot // 2])].append((k + i, len(yr) - 1))
        if jo is not None:
            yr.append(copy_half(darts[jo], 1))
        rotation[i] = xr
        rotation[k + i] = yr

    hpos = [0] * (2 * len(d_edges))
    for u, rot in enumerate(rotation):
        for p, h in enumerate(rot):
            if h != OUTER:
                hpos[h] = p

    prefix = [0.0]
    for e in pi_edges:
        prefix.append(prefix[-1] + d.weight[e])

    return SlicedDual(
        dual=d,
        k=k,
        pi=list(pi),
        pi_edges=list(pi_edges),
        prefix=prefix,
        nv=nv,
        edges=d_edges,
        rotation=rotation,
        hpos=hpos,
        origin=origin,
        primal_to_d=primal_to_d,
        corners=corners,
    )


def slice_dual(d: DualGraph) -> SlicedDual:
    """dual_terminals + shortest_pi + cut_along_pi."""
    vs, vt = dual_terminals(d)
    verts, eids, _ = shortest_pi(d, vs, vt)
    return cut_along_pi(d, verts, eids)


def glue(sd: SlicedDual) -> list[tuple[int, int, float, int]]:
    """Identify x_i with y_i and merge the pi copies: the dual, edge by edge.

    Returns ``(a, b, w, primal edge)`` with dual vertex ids, sorted by
    primal edge id; used to check the cut round-trips.
    """
    out = {}
    for a, b, w, e, copy in sd.edges:
        if copy == YCOPY:
            continue
        out[e] = (sd.origin[a][0], sd.origin[b][0], w, e)
    return [out[e] for e in sorted(out)]
