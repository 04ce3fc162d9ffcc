"""Capacitated plane graphs, face traversal and the weighted planar dual.

A plane graph is given combinatorially: every vertex carries the cyclic
counterclockwise order of its incident edge ids (a rotation system).
Edge ``e = (u, v)`` has two darts, ``2*e`` running u -> v and ``2*e + 1``
running v -> u.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import (
    DisconnectedGraph,
    InvalidRotation,
    NonPositiveCapacity,
    NotPlanarEmbedding,
    SelfLoop,
    TerminalMissing,
    ValidationError,
)


def dart_tail(edges, d: int) -> int:
    u, v = edges[d >> 1][:2]
    return v if d & 1 else u


def dart_head(edges, d: int) -> int:
    u, v = edges[d >> 1][:2]
    return u if d & 1 else v


@dataclass(frozen=True)
class Face:
    """One face of a plane graph.

    ``darts`` is the closed boundary walk; ``walk`` pairs every dart with
    the vertex it leaves, which is the (vertex id, edge id) view.
    """

    id: int
    darts: tuple[int, ...]
    walk: tuple[tuple[int, int], ...]
    is_outer: bool = False

    @property
    def vertices(self) -> set[int]:
        return {v for v, _ in self.walk}

    def __len__(self) -> int:
        return len(self.darts)


@dataclass(eq=False)
class PlaneGraph:
    n: int
    edges: tuple[tuple[int, int, float], ...]
    rotation: tuple[tuple[int, ...], ...]
    s: int
    t: int
    coords: tuple[tuple[float, float], ...] | None = None
    # derived by build_plane_graph
    faces: tuple[Face, ...] = field(default=(), repr=False)
    dart_face: tuple[int, ...] = field(default=(), repr=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def capacity(self, e: int) -> float:
        return self.edges[e][2]

    def vertex_capacity(self, v: int) -> float:
        """Sum of capacities of the edges incident on ``v``."""
        return sum(self.edges[e][2] for e in self.rotation[v])

    def leaving_dart(self, v: int, e: int) -> int:
        return 2 * e if self.edges[e][0] == v else 2 * e + 1

    def next_dart(self, d: int) -> int:
        """Successor of dart ``d`` on the boundary walk of the face to its right."""
        h = dart_head(self.edges, d)
        rot = self.rotation[h]
        i = self._rot_index[h][d >> 1]
        return self.leaving_dart(h, rot[(i + 1) % len(rot)])

    def neighbors(self, v: int):
        for e in self.rotation[v]:
            a, b, _ = self.edges[e]
            yield b if a == v else a

    def with_capacities(self, caps: Sequence[float]) -> "PlaneGraph":
        edges = [(u, v, float(c)) for (u, v, _), c in zip(self.edges, caps)]
        return build_plane_graph(edges, self.rotation, self.s, self.t, coords=self.coords)

    def __post_init__(self):
        self._rot_index = [{e: i for i, e in enumerate(r)} for r in self.rotation]


def _signed_area(coords, walk) -> float:
    area = 0.0
    pts = [coords[v] for v, _ in walk]
    for (x1, y1), (x2, y2) in zip(pts, pts[1:] + pts[:1]):
        area += x1 * y2 - x2 * y1
    return area / 2.0


def enumerate_faces(g: PlaneGraph) -> list[Face]:
    """Trace every face of the rotation system.

    Faces are numbered in discovery order while scanning darts 0, 1, 2, ...
    so face 0 always lies to the right of dart 0 (edge 0 traversed forward).
    """
    ndarts = 2 * g.m
    seen = [-1] * ndarts
    raw = []
    for start in range(ndarts):
        if seen[start] >= 0:
            continue
        fid = len(raw)
        darts = []
        d = start
        while seen[d] < 0:
            seen[d] = fid
            darts.append(d)
            d = g.next_dart(d)
        raw.append(darts)

    outer = _outer_face_id(g, raw)
    faces = []
    for fid, darts in enumerate(raw):
        walk = tuple((dart_tail(g.edges, d), d >> 1) for d in darts)
        faces.append(Face(fid, tuple(darts), walk, fid == outer))
    return faces


def _outer_face_id(g: PlaneGraph, raw) -> int:
    if not raw:
        return -1
    if g.coords is not None:
        # traced with the face on the right: bounded faces run clockwise,
        # the unbounded one counterclockwise
        best, best_area = 0, None
        for fid, darts in enumerate(raw):
            walk = [(dart_tail(g.edges, d), d >> 1) for d in darts]
            a = _signed_area(g.coords, walk)
            if best_area is None or a > best_area:
                best, best_area = fid, a
        return best
    return max(range(len(raw)), key=lambda f: (len(raw[f]), -f))


def build_plane_graph(
    edges: Sequence[tuple[int, int, float]],
    rotations: Sequence[Sequence[int]] | Mapping[int, Sequence[int]],
    s: int,
    t: int,
    *,
    coords: Sequence[tuple[float, float]] | None = None,
) -> PlaneGraph:
    """Validate an embedded capacitated graph and return a :class:`PlaneGraph`.

    ``rotations[v]`` lists the ids of the edges incident on ``v`` in
    counterclockwise order.  Parallel edges are allowed, self-loops are not.

    Raises:
        NonPositiveCapacity, SelfLoop, InvalidRotation, DisconnectedGraph,
        TerminalMissing, NotPlanarEmbedding.
    """
    if isinstance(rotations, Mapping):
        n = max(list(rotations) + [-1]) + 1
        rot = [tuple(rotations.get(v, ())) for v in range(n)]
    else:
        rot = [tuple(r) for r in rotations]
        n = len(rot)
    n = max([n] + [max(u, v) + 1 for u, v, _ in edges])
    while len(rot) < n:
        rot.append(())

    norm = []
    for e, (u, v, c) in enumerate(edges):
        if not (0 <= u < n and 0 <= v < n):
            raise ValidationError(f"edge {e} has an unknown endpoint")
        if u == v:
            raise SelfLoop(f"edge {e} is a self-loop at vertex {u}")
        c = float(c)
        if not c > 0:
            raise NonPositiveCapacity(f"edge {e} has capacity {c}, must be > 0")
        norm.append((int(u), int(v), c))

    incident: list[list[int]] = [[] for _ in range(n)]
    for e, (u, v, _) in enumerate(norm):
        incident[u].append(e)
        incident[v].append(e)
    for v in range(n):
        if sorted(rot[v]) != sorted(incident[v]):
            raise InvalidRotation(
                f"rotation of vertex {v} is not a permutation of its incident edges"
            )

    if not (0 <= s < n and 0 <= t < n):
        raise TerminalMissing(f"terminals ({s}, {t}) not in graph with {n} vertices")
    if s == t:
        raise TerminalMissing("terminals must be distinct")

    # connectivity
    seen = [False] * n
    stack = [s]
    seen[s] = True
    while stack:
        x = stack.pop()
        for e in incident[x]:
            a, b, _ = norm[e]
            y = b if a == x else a
            if not seen[y]:
                seen[y] = True
                stack.append(y)
    if not all(seen):
        raise DisconnectedGraph(f"vertex {seen.index(False)} is not reachable from s")

    g = PlaneGraph(
        n=n,
        edges=tuple(norm),
        rotation=tuple(rot),
        s=int(s),
        t=int(t),
        coords=tuple((float(x), float(y)) for x, y in coords) if coords is not None else None,
    )
    faces = enumerate_faces(g)
    nf = len(faces)
    if n - len(norm) + nf != 2:
        raise NotPlanarEmbedding(
            f"V - E + F = {n} - {len(norm)} + {nf} = {n - len(norm) + nf}, expected 2"
        )
    dart_face = [0] * (2 * len(norm))
    for f in faces:
        for d in f.darts:
            dart_face[d] = f.id
    g.faces = tuple(faces)
    g.dart_face = tuple(dart_face)
    return g


def rotations_from_coords(
    n: int, edges: Sequence[tuple[int, int, float]], coords: Sequence[tuple[float, float]]
) -> list[list[int]]:
    """Counterclockwise angle sort of incident edges of a straight-line drawing."""
    import math

    inc: list[list[tuple[float, int]]] = [[] for _ in range(n)]
    for e, (u, v, _) in enumerate(edges):
        (xu, yu), (xv, yv) = coords[u], coords[v]
        inc[u].append((math.atan2(yv - yu, xv - xu), e))
        inc[v].append((math.atan2(yu - yv, xu - xv), e))
    return [[e for _, e in sorted(lst)] for lst in inc]


@dataclass(eq=False)
class DualGraph:
    """Planar dual multigraph with weights ``w(e*) = c(e)``.

    Dual edge ``e`` joins ``ends[e][0]`` (the face right of dart 2e) and
    ``ends[e][1]`` (the face right of dart 2e+1).  ``rotation[f]`` lists the
    darts of face ``f``'s boundary walk; the dart order doubles as the cyclic
    order of dual half-edges around dual vertex ``f``.
    """

    primal: PlaneGraph
    n: int
    ends: tuple[tuple[int, int], ...]
    weight: tuple[float, ...]
    rotation: tuple[tuple[int, ...], ...]
    vertex_face: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def m(self) -> int:
        return len(self.ends)

    def dual_edge(self, e: int) -> tuple[int, int, float]:
        a, b = self.ends[e]
        return a, b, self.weight[e]

    def w(self, edge_ids) -> float:
        return sum(self.weight[e] for e in edge_ids)

    def face_vertices(self, v: int) -> set[int]:
        """Dual vertices on the dual face f*_v around primal vertex ``v``."""
        return {f for f, _ in self.vertex_face[v]}

    def adjacency(self) -> list[list[tuple[int, float, int]]]:
        adj: list[list[tuple[int, float, int]]] = [[] for _ in range(self.n)]
        for e, (a, b) in enumerate(self.ends):
            adj[a].append((b, self.weight[e], e))
            if a != b:
                adj[b].append((a, self.weight[e], e))
        return adj


def build_dual(g: PlaneGraph) -> DualGraph:
    ends = tuple((g.dart_face[2 * e], g.dart_face[2 * e + 1]) for e in range(g.m))
    weight = tuple(c for _, _, c in g.edges)
    rotation = tuple(f.darts for f in g.faces)
    # f*_v: faces met at the corners of v, in rotation order, paired with the
    # dual edge crossing the edge that leaves v there
    vertex_face = tuple(
        tuple((g.dart_face[g.leaving_dart(v, e)], e) for e in g.rotation[v])
        for v in range(g.n)
    )
    return DualGraph(g, len(g.faces), ends, weight, rotation, vertex_face)
