"""Shortest paths in the sliced dual and the non-crossing family p_1..p_k.

The family is built by divide and conquer: the path of the middle index is
computed inside the current region, made single-touch with the two paths
bounding the region, and the region is split along it.
"""

from __future__ import annotations

import heapq
import math
from bisect import bisect_left, bisect_right
from collections import defaultdict
from dataclasses import dataclass, field

from .decomposition import OUTER, SlicedDual, adjacency_of
from .errors import NegativeWeight

INF = math.inf


def sssp(adj, sources, *, limit: float = INF, targets=None, stop_at_first: bool = False):
    """Multi-source Dijkstra.

    ``adj`` maps a vertex to ``(neighbor, weight, edge id)`` triples (a list
    of lists or a dict).  ``sources`` is an iterable of vertices or a mapping
    vertex -> starting offset.  Vertices farther than ``limit`` are left
    unlabelled.  With ``targets`` the search stops once every target is
    settled (or the first one, with ``stop_at_first``).

    Returns ``(dist, parent)`` dicts; absent vertices are unreachable.
    """
    if not isinstance(sources, dict):
        sources = {v: 0.0 for v in sources}
    dist: dict[int, float] = {}
    parent: dict[int, tuple[int, int] | None] = {}
    best: dict[int, float] = {}
    heap = []
    for v, off in sources.items():
        if off < best.get(v, INF):
            best[v] = off
            parent[v] = None
            heap.append((off, v))
    heapq.heapify(heap)
    remaining = set(targets) if targets is not None else None
    is_dict = isinstance(adj, dict)
    while heap:
        du, u = heapq.heappop(heap)
        if u in dist:
            continue
        if du > limit:
            break
        dist[u] = du
        if remaining is not None and u in remaining:
            if stop_at_first:
                break
            remaining.discard(u)
            if not remaining:
                break
        nbrs = adj.get(u, ()) if is_dict else adj[u]
        for v, w, e in nbrs:
            if w < 0:
                raise NegativeWeight(f"edge {e} has negative weight {w}")
            if v in dist:
                continue
            nd = du + w
            if nd < best.get(v, INF):
                best[v] = nd
                parent[v] = (u, e)
                heapq.heappush(heap, (nd, v))
    return dist, {v: parent[v] for v in dist}


def extract_path(parent, target) -> tuple[list[int], list[int]]:
    verts = [target]
    eids = []
    while parent[verts[-1]] is not None:
        u, e = parent[verts[-1]]
        verts.append(u)
        eids.append(e)
    verts.reverse()
    eids.reverse()
    return verts, eids


def region_adjacency(sd: SlicedDual, eids, extra=()):
    """Adjacency dict of the subgraph formed by ``eids`` plus ``extra`` edges.

    ``extra`` holds ``(a, b, w, id)`` tuples for virtual edges.
    """
    adj: dict[int, list] = defaultdict(list)
    edges = sd.edges
    for e in eids:
        a, b, w = edges[e][:3]
        adj[a].append((b, w, e))
        if a != b:
            adj[b].append((a, w, e))
    for a, b, w, e in extra:
        adj[a].append((b, w, e))
        adj[b].append((a, w, e))
    return adj


# --------------------------------------------------------------------------
# sides


def half_at(sd: SlicedDual, e: int, u: int) -> int:
    return 2 * e if sd.edges[e][0] == u else 2 * e + 1


class Path:
    """Vertex/edge sequence of a path in the sliced dual, with position lookup."""

    __slots__ = ("verts", "eids", "length", "index")

    def __init__(self, verts, eids, length):
        self.verts = list(verts)
        self.eids = list(eids)
        self.length = length
        self.index = {v: j for j, v in enumerate(self.verts)}

    def __len__(self):
        return len(self.verts)

    def __contains__(self, v):
        return v in self.index

    def in_out(self, sd: SlicedDual, u: int) -> tuple[int, int]:
        """Rotation positions of the incoming and outgoing path half-edges at ``u``.

        The path start enters from the OUTER corner and the path end leaves
        through it.
        """
        j = self.index[u]
        pin = sd.hpos[half_at(sd, self.eids[j - 1], u)] if j > 0 else 0
        pout = sd.hpos[half_at(sd, self.eids[j], u)] if j < len(self.eids) else 0
        return pin, pout


def is_left(sd: SlicedDual, path: Path, u: int, q2: int) -> bool:
    """Whether rotation slot ``q2`` at ``u`` lies left of ``path`` (lower indices).

    Slots are doubled positions: a rotation item at position p is ``2p``,
    the corner after it is ``2p + 1``.
    """
    pin, pout = path.in_out(sd, u)
    n2 = 2 * len(sd.rotation[u])
    return 0 < (q2 - 2 * pout) % n2 < (2 * pin - 2 * pout) % n2


def half_left(sd: SlicedDual, path: Path, h: int) -> bool:
    return is_left(sd, path, sd.half_vertex(h), 2 * sd.hpos[h])


# --------------------------------------------------------------------------
# single-touch enforcement


def splice(path: Path, bound: Path) -> tuple[Path, bool]:
    """Reroute ``path`` along ``bound`` between their first and last common vertex."""
    common = [j for j, v in enumerate(path.verts) if v in bound.index]
    if len(common) < 2:
        return path, False
    ia, ib = common[0], common[-1]
    ja, jb = bound.index[path.verts[ia]], bound.index[path.verts[ib]]
    if ja <= jb:
        sv = bound.verts[ja : jb + 1]
        se = bound.eids[ja:jb]
    else:
        sv = bound.verts[jb : ja + 1][::-1]
        se = bound.eids[jb:ja][::-1]
    if sv == path.verts[ia : ib + 1] and se == path.eids[ia:ib]:
        return path, False
    verts = path.verts[:ia] + sv + path.verts[ib + 1 :]
    eids = path.eids[:ia] + se + path.eids[ib:]
    return Path(verts, eids, path.length), True


def intersection(p: Path, q: Path) -> tuple[list[int], list[int]]:
    """Common vertices of p (in p order) and common edge ids."""
    qe = set(q.eids)
    return [v for v in p.verts if v in q.index], [e for e in p.eids if e in qe]


def is_single_touch(p: Path, q: Path) -> bool:
    """p ∩ q is empty or one path: contiguous in p, with matching edges."""
    js = [j for j, v in enumerate(p.verts) if v in q.index]
    if not js:
        return True
    if js[-1] - js[0] + 1 != len(js):
        return False
    qe = set(q.eids)
    return all(p.eids[j] in qe for j in range(js[0], js[-1]))


def crossing_count(sd: SlicedDual, p: Path, q: Path) -> int:
    """Number of times ``p`` switches from one side of ``q`` to the other.

    Edges of p that are not edges of q get a side label (taken at an
    endpoint on q, or inherited from the previous edge); every change of
    label between consecutive labelled edges is one crossing.
    """
    qe = set(q.eids)
    labels = []
    cur = None
    for j, e in enumerate(p.eids):
        if e in qe:
            continue
        a, b = p.verts[j], p.verts[j + 1]
        side = None
        if a in q.index:
            side = half_left(sd, q, half_at(sd, e, a) if sd.edges[e][0] != sd.edges[e][1] else 2 * e)
        elif b in q.index:
            side = half_left(sd, q, half_at(sd, e, b))
        if side is None:
            side = cur
        if side is not None:
            labels.append(side)
            cur = side
    return sum(1 for s0, s1 in zip(labels, labels[1:]) if s0 != s1)


# --------------------------------------------------------------------------
# the family


@dataclass(eq=False)
class PathFamily:
    sd: SlicedDual
    paths: list[Path]
    d: list[float]
    through: dict[int, tuple[int, int]]
    forest: "UnionForest" = field(repr=False, default=None)

    @property
    def k(self) -> int:
        return len(self.paths)

    @property
    def mf(self) -> float:
        return min(self.d)

    def union_edges(self, indices=None) -> set[int]:
        idx = range(self.k) if indices is None else indices
        out: set[int] = set()
        for i in idx:
            out.update(self.paths[i].eids)
        return out

    def paths_through(self, u: int) -> tuple[int, int] | None:
        return self.through.get(u)


def _split_region(sd: SlicedDual, region: list[int], path: Path):
    """Partition the non-path edges of ``region`` into the two sides of ``path``."""
    on_path = set(path.eids)
    pv = path.index
    edges = sd.edges
    # union-find on edges through vertices off the path
    owner: dict[int, int] = {}
    parent: dict[int, int] = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    rest = [e for e in region if e not in on_path]
    for e in rest:
        parent[e] = e
        for u in edges[e][:2]:
            if u in pv:
                continue
            if u in owner:
                ra, rb = find(owner[u]), find(e)
                if ra != rb:
                    parent[ra] = rb
            else:
                owner[u] = e
    side_of_root: dict[int, bool] = {}
    for e in rest:
        r = find(e)
        if r in side_of_root:
            continue
        a, b = edges[e][:2]
        if a in pv:
            side_of_root[r] = half_left(sd, path, 2 * e)
        elif b in pv:
            side_of_root[r] = half_left(sd, path, 2 * e + 1)
    left, right = [], []
    for e in rest:
        r = find(e)
        if r not in side_of_root:
            raise RuntimeError("region component detached from the splitting path")
        (left if side_of_root[r] else right).append(e)
    return left + list(on_path), right + list(on_path)


def noncrossing_family(sd: SlicedDual) -> PathFamily:
    """Shortest x_i y_i paths, pairwise non-crossing and single-touch."""
    k = sd.k
    paths: list[Path | None] = [None] * k
    stack = [(0, k - 1, None, None, list(range(sd.ne)))]
    while stack:
        lo, hi, lb, rb, region = stack.pop()
        if lo > hi:
            continue
        mid = (lo + hi + 1) // 2
        adj = region_adjacency(sd, region)
        dist, parent = sssp(adj, [sd.x(mid)], targets=[sd.y(mid)])
        verts, eids = extract_path(parent, sd.y(mid))
        p = Path(verts, eids, dist[sd.y(mid)])
        bounds = [paths[b] for b in (lb, rb) if b is not None]
        for _ in range(8):
            changed = False
            for bnd in bounds:
                p, ch = splice(p, bnd)
                changed |= ch
            if not changed:
                break
        paths[mid] = p
        left, right = _split_region(sd, region, p)
        stack.append((lo, mid - 1, lb, mid, left))
        stack.append((mid + 1, hi, mid, rb, right))

    through: dict[int, list[int]] = defaultdict(list)
    for i, p in enumerate(paths):
        for v in p.verts:
            through[v].append(i)
    rng = {}
    for v, lst in through.items():
        rng[v] = (lst[0], lst[-1])
    fam = PathFamily(sd, paths, [p.length for p in paths], rng)
    fam.forest = UnionForest(sd, fam)
    return fam


def through_is_contiguous(fam: PathFamily) -> bool:
    for v, (lo, hi) in fam.through.items():
        if any(v not in fam.paths[i] for i in range(lo, hi + 1)):
            return False
    return True


# --------------------------------------------------------------------------
# union forest and shared subpaths


class UnionForest:
    """U = union of the family, rooted per component, with LCA by binary lifting."""

    def __init__(self, sd: SlicedDual, fam: PathFamily):
        edges = sd.edges
        adj: dict[int, list[tuple[int, int]]] = defaultdict(list)
        eset = fam.union_edges()
        for e in eset:
            a, b = edges[e][:2]
            adj[a].append((b, e))
            adj[b].append((a, e))
        self.parent: dict[int, int] = {}
        self.pedge: dict[int, int] = {}
        self.depth: dict[int, int] = {}
        self.wdepth: dict[int, float] = {}
        self.root: dict[int, int] = {}
        self.is_forest = True
        verts = set()
        for p in fam.paths:
            verts.update(p.verts)
        for r in sorted(verts):
            if r in self.depth:
                continue
            self.parent[r] = r
            self.depth[r] = 0
            self.wdepth[r] = 0.0
            self.root[r] = r
            stack = [r]
            while stack:
                u = stack.pop()
                for v, e in adj[u]:
                    if e == self.pedge.get(u):
                        continue
                    if v in self.depth:
                        self.is_forest = False
                        continue
                    self.parent[v] = u
                    self.pedge[v] = e
                    self.depth[v] = self.depth[u] + 1
                    self.wdepth[v] = self.wdepth[u] + edges[e][2]
                    self.root[v] = r
                    stack.append(v)
        maxd = max(self.depth.values(), default=0)
        self.levels = max(1, maxd.bit_length())
        self.up = [dict(self.parent)]
        for j in range(1, self.levels):
            prev = self.up[-1]
            self.up.append({v: prev[prev[v]] for v in prev})

    def lca(self, a: int, b: int) -> int | None:
        if self.root.get(a) != self.root.get(b) or a not in self.root:
            return None
        if self.depth[a] < self.depth[b]:
            a, b = b, a
        diff = self.depth[a] - self.depth[b]
        j = 0
        while diff:
            if diff & 1:
                a = self.up[j][a]
            diff >>= 1
            j += 1
        if a == b:
            return a
        for j in range(self.levels - 1, -1, -1):
            if self.up[j][a] != self.up[j][b]:
                a, b = self.up[j][a], self.up[j][b]
        return self.parent[a]

    def tree_path(self, a: int, b: int) -> tuple[list[int], list[int]]:
        c = self.lca(a, b)
        left, le = [a], []
        while left[-1] != c:
            le.append(self.pedge[left[-1]])
            left.append(self.parent[left[-1]])
        right, re_ = [b], []
        while right[-1] != c:
            re_.append(self.pedge[right[-1]])
            right.append(self.parent[right[-1]])
        return left + right[-2::-1], le + re_[::-1]

    def dist(self, a: int, b: int) -> float:
        c = self.lca(a, b)
        return self.wdepth[a] + self.wdepth[b] - 2 * self.wdepth[c]


def shared_subpath(fam: PathFamily, i: int, j: int) -> tuple[list[int], list[int], float]:
    """p_i ∩ p_j as (vertices, edge ids, length), found with LCA queries on U."""
    F = fam.forest
    a, b = fam.paths[i].verts[0], fam.paths[i].verts[-1]
    c, d = fam.paths[j].verts[0], fam.paths[j].verts[-1]
    if F.root.get(a) != F.root.get(c):
        return [], [], 0.0
    cand = [F.lca(a, c), F.lca(a, d), F.lca(b, c), F.lca(b, d)]
    cand.sort(key=lambda v: -F.depth[v])
    u, v = cand[0], cand[1]
    lab, lcd = F.lca(a, b), F.lca(c, d)
    if F.depth[v] < max(F.depth[lab], F.depth[lcd]):
        return [], [], 0.0
    verts, eids = F.tree_path(u, v)
    # orient along p_i
    pi_idx = fam.paths[i].index
    if len(verts) > 1 and pi_idx[verts[0]] > pi_idx[verts[-1]]:
        verts.reverse()
        eids.reverse()
    return verts, eids, F.dist(u, v)


# --------------------------------------------------------------------------
# slabs between consecutive paths of an index sequence


@dataclass
class Slabs:
    """Position of every edge and face of the sliced dual w.r.t. paths ``A``.

    Slab ``j`` (0 <= j < len(A) - 1) lies between p_A[j] and p_A[j+1];
    slab -1 is Left of p_A[0] and slab len(A)-1 is Right of p_A[-1].
    Edges on some path of ``A`` have slab ``None``.
    """

    A: list[int]
    edge_slab: list[int | None]
    path_edges: set[int]

    def region(self, fam: PathFamily, j: int) -> list[int]:
        out = [e for e, s in enumerate(self.edge_slab) if s == j]
        if j >= 0:
            out += fam.paths[self.A[j]].eids
        if j + 1 < len(self.A):
            out += fam.paths[self.A[j + 1]].eids
        return list(dict.fromkeys(out))


def _slot_slab(sd, fam, A, u, q2) -> int:
    """Slab of rotation slot ``q2`` at a vertex ``u`` that lies on paths of A."""
    lo, hi = fam.through[u]
    pl = bisect_left(A, lo)
    ph = bisect_right(A, hi) - 1
    # paths A[pl..ph] pass through u; h is right of a prefix of them
    a, b = pl, ph + 1
    while a < b:
        m = (a + b) // 2
        if is_left(sd, fam.paths[A[m]], u, q2):
            b = m
        else:
            a = m + 1
    return a - 1


def classify(fam: PathFamily, A: list[int]) -> tuple[Slabs, dict]:
    """Assign slabs to edges (and return the per-component table for faces)."""
    sd = fam.sd
    A = list(A)
    edges = sd.edges
    path_edges = fam.union_edges(A)
    aset = set(A)
    Aarr = A

    def on_A(u):
        r = fam.through.get(u)
        if r is None:
            return False
        i = bisect_left(Aarr, r[0])
        return i < len(Aarr) and Aarr[i] <= r[1]

    on_cache: dict[int, bool] = {}

    def on(u):
        v = on_cache.get(u)
        if v is None:
            v = on_cache[u] = on_A(u)
        return v

    parent = list(range(len(edges)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    owner: dict[int, int] = {}
    for e, (a, b, *_rest) in enumerate(edges):
        if e in path_edges:
            continue
        for u in (a, b):
            if on(u):
                continue
            if u in owner:
                ra, rb = find(owner[u]), find(e)
                if ra != rb:
                    parent[ra] = rb
            else:
                owner[u] = e
    slab_of_root: dict[int, int] = {}
    for e, (a, b, *_rest) in enumerate(edges):
        if e in path_edges:
            continue
        r = find(e)
        if r in slab_of_root:
            continue
        if on(a):
            slab_of_root[r] = _slot_slab(sd, fam, A, a, 2 * sd.hpos[2 * e])
        elif on(b):
            slab_of_root[r] = _slot_slab(sd, fam, A, b, 2 * sd.hpos[2 * e + 1])
    edge_slab: list[int | None] = [None] * len(edges)
    for e in range(len(edges)):
        if e in path_edges:
            continue
        edge_slab[e] = slab_of_root.get(find(e), -1)
    del aset
    return Slabs(A, edge_slab, path_edges), {"on": on}


def face_slab(fam: PathFamily, slabs: Slabs, on, rec) -> int:
    """Slab containing the sliced-dual face of a face record."""
    sd = fam.sd
    for u, gap in rec.corners:
        if on(u):
            return _slot_slab(sd, fam, slabs.A, u, 2 * gap + 1)
    u, gap = rec.corners[0]
    rot = sd.rotation[u]
    for t in range(len(rot)):
        h = rot[(gap + t) % len(rot)]
        if h != OUTER:
            s = slabs.edge_slab[h >> 1]
            if s is not None:
                return s
    raise RuntimeError("face without a classifiable corner")
