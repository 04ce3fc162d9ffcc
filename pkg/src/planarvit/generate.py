"""Random test instances: capacitated grids and Delaunay-based planar graphs."""

from __future__ import annotations

import numpy as np

from .errors import BadParams
from .planar import PlaneGraph, build_plane_graph, rotations_from_coords


def _caps(rng, count, cap_min, cap_max, integer):
    if cap_min <= 0 or cap_max < cap_min:
        raise BadParams(f"capacity range [{cap_min}, {cap_max}] must be positive and ordered")
    if integer:
        return [float(c) for c in rng.integers(int(cap_min), int(cap_max) + 1, size=count)]
    return [float(c) for c in rng.uniform(cap_min, cap_max, size=count)]


def grid_instance(
    size: int,
    cap_min: float = 1,
    cap_max: float = 1,
    seed: int = 0,
    *,
    terminals: str = "corner",
    integer: bool = True,
) -> PlaneGraph:
    """``size`` x ``size`` grid; vertex ``r*size + c`` sits at (c, r).

    Corner terminals are the bottom-left and top-right vertices.
    """
    if size < 2:
        raise BadParams(f"grid size must be >= 2, got {size}")
    rng = np.random.default_rng(seed)
    coords = [(c, r) for r in range(size) for c in range(size)]
    pairs = []
    for r in range(size):
        for c in range(size - 1):
            pairs.append((r * size + c, r * size + c + 1))
    for r in range(size - 1):
        for c in range(size):
            pairs.append((r * size + c, (r + 1) * size + c))
    caps = _caps(rng, len(pairs), cap_min, cap_max, integer)
    edges = [(u, v, w) for (u, v), w in zip(pairs, caps)]
    n = size * size
    if terminals == "corner":
        s, t = 0, n - 1
    elif terminals == "random":
        s, t = (int(x) for x in rng.choice(n, size=2, replace=False))
    else:
        raise BadParams(f"unknown terminal placement {terminals!r}")
    return build_plane_graph(edges, rotations_from_coords(n, edges, coords), s, t, coords=coords)


def random_planar_instance(
    n: int,
    cap_min: float = 1,
    cap_max: float = 20,
    seed: int = 0,
    *,
    keep: float = 0.7,
    integer: bool = True,
) -> PlaneGraph:
    """Delaunay triangulation of ``n`` random points with edges thinned out.

    Each edge is dropped with probability ``1 - keep`` unless dropping it
    would disconnect the graph.  Terminals are two distinct random vertices.
    """
    from scipy.spatial import Delaunay

    if n < 3:
        raise BadParams(f"random planar instance needs n >= 3, got {n}")
    rng = np.random.default_rng(seed)
    pts = rng.random((n, 2))
    tri = Delaunay(pts)
    pairs = set()
    for simplex in tri.simplices:
        a, b, c = (int(x) for x in simplex)
        for u, v in ((a, b), (b, c), (a, c)):
            pairs.add((min(u, v), max(u, v)))
    pairs = sorted(pairs)
    order = rng.permutation(len(pairs))
    alive = set(pairs)
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for u, v in pairs:
        adj[u].add(v)
        adj[v].add(u)
    for j in order:
        if rng.random() < keep:
            continue
        u, v = pairs[j]
        adj[u].discard(v)
        adj[v].discard(u)
        if _reaches(adj, u, v):
            alive.discard((u, v))
        else:
            adj[u].add(v)
            adj[v].add(u)
    kept = [p for p in pairs if p in alive]
    caps = _caps(rng, len(kept), cap_min, cap_max, integer)
    edges = [(u, v, w) for (u, v), w in zip(kept, caps)]
    coords = [(float(x), float(y)) for x, y in pts]
    s, t = (int(x) for x in rng.choice(n, size=2, replace=False))
    return build_plane_graph(edges, rotations_from_coords(n, edges, coords), s, t, coords=coords)


def _reaches(adj, a, b) -> bool:
    seen = {a}
    stack = [a]
    while stack:
        x = stack.pop()
        if x == b:
            return True
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return False


def perturb_quarters(g: PlaneGraph, seed: int = 0, spread: int = 3) -> PlaneGraph:
    """Add a random multiple of 0.25 (in ``[-spread, spread]`` quarters) to each capacity.

    Capacities stay >= 0.25.
    """
    rng = np.random.default_rng(seed)
    caps = [
        max(0.25, c + 0.25 * int(rng.integers(-spread, spread + 1))) for _, _, c in g.edges
    ]
    return g.with_capacities(caps)
