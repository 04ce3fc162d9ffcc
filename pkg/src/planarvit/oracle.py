"""Reference answers that share nothing with the planar pipeline.

Max flow is computed with Dinic's algorithm on the undirected network
(every edge becomes two opposite arcs of the same capacity); vitality by
deleting the element and recomputing.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations

from .errors import OracleTooLarge, TerminalDeletion

DEFAULT_EDGE_LIMIT = 5000


class UndirectedNetwork:
    """Plain capacitated undirected multigraph with terminals."""

    def __init__(self, n: int, edges, s: int, t: int):
        self.n = n
        self.edges = [(int(u), int(v), float(c)) for u, v, c in edges]
        self.s = s
        self.t = t

    @classmethod
    def from_plane(cls, g) -> "UndirectedNetwork":
        return cls(g.n, g.edges, g.s, g.t)

    def without_edge(self, e: int) -> "UndirectedNetwork":
        return UndirectedNetwork(self.n, self.edges[:e] + self.edges[e + 1 :], self.s, self.t)

    def without_vertex(self, v: int) -> "UndirectedNetwork":
        kept = [(a, b, c) for a, b, c in self.edges if v not in (a, b)]
        return UndirectedNetwork(self.n, kept, self.s, self.t)


def generic_max_flow(net: UndirectedNetwork) -> float:
    """Dinic's blocking-flow max flow from ``net.s`` to ``net.t``."""
    n = net.n
    head: list[int] = []
    cap: list[float] = []
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v, c in net.edges:
        # arcs 2j and 2j+1 are each other's residual twin
        adj[u].append(len(head))
        head.append(v)
        cap.append(c)
        adj[v].append(len(head))
        head.append(u)
        cap.append(c)
    s, t = net.s, net.t
    flow = 0.0
    eps = 1e-12
    while True:
        level = [-1] * n
        level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for a in adj[u]:
                if cap[a] > eps and level[head[a]] < 0:
                    level[head[a]] = level[u] + 1
                    q.append(head[a])
        if level[t] < 0:
            return flow
        it = [0] * n

        def push(u, limit):
            # iterative DFS would be faster; recursion depth is bounded by the level of t
            if u == t:
                return limit
            while it[u] < len(adj[u]):
                a = adj[u][it[u]]
                v = head[a]
                if cap[a] > eps and level[v] == level[u] + 1:
                    got = push(v, min(limit, cap[a]))
                    if got > 0:
                        cap[a] -= got
                        cap[a ^ 1] += got
                        return got
                it[u] += 1
            return 0.0

        while True:
            f = push(s, float("inf"))
            if f <= 0:
                break
            flow += f


def brute_vitality(net: UndirectedNetwork, element: tuple[str, int], mf: float | None = None) -> float:
    """MF minus the max flow after deleting ``("edge", e)`` or ``("vertex", v)``."""
    kind, x = element
    if mf is None:
        mf = generic_max_flow(net)
    if kind == "edge":
        return mf - generic_max_flow(net.without_edge(x))
    if kind == "vertex":
        if x in (net.s, net.t):
            raise TerminalDeletion(f"vertex {x} is a terminal")
        return mf - generic_max_flow(net.without_vertex(x))
    raise ValueError(f"unknown element kind {kind!r}")


def check_size(net: UndirectedNetwork, limit: int = DEFAULT_EDGE_LIMIT) -> None:
    if len(net.edges) > limit:
        raise OracleTooLarge(f"{len(net.edges)} edges exceed the oracle limit of {limit}")


def min_cut_by_enumeration(net: UndirectedNetwork) -> float:
    """Minimum st-cut over all vertex bipartitions; only for tiny graphs."""
    if net.n > 12:
        raise OracleTooLarge("cut enumeration is limited to 12 vertices")
    others = [v for v in range(net.n) if v not in (net.s, net.t)]
    best = float("inf")
    for r in range(len(others) + 1):
        for extra in combinations(others, r):
            side = {net.s, *extra}
            val = sum(c for a, b, c in net.edges if (a in side) != (b in side))
            best = min(best, val)
    return best
