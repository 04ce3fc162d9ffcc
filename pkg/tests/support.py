"""Helpers shared by the property and acceptance tests."""

import random

from planarvit.approx import Layout, build_buckets
from planarvit.exact import d_i_of_set
from planarvit.paths import region_adjacency, sssp


def region_vertices(sd, layout, j):
    """Vertices of the closed region between consecutive paths j and j + 1 of the layout."""
    sl = layout.regions[j]
    edges = layout.span(sl.lo, sl.hi)
    return sorted({u for e in edges for u in sd.edges[e][:2]})


def slice_inequality_failures(a, delta, count, rng: random.Random, total=False):
    """Random vertex sets inside one slice where some bucket path beats both bounds by delta or more.

    ``count`` sets are drawn per bucket with two or more paths, or in all
    when ``total`` is set (each from a random such bucket).
    """
    sd, fam = a.sd, a.fam
    buckets = build_buckets(fam, delta)
    multi = [r for r in sorted(buckets.lists) if len(buckets[r]) >= 2]
    failures = []
    checked = 0
    if not multi:
        return 0, failures
    plan = [rng.choice(multi) for _ in range(count)] if total else [r for r in multi for _ in range(count)]
    layouts = {}
    for r in plan:
        L = buckets[r]
        if r not in layouts:
            layouts[r] = Layout(fam, L)
        layout = layouts[r]
        slabs = range(len(L) - 1)
        j = rng.choice(slabs)
        verts = region_vertices(sd, layout, j)
        S = set(rng.sample(verts, rng.randint(1, min(4, len(verts)))))
        lo, hi = L[j], L[j + 1]
        best = min(d_i_of_set(sd, fam, i, S) for i in L)
        bound = min(d_i_of_set(sd, fam, lo, S), d_i_of_set(sd, fam, hi, S))
        checked += 1
        if not best > bound - delta:
            failures.append((r, j, sorted(S), best, bound))
    return checked, failures


def compression_mismatches(a, pairs, rng: random.Random):
    """Sampled vertex pairs of compressed slices whose distance differs from the uncompressed region."""
    sd, fam = a.sd, a.fam
    layout = Layout(fam, range(fam.k))
    bad = []
    checked = 0
    slices = layout.slices()
    if not slices:
        return 0, bad
    for _ in range(pairs):
        sl = rng.choice(slices)
        small = sl.adjacency(sd)
        verts = sorted({u for e in sl.edges for u in sd.edges[e][:2]} | {x for a_, b_, *_ in sl.virtual for x in (a_, b_)})
        u, v = rng.choice(verts), rng.choice(verts)
        d1 = sssp(small, [u], targets=[v])[0].get(v)
        d2 = sssp(region_adjacency(sd, layout.span(sl.lo, sl.hi)), [u], targets=[v])[0].get(v)
        checked += 1
        if d1 is None or d2 is None or abs(d1 - d2) > 1e-9:
            bad.append((sl.lo, sl.hi, u, v, d1, d2))
    return checked, bad
