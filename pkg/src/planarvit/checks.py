"""Self-checks of one instance against the independent oracle and structural invariants."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .approx import Layout, approx_vitality, build_buckets
from .exact import VitalityValue, edge_vitality_exact, vertex_vitality_exact
from .oracle import UndirectedNetwork, brute_vitality, check_size, generic_max_flow
from .paths import crossing_count, is_single_touch
from .pipeline import analyze
from .planar import PlaneGraph

TOL = 1e-9


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def first_violation(exact: dict, rows: list[VitalityValue], delta: float):
    """First row outside (vit - delta, vit] of its exact value, or None."""
    for r in rows:
        v = exact[(r.kind, r.id)]
        if not (v - delta < r.value <= v + TOL):
            return r, v
    return None


def structural_checks(a) -> list[CheckResult]:
    g, sd, fam = a.graph, a.sd, a.fam
    out = []
    euler = g.n - g.m + len(g.faces)
    out.append(CheckResult("euler", euler == 2, f"V - E + F = {euler}"))
    bad = None
    for i, j in itertools.combinations(range(fam.k), 2):
        p, q = fam.paths[i], fam.paths[j]
        if not (is_single_touch(p, q) and is_single_touch(q, p)) or crossing_count(sd, p, q):
            bad = (i, j)
            break
    out.append(CheckResult("noncrossing-single-touch", bad is None, f"pair {bad}" if bad else ""))
    want = g.m + sd.k - 1
    out.append(CheckResult("sliced-dual-edges", sd.ne == want, f"|E(D)| = {sd.ne}, expected {want}"))
    layout = Layout(fam, build_buckets(fam, 1.0)[0])
    count: dict[int, int] = {}
    for sl in layout.slices():
        for e in sl.edges:
            count[e] = count.get(e, 0) + 1
    worst = max(count.values(), default=0)
    out.append(CheckResult("slice-multiplicity", worst <= 2, f"max multiplicity {worst}"))
    return out


def check_instance(g: PlaneGraph, samples: int | None = None, seed: int = 0) -> list[CheckResult]:
    """Oracle equivalence plus invariants; ``samples`` limits the elements checked."""
    net = UndirectedNetwork.from_plane(g)
    check_size(net)
    a = analyze(g)
    mf = generic_max_flow(net)
    results = [CheckResult("max-flow", abs(a.mf - mf) <= TOL, f"pipeline {a.mf}, oracle {mf}")]
    elements = [("edge", e) for e in range(g.m)]
    elements += [("vertex", v) for v in range(g.n) if v not in (g.s, g.t)]
    if samples is not None and samples < len(elements):
        elements = random.Random(seed).sample(elements, samples)
    exact = {}
    bad = None
    for kind, x in elements:
        fn = edge_vitality_exact if kind == "edge" else vertex_vitality_exact
        val = fn(a.sd, a.fam, x).value
        exact[(kind, x)] = val
        ref = brute_vitality(net, (kind, x), mf)
        if bad is None and abs(val - ref) > TOL:
            bad = f"{kind} {x}: pipeline {val}, oracle {ref}"
    results.append(CheckResult("exact-vitality", bad is None, bad or ""))
    c = max([g.vertex_capacity(v) for v in range(g.n)] + [1.0])
    rows = [r for r in approx_vitality(a.sd, a.fam, c, 1.0) if (r.kind, r.id) in exact]
    viol = first_violation(exact, rows, 1.0)
    detail = f"{viol[0].kind} {viol[0].id}: approx {viol[0].value}, exact {viol[1]}" if viol else ""
    results.append(CheckResult("approx-guarantee", viol is None, detail))
    results.extend(structural_checks(a))
    return results
