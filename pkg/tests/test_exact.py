import itertools

import networkx as nx
import pytest

from instances import DIAMOND_EDGE_VIT, DIAMOND_VERTEX_VIT, cycle, diamond, single_edge, with_leaf
from planarvit.errors import TerminalQuery
from planarvit.exact import (
    all_edge_vitality,
    all_vertex_vitality,
    batch_vertex_vitality,
    d_i_of_set,
    edge_vitality_exact,
    max_flow_value,
    vertex_vitality_exact,
)
from planarvit.generate import grid_instance, random_planar_instance
from planarvit.oracle import UndirectedNetwork, brute_vitality, generic_max_flow
from planarvit.pipeline import analyze


def test_max_flow_values():
    assert max_flow_value(analyze(single_edge()).fam) == 7
    assert max_flow_value(analyze(diamond()).fam) == 5
    assert max_flow_value(analyze(grid_instance(3)).fam) == 2


def test_diamond_vitality():
    a = analyze(diamond())
    for e, v in DIAMOND_EDGE_VIT.items():
        assert edge_vitality_exact(a.sd, a.fam, e).value == v
    for x, v in DIAMOND_VERTEX_VIT.items():
        assert vertex_vitality_exact(a.sd, a.fam, x).value == v
    assert [r.value for r in batch_vertex_vitality(a.sd, a.fam, [1, 2])] == [3, 3]
    assert batch_vertex_vitality(a.sd, a.fam, []) == []
    with pytest.raises(TerminalQuery):
        vertex_vitality_exact(a.sd, a.fam, 0)


def test_single_edge_and_leaf():
    a = analyze(single_edge())
    assert edge_vitality_exact(a.sd, a.fam, 0).value == 7
    a = analyze(with_leaf())
    assert vertex_vitality_exact(a.sd, a.fam, 4).value == 0
    assert edge_vitality_exact(a.sd, a.fam, 5).value == 0


def test_unit_cycle():
    g = cycle(8)
    a = analyze(g)
    net = UndirectedNetwork.from_plane(g)
    for e in range(g.m):
        v = edge_vitality_exact(a.sd, a.fam, e).value
        assert v in (0, 1) and v == brute_vitality(net, ("edge", e))


def contracted_distance(sd, i, S):
    h = nx.Graph()
    label = lambda u: "S" if u in S else u  # noqa: E731
    for a, b, w, *_rest in sd.edges:
        a, b = label(a), label(b)
        if a == b:
            continue
        if not h.has_edge(a, b) or h[a][b]["weight"] > w:
            h.add_edge(a, b, weight=w)
    return nx.dijkstra_path_length(h, label(sd.x(i)), label(sd.y(i)))


@pytest.mark.parametrize("make", [diamond, lambda: grid_instance(4, 1, 5, 2)])
def test_d_i_of_set_matches_contraction(make):
    a = analyze(make())
    sd, fam = a.sd, a.fam
    for i in range(sd.k):
        assert d_i_of_set(sd, fam, i, set()) == fam.d[i]
        for e in range(sd.ne):
            S = set(sd.edges[e][:2])
            assert d_i_of_set(sd, fam, i, S) == pytest.approx(contracted_distance(sd, i, S))
        for rec in sd.face_records():
            assert d_i_of_set(sd, fam, i, rec.face) == pytest.approx(contracted_distance(sd, i, rec.face))


@pytest.mark.parametrize(
    "make",
    [lambda: grid_instance(4), lambda: grid_instance(5, 1, 6, 3, terminals="random"), lambda: random_planar_instance(40, 1, 7, 5)],
)
def test_exact_matches_brute(make):
    g = make()
    a = analyze(g)
    net = UndirectedNetwork.from_plane(g)
    mf = generic_max_flow(net)
    for r in all_edge_vitality(a.sd, a.fam):
        assert r.value == brute_vitality(net, ("edge", r.id), mf)
        assert 0 <= r.value <= min(r.capacity, mf)
    for r in all_vertex_vitality(a.sd, a.fam):
        assert r.value == brute_vitality(net, ("vertex", r.id), mf)
        assert 0 <= r.value <= mf


def test_capacity_filter():
    g = grid_instance(4, 1, 5, 9)
    a = analyze(g)
    rows = all_edge_vitality(a.sd, a.fam, c=2)
    assert {r.id for r in rows} == {e for e in range(g.m) if g.capacity(e) <= 2}


@pytest.mark.parametrize("make", [diamond, lambda: grid_instance(3, 1, 3, 1)])
def test_walks_through_both_pi_copies_are_long(make):
    g = make()
    a = analyze(g)
    sd, fam = a.sd, a.fam
    h = nx.MultiGraph()
    for e, (u, v, w, *_rest) in enumerate(sd.edges):
        h.add_edge(u, v, key=e, weight=w)
    for pe in sd.pi_edges:
        ex, ey = sd.primal_to_d[pe]
        for i in range(sd.k):
            for path in nx.all_simple_edge_paths(h, sd.x(i), sd.y(i)):
                keys = {k for _, _, k in path}
                if ex in keys and ey in keys:
                    length = sum(sd.edges[k][2] for k in keys)
                    assert length >= fam.mf + 2 * g.capacity(pe)
