import pytest

from instances import diamond, single_edge, DIAMOND_EDGES, DIAMOND_COORDS
from planarvit.errors import (
    DisconnectedGraph,
    InvalidRotation,
    NonPositiveCapacity,
    NotPlanarEmbedding,
    SelfLoop,
    TerminalMissing,
)
from planarvit.generate import grid_instance, random_planar_instance
from planarvit.planar import build_dual, build_plane_graph, dart_head, rotations_from_coords


def test_diamond_faces():
    g = diamond()
    assert len(g.faces) == 3
    assert g.n - g.m + len(g.faces) == 2
    # face 0 lies right of dart 0 (s -> a): the triangle s, a, b
    assert g.dart_face[0] == 0
    assert g.faces[0].vertices == {0, 1, 2}
    outer = [f for f in g.faces if f.is_outer]
    assert len(outer) == 1 and outer[0].vertices == {0, 1, 2, 3}


def test_face_walks_are_closed():
    g = grid_instance(4, 1, 3, seed=2)
    for f in g.faces:
        for d, nxt in zip(f.darts, f.darts[1:] + f.darts[:1]):
            assert dart_head(g.edges, d) == f.walk[f.darts.index(nxt)][0]
    assert sorted(d for f in g.faces for d in f.darts) == list(range(2 * g.m))


def test_grid_face_count():
    g = grid_instance(3)
    assert (g.n, g.m, len(g.faces)) == (9, 12, 5)


def test_single_edge_has_one_face():
    g = single_edge()
    assert len(g.faces) == 1
    assert len(g.faces[0].darts) == 2


def test_random_planar_euler():
    g = random_planar_instance(50, seed=7)
    assert g.n - g.m + len(g.faces) == 2


def test_rotation_from_coords_is_ccw():
    edges = [(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1)]
    coords = [(0, 0), (1, 0), (0, 1), (-1, 0), (0, -1)]
    rot = rotations_from_coords(5, edges, coords)
    assert rot[0] == [3, 0, 1, 2]  # angles -pi/2, 0, pi/2, pi


def test_validation_errors():
    rot = rotations_from_coords(4, DIAMOND_EDGES, DIAMOND_COORDS)
    with pytest.raises(SelfLoop):
        build_plane_graph([(0, 0, 1)], [[0]], 0, 0)
    with pytest.raises(NonPositiveCapacity):
        build_plane_graph([(0, 1, 0)], [[0], [0]], 0, 1)
    with pytest.raises(NonPositiveCapacity):
        build_plane_graph([(0, 1, -2)], [[0], [0]], 0, 1)
    with pytest.raises(InvalidRotation):
        build_plane_graph(DIAMOND_EDGES, [rot[0], rot[1], rot[2], rot[3][:1]], 0, 3)
    with pytest.raises(TerminalMissing):
        build_plane_graph(DIAMOND_EDGES, rot, 0, 9)
    with pytest.raises(TerminalMissing):
        build_plane_graph(DIAMOND_EDGES, rot, 2, 2)
    with pytest.raises(DisconnectedGraph):
        build_plane_graph([(0, 1, 1), (2, 3, 1)], [[0], [0], [1], [1]], 0, 1)


def test_non_planar_rotation_rejected():
    # K4 drawn planar, then one rotation flipped: the surface gets a handle
    coords = [(0, 0), (4, 0), (2, 3), (2, 1)]
    edges = [(0, 1, 1), (1, 2, 1), (2, 0, 1), (0, 3, 1), (1, 3, 1), (2, 3, 1)]
    rot = rotations_from_coords(4, edges, coords)
    build_plane_graph(edges, rot, 0, 1)
    bad = [list(r) for r in rot]
    bad[3] = [bad[3][0], bad[3][2], bad[3][1]]
    with pytest.raises(NotPlanarEmbedding):
        build_plane_graph(edges, bad, 0, 1)


def test_dual_of_diamond():
    g = diamond()
    d = build_dual(g)
    assert d.n == 3 and d.m == 5
    assert list(d.weight) == [c for *_, c in DIAMOND_EDGES]
    # every dual edge joins the faces on the two sides of its primal edge
    for e, (a, b) in enumerate(d.ends):
        assert {a, b} == {g.dart_face[2 * e], g.dart_face[2 * e + 1]}
    # f*_a: the three faces around a
    assert d.face_vertices(1) == {0, 1, 2}


def test_dual_of_tree_is_loop():
    d = build_dual(single_edge())
    assert d.n == 1 and d.ends == ((0, 0),)
    adj = d.adjacency()
    assert len(adj[0]) == 1


def test_with_capacities_keeps_structure():
    g = diamond()
    h = g.with_capacities([1, 1, 1, 1, 1])
    assert h.rotation == g.rotation and [f.darts for f in h.faces] == [f.darts for f in g.faces]
    assert h.vertex_capacity(1) == 3
