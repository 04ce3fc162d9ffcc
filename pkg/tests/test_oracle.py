import random

import pytest

from instances import DIAMOND_EDGE_VIT, DIAMOND_VERTEX_VIT, diamond, single_edge
from planarvit.errors import OracleTooLarge, TerminalDeletion
from planarvit.generate import grid_instance, random_planar_instance
from planarvit.oracle import (
    UndirectedNetwork,
    brute_vitality,
    check_size,
    generic_max_flow,
    min_cut_by_enumeration,
)


def test_known_values():
    assert generic_max_flow(UndirectedNetwork.from_plane(single_edge())) == 7
    assert generic_max_flow(UndirectedNetwork.from_plane(diamond())) == 5
    assert generic_max_flow(UndirectedNetwork.from_plane(grid_instance(3))) == 2
    assert generic_max_flow(UndirectedNetwork.from_plane(grid_instance(2))) == 2


def test_diamond_brute_vitality():
    net = UndirectedNetwork.from_plane(diamond())
    for e, v in DIAMOND_EDGE_VIT.items():
        assert brute_vitality(net, ("edge", e)) == v
    for x, v in DIAMOND_VERTEX_VIT.items():
        assert brute_vitality(net, ("vertex", x)) == v
    with pytest.raises(TerminalDeletion):
        brute_vitality(net, ("vertex", 0))


@pytest.mark.parametrize("seed", range(10))
def test_dinic_matches_cut_enumeration(seed):
    rng = random.Random(seed)
    g = random_planar_instance(rng.randint(4, 11), 1, 9, seed)
    net = UndirectedNetwork.from_plane(g)
    assert generic_max_flow(net) == min_cut_by_enumeration(net)


def test_parallel_edges_add_up():
    net = UndirectedNetwork(2, [(0, 1, 2), (1, 0, 3)], 0, 1)
    assert generic_max_flow(net) == 5
    assert brute_vitality(net, ("edge", 1)) == 3


def test_size_guards():
    net = UndirectedNetwork.from_plane(grid_instance(4))
    check_size(net)
    with pytest.raises(OracleTooLarge):
        check_size(net, limit=5)
    with pytest.raises(OracleTooLarge):
        min_cut_by_enumeration(net)
