import networkx as nx
import numpy as np
import pytest

from _oracles import bfs_dist, brute_pibt_condition, random_connected_graph
from winpibt import DistanceOracle, Graph, build_grid, check_pibt_condition
from winpibt.graph import DisconnectedMap, EmptyMap, GraphError, UnknownNode


def test_single_cell_grid():
    g = build_grid(1, 1)
    assert g.n_nodes == 1 and g.n_edges == 0


def test_3x2_grid_counts(grid32):
    assert grid32.n_nodes == 6
    assert grid32.n_edges == 7
    assert grid32.kind == "undirected-grid"


def test_ring_around_blocked_centre():
    mask = np.ones((3, 3), dtype=bool)
    mask[1, 1] = False
    g = build_grid(3, 3, mask)
    assert (g.n_nodes, g.n_edges) == (8, 8)
    assert check_pibt_condition(g).satisfied


def test_empty_map_rejected():
    with pytest.raises(EmptyMap):
        build_grid(2, 2, np.zeros((2, 2), dtype=bool))


def test_disconnected_map_names_cell():
    mask = np.array([[True, False, True]])
    with pytest.raises(DisconnectedMap) as info:
        build_grid(3, 1, mask)
    assert info.value.cell == (2, 0)


def test_grid_node_ids_are_row_major(grid32):
    assert [grid32.cell(v) for v in range(6)] == [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)]
    assert grid32.node_at(1, 1) == 4


def test_grid_adjacency_symmetric(rng):
    mask = rng.random((9, 9)) > 0.2
    try:
        g = build_grid(9, 9, mask)
    except GraphError:
        pytest.skip("random mask disconnected")
    for u, v in g.edges():
        assert g.has_edge(v, u)


def test_rejects_self_loops_and_duplicates():
    with pytest.raises(GraphError):
        Graph([(0, 1), (0, 1)])
    with pytest.raises(GraphError):
        Graph([(0, 1), (1,)])


def test_directed_must_be_strongly_connected():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 1), (1, 2)], directed=True)


def test_dist_examples(grid32):
    assert grid32.dist(0, 0) == 0
    assert grid32.dist(0, 5) == 3
    assert grid32.diameter() == 3


def test_dist_unknown_node(grid32):
    with pytest.raises(UnknownNode):
        grid32.dist(0, 6)


@pytest.mark.parametrize("strategy", ["all-pairs", "bfs"])
def test_dist_matches_naive_bfs(rng, strategy):
    for _ in range(5):
        n = int(rng.integers(2, 200))
        g = random_connected_graph(rng, n, p=min(1.0, 4.0 / n))
        oracle = DistanceOracle(g, strategy)
        for u, v in rng.integers(0, n, size=(30, 2)):
            assert oracle(int(u), int(v)) == bfs_dist(g.adjacency, int(u), int(v))


def test_path_graph_violates_condition():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    res = check_pibt_condition(g)
    assert not res.satisfied and res.witness in {(0, 1), (1, 2)}


def test_grid_satisfies_condition(grid32):
    assert check_pibt_condition(grid32)


def test_directed_ring_satisfies_condition():
    g = Graph.from_edges(3, [(0, 1), (1, 2), (2, 0)], directed=True)
    assert check_pibt_condition(g).satisfied


def test_directed_two_cycle_is_too_short():
    g = Graph.from_edges(2, [(0, 1), (1, 0)], directed=True)
    assert not check_pibt_condition(g).satisfied


def test_condition_matches_cycle_enumeration(rng):
    for _ in range(40):
        n = int(rng.integers(2, 11))
        g = random_connected_graph(rng, n, p=float(rng.uniform(0.2, 0.7)))
        assert check_pibt_condition(g).satisfied == brute_pibt_condition(g.adjacency)


def test_to_networkx_roundtrip(grid32):
    h = grid32.to_networkx()
    assert isinstance(h, nx.Graph) and h.number_of_edges() == 7
