import numpy as np
import pytest

from _oracles import brute_best_segment, random_connected_graph, random_search_state, segment_admissible, space_time_cost
from winpibt import Graph, ProvisionalPaths, SearchConstraints, build_grid, cope_stuck, find_best_path, valid_path_exists
from winpibt import maps
from winpibt.planner import NoPath, plan


def constraints(pp, agent, beta, graph):
    return SearchConstraints.build(pp, agent, beta, graph)


def test_lone_agent_has_path(grid32):
    pp = ProvisionalPaths([0])
    assert valid_path_exists(grid32, constraints(pp, 0, 3, grid32))


def test_agent_at_goal_stays(grid32):
    pp = ProvisionalPaths([4])
    res = find_best_path(grid32, 4, constraints(pp, 0, 3, grid32))
    assert res.segment == (4, 4, 4) and res.arrival == 0 and res.moves == 0


def _corridor():
    return Graph.from_edges(3, [(0, 1), (1, 2)])


def test_boxed_in_dead_end():
    g = _corridor()
    pp = ProvisionalPaths([0, 2])
    pp.register(1, [1, 0, 0])  # walks into the dead end through the only exit
    c = constraints(pp, 0, 3, g)
    assert not valid_path_exists(g, c)
    with pytest.raises(NoPath):
        find_best_path(g, 2, c)


@pytest.mark.parametrize("order", [(0, 2), (2, 0)])
def test_swap_blocked_when_others_overlap(order):
    # two registered paths share node 1 at t=0 and leave it in different
    # directions; the move 0 -> 1 swaps with one of them either way
    g = Graph.from_edges(5, [(0, 1), (1, 2), (1, 3), (0, 4)])
    pp = ProvisionalPaths([0, 1, 1])
    for j, dest in enumerate(order, start=1):
        pp.register(j, [dest])
    res = find_best_path(g, 1, constraints(pp, 0, 1, g))
    assert res.segment == (4,) and res.arrival is None


def test_fig3_first_agent_ideal_path(fig3):
    g = fig3.graph
    pp = ProvisionalPaths(fig3.starts)
    res = find_best_path(g, 2, constraints(pp, 0, 3, g))
    assert res.segment == (4, 5, 2) and res.arrival == 3


def test_crossing_node_closed_while_longer_path_passes():
    # top row 0-1-2-3, crossing node 2 has a branch 2-4-5 below it
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (2, 4), (4, 5)])
    pp = ProvisionalPaths([0, 4, 5])
    pp.register(0, [1, 2, 3])
    for _ in range(3):
        pp.secure(0)
    c = constraints(pp, 1, 3, g)
    assert not c.allowed[1, 2] and not c.allowed[2, 2]
    assert c.allowed[3, 2]
    assert valid_path_exists(g, c)
    res = find_best_path(g, 1, c)
    assert res.segment[:2] == (4, 4) and res.segment[2] == 2


def test_fig1_second_agent_detour():
    g = maps.fig1_graph()
    a1 = [4, 3, 2, 6, 9, 8]
    pp = ProvisionalPaths([4, 8])
    pp.register(0, a1[1:])
    for _ in range(5):
        pp.secure(0)
    res = find_best_path(g, 4, constraints(pp, 1, 7, g))
    assert res.segment == (7, 5, 0, 1, 2, 3, 4)
    assert res.arrival == 7 == space_time_cost(g, 8, 4, a1)


def test_fallback_ends_closest_to_goal():
    g = _corridor()
    pp = ProvisionalPaths([0, 2])
    pp.register(1, [2, 2])
    res = find_best_path(g, 2, constraints(pp, 0, 2, g))
    assert res.arrival is None and res.segment == (1, 1)


def test_cope_stuck():
    pp = ProvisionalPaths([3])
    cope_stuck(pp, 0, 0)
    assert pp.committed(0) == [3]
    cope_stuck(pp, 0, 2)
    assert pp.committed(0) == [3, 3, 3]


def test_horizon_must_exceed_frontier(grid32):
    pp = ProvisionalPaths([0])
    with pytest.raises(ValueError):
        constraints(pp, 0, 0, grid32)


def test_deterministic(rng):
    g = random_connected_graph(rng, 10)
    pp, beta = random_search_state(rng, g, 3)
    a = plan(g, pp, 0, 5, beta)
    b = plan(g, pp, 0, 5, beta)
    assert a == b


def test_matches_exhaustive_search(rng):
    checked = 0
    while checked < 40:
        n_nodes = int(rng.integers(4, 13))
        g = random_connected_graph(rng, n_nodes, p=float(rng.uniform(0.15, 0.5)))
        pp, beta = random_search_state(rng, g, int(rng.integers(2, 5)), max_h=6)
        goal = int(rng.integers(n_nodes))
        expected = brute_best_segment(g, pp, 0, goal, beta)
        got = plan(g, pp, 0, goal, beta)
        if expected is None:
            assert not got.found
        else:
            seg, arrival, moves = expected
            t0 = pp.frontier(0)
            assert got.segment == seg
            assert got.arrival == (None if arrival is None else t0 + arrival)
            assert got.moves == moves
            assert segment_admissible(pp, 0, got.segment, int(pp.last[0]))
        checked += 1
