"""Brute-force reference implementations and random instance builders.

Everything here is written directly from the definitions and shares no code
with the package kernels, so tests can compare the two.
"""

from __future__ import annotations

from collections import deque

import networkx as nx
import numpy as np

from winpibt import build_grid, check_pibt_condition
from winpibt.graph import Graph, GraphError
from winpibt.paths import ProvisionalPaths


# -- graphs --------------------------------------------------------------


def bfs_dist(adj, u, v):
    seen = {u: 0}
    q = deque([u])
    while q:
        x = q.popleft()
        if x == v:
            return seen[x]
        for y in adj[x]:
            if y not in seen:
                seen[y] = seen[x] + 1
                q.append(y)
    return None


def edge_on_simple_cycle(adj, u, v, directed):
    """Is there a simple path v -> ... -> u with at least three nodes?"""
    n = len(adj)
    for length in range(3, n + 1):
        # simple path v = p0, ..., p_{length-1} = u; the cycle has `length` nodes
        def walk(path):
            last = path[-1]
            if len(path) == length:
                return last == u
            for w in adj[last]:
                if w in path or (w == u and len(path) + 1 != length):
                    continue
                if walk(path + [w]):
                    return True
            return False

        if walk([v]):
            return True
    return False


def brute_pibt_condition(adj, directed=False):
    for u in range(len(adj)):
        for v in adj[u]:
            if not directed and v < u:
                continue
            if not edge_on_simple_cycle(adj, u, v, directed):
                return False
    return True


def random_connected_graph(rng, n_nodes, p=0.3):
    while True:
        g = nx.gnp_random_graph(n_nodes, p, seed=int(rng.integers(1 << 31)))
        if nx.is_connected(g):
            return Graph.from_edges(n_nodes, g.edges())


def random_biconnected_grid(rng, max_side=10, min_side=3, hole_p=0.15, min_nodes=4):
    while True:
        w, h = (int(x) for x in rng.integers(min_side, max_side + 1, size=2))
        mask = rng.random((h, w)) > hole_p
        try:
            g = build_grid(w, h, mask)
        except GraphError:
            continue
        if g.n_nodes >= min_nodes and check_pibt_condition(g):
            return g


# -- paths ---------------------------------------------------------------


def pair_ok(p, q):
    """Disentangled test written straight from the three clauses."""
    if len(p) > len(q):
        p, q = q, p
    li, lj = len(p) - 1, len(q) - 1
    for t in range(li + 1):
        if p[t] == q[t]:
            return False
        if t > 0 and p[t] == q[t - 1] and p[t - 1] == q[t]:
            return False
    return all(q[t] != p[li] for t in range(li + 1, lj + 1))


def random_walk(rng, graph, start, steps):
    out = [start]
    for _ in range(steps):
        u = out[-1]
        out.append(int(rng.choice((u, *graph.adjacency[u]))))
    return out


# -- single-agent search -------------------------------------------------


def segment_admissible(pp: ProvisionalPaths, agent: int, seg, start: int) -> bool:
    t0 = int(pp.ell[agent])
    full = {t0: start}
    for k, v in enumerate(seg, start=t0 + 1):
        full[k] = v
    beta = t0 + len(seg)
    for j in range(pp.n_agents):
        if j == agent:
            continue
        reg = pp.registered(j)
        end = len(reg) - 1
        for t in range(t0 + 1, min(beta, end) + 1):
            if full[t] == reg[t]:
                return False
            if full[t] == reg[t - 1] and full[t - 1] == reg[t]:
                return False
        ell_j = int(pp.ell[j])
        for ti in range(t0 + 1, min(ell_j, beta + 1)):
            for tj in range(ti + 1, ell_j + 1):
                if full[ti] == reg[tj]:
                    return False
    return True


def brute_best_segment(graph: Graph, pp: ProvisionalPaths, agent: int, goal: int, beta: int):
    """Exhaustive search; returns (segment, arrival_layer or None, moves) or None.

    Ranking: reach-and-hold the goal earliest; otherwise end closest to the
    goal.  Then fewest moves, then the lexicographically largest sequence.
    """
    start = int(pp.last[agent])
    t0 = int(pp.ell[agent])
    H = beta - t0
    best_key, best = None, None
    d_goal = [bfs_dist(graph.adjacency, v, goal) for v in range(graph.n_nodes)]

    def rec(seg):
        nonlocal best_key, best
        if not segment_admissible(pp, agent, seg, start):
            return
        if len(seg) == H:
            full = [start, *seg]
            arrival = None
            for k in range(H, -1, -1):
                if full[k] != goal:
                    break
                arrival = k
            moves = sum(a != b for a, b in zip(full, full[1:]))
            if arrival is not None:
                key = (0, arrival, moves)
            else:
                key = (1, d_goal[full[-1]], moves)
            cand = tuple(seg)
            if best_key is None or key < best_key or (key == best_key and cand > best):
                best_key, best = key, cand
            return
        u = seg[-1] if seg else start
        for v in (u, *graph.adjacency[u]):
            rec(seg + [v])

    rec([])
    if best is None:
        return None
    arrival = best_key[1] if best_key[0] == 0 else None
    return best, arrival, best_key[2]


def random_search_state(rng, graph: Graph, n_agents: int, max_h: int = 8):
    """Random provisional-path state for the search oracle.

    Agent 0 searches.  The other agents get random committed walks and
    random tentative extensions; the state need not be disentangled.
    """
    V = graph.n_nodes
    starts = [int(v) for v in rng.choice(V, n_agents, replace=False)]
    pp = ProvisionalPaths(starts, capacity=32)
    t0 = int(rng.integers(0, 3))
    for _ in range(t0):
        pp.append(0, int(rng.choice((pp.last[0], *graph.adjacency[int(pp.last[0])]))))
    beta = t0 + int(rng.integers(1, max_h + 1))
    for j in range(1, n_agents):
        ell = int(rng.integers(0, beta + 2))
        walk = random_walk(rng, graph, starts[j], ell)
        for v in walk[1:]:
            pp.append(j, v)
        extra = int(rng.integers(0, max(1, beta + 1 - ell)))
        if extra:
            pp.register(j, random_walk(rng, graph, walk[-1], extra)[1:])
    beta = max(beta, pp.max_registered())
    beta = min(beta, t0 + max_h)
    return pp, beta


# -- multi-agent reference ------------------------------------------------


def space_time_cost(graph: Graph, start: int, goal: int, other: list[int], horizon: int = 64):
    """Fewest timesteps for one agent to reach and hold ``goal`` while
    avoiding vertex and swap conflicts with a fixed path ``other`` (which
    waits at its end).  Plain BFS over (node, t)."""
    def at(t):
        return other[min(t, len(other) - 1)]

    def holds(v, t):
        return all(at(s) != v for s in range(t, max(t, len(other)) + 1))

    seen = {(start, 0)}
    q = deque([(start, 0)])
    while q:
        u, t = q.popleft()
        if u == goal and holds(goal, t):
            return t
        if t >= horizon:
            continue
        for v in (u, *graph.adjacency[u]):
            if at(t + 1) == v or (at(t + 1) == u and at(t) == v):
                continue
            if (v, t + 1) not in seen:
                seen.add((v, t + 1))
                q.append((v, t + 1))
    return None


def first_visits(paths, goals):
    out = []
    for p, g in zip(paths, goals):
        out.append(next((t for t, v in enumerate(p) if v == g), None))
    return out
