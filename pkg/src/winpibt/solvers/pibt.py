"""One-step PIBT: priority inheritance with backtracking."""

from __future__ import annotations

import sys
from typing import Sequence

import numpy as np

from ..graph import Graph
from ..paths import ProvisionalPaths
from .priority import AgentState, by_priority

NIL = -1


def pibt_step(graph: Graph, positions: Sequence[int], goals: Sequence[int], order: Sequence[int]) -> list[int]:
    """Next node for every agent, planned in ``order`` (highest priority first).

    Candidates are the current node and its neighbours sorted by distance to
    the agent's goal, ties going to the smaller node id.
    """
    n = len(positions)
    if sys.getrecursionlimit() < 4 * n + 100:
        sys.setrecursionlimit(4 * n + 100)
    occupied_now = np.full(graph.n_nodes, NIL, dtype=np.int64)
    occupied_next = np.full(graph.n_nodes, NIL, dtype=np.int64)
    for i, v in enumerate(positions):
        occupied_now[v] = i
    nxt = [NIL] * n
    oracle = graph.distances

    def candidates(i: int) -> list[int]:
        here = positions[i]
        h = oracle.to(goals[i])
        return sorted((here, *graph.adjacency[here]), key=lambda v: (h[v], v))

    def step(i: int) -> bool:
        for v in candidates(i):
            if occupied_next[v] != NIL:
                continue
            j = occupied_now[v]
            # swap with an agent already heading to our node
            if j != NIL and j != i and nxt[j] == positions[i]:
                continue
            nxt[i] = v
            occupied_next[v] = i
            if j != NIL and j != i and nxt[j] == NIL and not step(j):
                continue
            return True
        nxt[i] = positions[i]
        occupied_next[positions[i]] = i
        return False

    for i in order:
        if nxt[i] == NIL:
            step(i)
    return nxt


class PIBT:
    """PIBT driven one timestep at a time over a shared path store."""

    label = "pibt"

    def __init__(self, graph: Graph, starts: Sequence[int], agents: Sequence[AgentState]):
        self.graph = graph
        self.agents = list(agents)
        self.paths = ProvisionalPaths(starts)

    def step(self, t: int) -> None:
        positions = [int(v) for v in self.paths.last]
        goals = [a.goal for a in self.agents]
        for i, v in enumerate(pibt_step(self.graph, positions, goals, by_priority(self.agents))):
            self.paths.append(i, v)
