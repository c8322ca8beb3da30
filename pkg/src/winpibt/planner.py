"""Constrained single-agent search over (node, timestep) states.

The search backs ``validPath`` / ``registerPath`` of windowed PIBT.  A segment
for agent ``i`` covers timesteps ``ell_i + 1 .. beta`` and must

* avoid vertex and swap conflicts with every other registered path,
* never step onto a node that a longer committed path still visits later
  (a shorter path cannot invade a longer one).

Last nodes of shorter paths are *not* constraints: the caller resolves those
by priority inheritance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import Graph
from .paths import ProvisionalPaths


class NoPath(RuntimeError):
    pass


@dataclass
class SearchConstraints:
    agent: int
    start: int
    t0: int
    beta: int
    allowed: np.ndarray  # (beta - t0 + 1, V) bool, layer k <-> timestep t0 + k
    move_block: np.ndarray  # (beta - t0 + 1, V, max_degree) bool, blocked edge slots

    @classmethod
    def build(cls, paths: ProvisionalPaths, agent: int, beta: int, graph: Graph) -> SearchConstraints:
        t0 = paths.frontier(agent)
        if beta <= t0:
            raise ValueError(f"horizon {beta} must exceed the frontier {t0}")
        paths.ensure_capacity(beta + 1)
        allowed, move_block = kernels.build_constraints(
            paths.reg, paths.ell, paths.reg_end, agent, beta, graph.succ
        )
        return cls(agent, int(paths.last[agent]), t0, beta, allowed, move_block)

    @property
    def horizon(self) -> int:
        return self.beta - self.t0


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a search.

    ``segment`` lists the nodes for timesteps ``t0 + 1 .. beta``.  ``arrival``
    is the absolute timestep from which the agent rests on its goal, or None
    when the goal cannot be held by ``beta`` (then the segment ends as close
    to the goal as the constraints allow).
    """

    segment: tuple[int, ...] | None
    arrival: int | None = None
    moves: int = 0

    @property
    def found(self) -> bool:
        return self.segment is not None


def _search(graph: Graph, goal: int, c: SearchConstraints) -> SearchResult:
    h = graph.distances.to(goal)
    status, arrival, path = kernels.space_time_search(
        graph.succ, c.start, goal, c.allowed, c.move_block, h
    )
    if status == 0:
        return SearchResult(None)
    moves = int(np.count_nonzero(path[1:] != path[:-1]))
    return SearchResult(
        tuple(int(v) for v in path[1:]),
        c.t0 + int(arrival) if status == 1 else None,
        moves,
    )


def valid_path_exists(graph: Graph, constraints: SearchConstraints) -> bool:
    return _search(graph, constraints.start, constraints).found


def find_best_path(graph: Graph, goal: int, constraints: SearchConstraints) -> SearchResult:
    """Earliest-arrival segment; ties go to fewer moves, then larger node ids."""
    result = _search(graph, goal, constraints)
    if not result.found:
        raise NoPath(f"agent {constraints.agent} has no admissible path to t={constraints.beta}")
    return result


def plan(graph: Graph, paths: ProvisionalPaths, agent: int, goal: int, beta: int) -> SearchResult:
    """Build constraints from ``paths`` and search; ``segment`` is None if stuck."""
    c = SearchConstraints.build(paths, agent, beta, graph)
    return _search(graph, goal, c)


def cope_stuck(paths: ProvisionalPaths, agent: int, alpha: int) -> None:
    paths.cope_stuck(agent, alpha)
