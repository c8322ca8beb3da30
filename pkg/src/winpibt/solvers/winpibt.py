"""Windowed PIBT: recursive path securing with retroactive priority inheritance."""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .. import planner
from ..graph import Graph
from ..paths import ProvisionalPaths
from ..planner import SearchResult
from .priority import AgentState, by_priority

VALID = True
INVALID = False


class CorruptState(RuntimeError):
    """The provisional paths violate an invariant the algorithm relies on."""


@dataclass
class Stats:
    searches: int = 0
    calls: int = 0
    invalid: int = 0
    max_depth: int = 0


class WinPIBT:
    """Windowed PIBT over a shared :class:`ProvisionalPaths` store.

    With ``iterative=True`` an agent only secures nodes up to its planned
    arrival at the current goal instead of the full window.

    ``on_return`` is called as ``on_return(solver, agent)`` after every
    top-level call made by :meth:`step`.
    """

    label = "winpibt"

    def __init__(
        self,
        graph: Graph,
        starts: Sequence[int],
        agents: Sequence[AgentState],
        iterative: bool = False,
        on_return: Callable[[WinPIBT, int], None] | None = None,
    ):
        self.graph = graph
        self.agents = list(agents)
        self.paths = ProvisionalPaths(starts, capacity=64 + 2 * max(a.window for a in self.agents))
        self.iterative = iterative
        self.on_return = on_return
        self.stats = Stats()
        self.last_plan: dict[int, SearchResult] = {}
        self._stack: list[int] = []
        n = len(self.agents)
        if sys.getrecursionlimit() < 8 * n + 200:
            sys.setrecursionlimit(8 * n + 200)
        if iterative:
            self.label = "winpibt-iter"

    # -- helpers ---------------------------------------------------------
    def _plan(self, i: int, beta: int) -> SearchResult:
        self.stats.searches += 1
        result = planner.plan(self.graph, self.paths, i, self.agents[i].goal, beta)
        self.last_plan[i] = result
        return result

    def _register(self, i: int, result: SearchResult, alpha: int) -> int:
        ell = self.paths.frontier(i)
        until = alpha
        if self.iterative and result.arrival is not None:
            until = min(alpha, max(ell + 1, result.arrival))
        self.paths.register(i, result.segment[: until - ell])
        return until

    def _blocker_behind(self, i: int, v: int) -> int:
        """An agent whose shorter path ends on ``v``, or -1."""
        p = self.paths
        hits = np.nonzero((p.last == v) & (p.ell < p.ell[i]))[0]
        return int(hits[0]) if hits.size else -1

    def _blocker_level(self, i: int, v: int, requesting: set[int]) -> int:
        p = self.paths
        hits = np.nonzero((p.last == v) & (p.ell == p.ell[i]))[0]
        for j in hits:
            if j != i and int(j) not in requesting:
                return int(j)
        return -1

    # -- the recursive function -----------------------------------------
    def winpibt(self, i: int, alpha: int, requesting: set[int] | None = None) -> bool:
        """Give agent ``i`` a committed path through ``alpha``.

        Returns VALID when the agent secured its planned nodes, INVALID when
        it had to wait in place.  ``requesting`` holds the agents currently
        on the inheritance stack; each call sees its own view of it.
        """
        p = self.paths
        if p.frontier(i) >= alpha:
            return VALID
        if requesting is None:
            requesting = set()
        self.stats.calls += 1
        beta = max(alpha, p.max_registered())
        plan = self._plan(i, beta)
        if not plan.found:
            p.cope_stuck(i, alpha)
            self.stats.invalid += 1
            return INVALID
        until = self._register(i, plan, alpha)

        requesting.add(i)
        self._stack.append(i)
        self.stats.max_depth = max(self.stats.max_depth, len(self._stack))
        try:
            while p.frontier(i) < until:
                v = int(p.reg[i, p.ell[i] + 1])
                while True:
                    j = self._blocker_behind(i, v)
                    if j < 0:
                        break
                    if j in requesting:
                        raise CorruptState(f"agent {j} is on the stack but lags behind agent {i}")
                    self.winpibt(j, p.frontier(j) + 1, requesting)
                j = self._blocker_level(i, v, requesting)
                if j >= 0 and not self.winpibt(j, p.frontier(j) + 1, requesting):
                    p.revoke(i)
                    plan = self._plan(i, beta)
                    if not plan.found:
                        p.cope_stuck(i, alpha)
                        self.stats.invalid += 1
                        return INVALID
                    until = self._register(i, plan, alpha)
                    continue
                p.secure(i)
            return VALID
        finally:
            self._stack.pop()
            requesting.discard(i)

    # -- caller ----------------------------------------------------------
    def step(self, t: int) -> None:
        """Extend paths so every agent is committed at least through t + 1."""
        kappa = 0
        for rank, i in enumerate(by_priority(self.agents)):
            ell = self.paths.frontier(i)
            if ell <= t:
                horizon = t + self.agents[i].window
                alpha = horizon if rank == 0 else min(horizon, kappa)
                self.winpibt(i, alpha, set())
                if self.on_return is not None:
                    self.on_return(self, i)
            ell = self.paths.frontier(i)
            kappa = min(kappa, ell)
            if rank == 0:
                kappa = ell
