"""Dynamic priorities shared by PIBT and windowed PIBT."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass
class AgentState:
    """Per-agent planning state.

    ``eta`` counts the timesteps since the agent last had its goal refreshed
    (arrival counts as a refresh); ``eps`` is a unique tie-breaker in [0, 1).
    """

    id: int
    goal: int
    eps: float
    window: int = 1
    eta: int = 0
    since: int = 0

    @property
    def priority(self) -> float:
        return self.eta + self.eps


def default_epsilon(n: int) -> list[float]:
    """Distinct tie-breakers; agent 0 ranks highest among equal ``eta``."""
    return [(n - 1 - i) / n for i in range(n)]


def make_agents(
    goals: Sequence[int],
    window: int | Sequence[int] = 1,
    epsilon: Sequence[float] | None = None,
) -> list[AgentState]:
    n = len(goals)
    eps = list(default_epsilon(n) if epsilon is None else epsilon)
    if len(eps) != n:
        raise ValueError("need one epsilon per agent")
    if len(set(eps)) != n or any(not 0.0 <= e < 1.0 for e in eps):
        raise ValueError("epsilon values must be unique and lie in [0, 1)")
    windows = [window] * n if isinstance(window, int) else list(window)
    if any(w < 1 for w in windows):
        raise ValueError("window must be >= 1")
    return [AgentState(i, int(g), float(e), int(w)) for i, (g, e, w) in enumerate(zip(goals, eps, windows))]


def update_priorities(agents: Sequence[AgentState], positions: Sequence[int], t: int) -> None:
    for a in agents:
        if t == 0 or positions[a.id] == a.goal:
            a.since = t
        a.eta = t - a.since


def set_goal(agent: AgentState, goal: int, t: int) -> None:
    agent.goal = int(goal)
    agent.since = t
    agent.eta = 0


def by_priority(agents: Sequence[AgentState]) -> list[int]:
    return [a.id for a in sorted(agents, key=lambda a: a.priority, reverse=True)]
