from .pibt import PIBT, pibt_step
from .priority import AgentState, by_priority, default_epsilon, make_agents, set_goal, update_priorities
from .winpibt import INVALID, VALID, CorruptState, WinPIBT

SOLVERS = ("pibt", "winpibt", "winpibt-iter")


def make_solver(name, graph, starts, agents, on_return=None):
    if name == "pibt":
        return PIBT(graph, starts, agents)
    if name == "winpibt":
        return WinPIBT(graph, starts, agents, on_return=on_return)
    if name == "winpibt-iter":
        return WinPIBT(graph, starts, agents, iterative=True, on_return=on_return)
    raise ValueError(f"unknown solver {name!r}; expected one of {', '.join(SOLVERS)}")


__all__ = [
    "AgentState",
    "CorruptState",
    "INVALID",
    "PIBT",
    "SOLVERS",
    "VALID",
    "WinPIBT",
    "by_priority",
    "default_epsilon",
    "make_agents",
    "make_solver",
    "pibt_step",
    "set_goal",
    "update_priorities",
]
