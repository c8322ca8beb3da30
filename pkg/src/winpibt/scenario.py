"""Problem instances, the simulation loop and run metrics.

Two modes are supported:

* ``classical``: every agent has one fixed goal; a run succeeds at the first
  timestep where all agents stand on their goals with no committed move
  away from them.
* ``iterative``: a stream of ``n_tasks`` single-goal tasks.  A free agent
  receives the next task as soon as one is left; goals are drawn uniformly
  from all nodes except the agent's current one.  The run succeeds once
  every task is completed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .graph import Graph
from .paths import check_execution
from .solvers import SOLVERS, make_agents, make_solver, set_goal, update_priorities

MODES = ("classical", "iterative")
DEFAULT_MAX_TIMESTEP = 1000


class InstanceInvalid(ValueError):
    pass


class TooManyAgents(InstanceInvalid):
    pass


@dataclass
class Task:
    id: int
    goals: tuple[int, ...]
    issued: int
    agent: int = -1
    completed: int | None = None

    @property
    def service_time(self) -> int | None:
        return None if self.completed is None else self.completed - self.issued


@dataclass
class Instance:
    graph: Graph
    starts: list[int]
    goals: list[int] | None = None
    mode: str = "classical"
    n_tasks: int = 0
    task_seed: int = 0
    max_timestep: int = DEFAULT_MAX_TIMESTEP
    name: str = ""

    @property
    def n_agents(self) -> int:
        return len(self.starts)

    def validate(self) -> None:
        V = self.graph.n_nodes
        if self.mode not in MODES:
            raise InstanceInvalid(f"unknown mode {self.mode!r}")
        if not self.starts:
            raise InstanceInvalid("instance has no agents")
        if len(self.starts) > V:
            raise TooManyAgents(f"{len(self.starts)} agents on {V} nodes")
        if any(not 0 <= s < V for s in self.starts):
            raise InstanceInvalid("start outside the graph")
        if len(set(self.starts)) != len(self.starts):
            raise InstanceInvalid("starts must be distinct")
        if self.max_timestep < 1:
            raise InstanceInvalid("max_timestep must be positive")
        if self.mode == "classical":
            if self.goals is None or len(self.goals) != len(self.starts):
                raise InstanceInvalid("classical mode needs one goal per agent")
            if any(not 0 <= g < V for g in self.goals):
                raise InstanceInvalid("goal outside the graph")
            if len(set(self.goals)) != len(self.goals):
                raise InstanceInvalid("goals must be distinct")
        elif self.n_tasks < 1:
            raise InstanceInvalid("iterative mode needs at least one task")


@dataclass
class RunResult:
    solver: str
    window: int
    seed: int | None
    n: int
    mode: str
    success: bool
    soc: int
    makespan: int
    service_time: float | None = None
    runtime: float | None = None
    tasks_completed: int = 0
    paths: list[list[int]] = field(default_factory=list, repr=False)
    service_times: list[int] = field(default_factory=list, repr=False)
    goals: list[int] | None = field(default=None, repr=False)


def _draw_goal(rng: np.random.Generator, n_nodes: int, here: int) -> int:
    r = int(rng.integers(n_nodes - 1))
    return r if r < here else r + 1


def sum_of_costs(paths: Sequence[Sequence[int]], goals: Sequence[int]) -> int:
    """Sum over agents of the timestep from which each rests on its goal.

    An agent that never settles on its goal costs the full path length.
    """
    total = 0
    for p, g in zip(paths, goals):
        t = len(p) - 1
        while t > 0 and p[t] == g and p[t - 1] == g:
            t -= 1
        total += t if p[t] == g else len(p) - 1
    return total


def _settled(paths, agents, t: int) -> bool:
    for a in agents:
        i = a.id
        ell = int(paths.ell[i])
        if paths.reg[i, t] != a.goal:
            return False
        if ell > t and np.any(paths.reg[i, t : ell + 1] != a.goal):
            return False
    return True


def run(
    instance: Instance,
    solver: str = "winpibt",
    window: int = 1,
    seed: int | None = None,
    epsilon: Sequence[float] | None = None,
    on_return: Callable | None = None,
    on_step: Callable | None = None,
    check: bool = True,
) -> RunResult:
    """Simulate ``instance`` until termination or the timestep cutoff.

    ``on_return(solver, agent)`` fires after each top-level winPIBT call and
    ``on_step(solver, t)`` after each caller round.  With ``check`` set the
    executed trajectories are verified to be conflict-free.
    """
    instance.validate()
    if solver not in SOLVERS:
        raise ValueError(f"unknown solver {solver!r}")
    if solver == "winpibt-iter" and instance.mode != "iterative":
        raise InstanceInvalid("winpibt-iter needs an iterative instance")
    if window < 1:
        raise ValueError("window must be >= 1")
    g = instance.graph
    n = instance.n_agents
    iterative = instance.mode == "iterative"
    goals = list(instance.starts) if iterative else list(instance.goals)
    agents = make_agents(goals, 1 if solver == "pibt" else window, epsilon)
    engine = make_solver(solver, g, instance.starts, agents, on_return=on_return)
    paths = engine.paths

    rng = np.random.default_rng(instance.task_seed)
    tasks: list[Task] = []
    current: list[Task | None] = [None] * n
    done = 0
    success = False
    t = 0
    tic = time.perf_counter()
    while True:
        positions = [paths.position(i, t) for i in range(n)]
        if iterative:
            for i, v in enumerate(positions):
                task = current[i]
                if task is not None and v == task.goals[0]:
                    task.completed = t
                    current[i] = None
                    done += 1
            for a in agents:
                if current[a.id] is None and len(tasks) < instance.n_tasks:
                    task = Task(len(tasks), (_draw_goal(rng, g.n_nodes, positions[a.id]),), t, a.id)
                    tasks.append(task)
                    current[a.id] = task
                    set_goal(a, task.goals[0], t)
                elif current[a.id] is None and a.goal != positions[a.id]:
                    set_goal(a, positions[a.id], t)
            if done >= instance.n_tasks:
                success = True
                break
        elif _settled(paths, agents, t):
            success = True
            break
        if t >= instance.max_timestep:
            break
        update_priorities(agents, positions, t)
        engine.step(t)
        if on_step is not None:
            on_step(engine, t)
        t += 1
    runtime = time.perf_counter() - tic

    executed = [[paths.position(i, s) for s in range(t + 1)] for i in range(n)]
    if check:
        conflict = check_execution(executed, t)
        if conflict is not None:
            raise RuntimeError(f"executed paths collide: {conflict}")
    services = [k.service_time for k in tasks if k.completed is not None]
    return RunResult(
        solver=solver,
        window=1 if solver == "pibt" else window,
        seed=seed,
        n=n,
        mode=instance.mode,
        success=success,
        soc=sum_of_costs(executed, goals) if not iterative else 0,
        makespan=t,
        service_time=float(np.mean(services)) if services else None,
        runtime=runtime,
        tasks_completed=done,
        paths=executed,
        service_times=services,
        goals=None if iterative else goals,
    )


def generate_random_instance(
    graph: Graph,
    n: int,
    seed: int,
    mode: str = "classical",
    placement: str = "random",
    n_tasks: int = 0,
    max_timestep: int = DEFAULT_MAX_TIMESTEP,
) -> Instance:
    """Distinct random starts (and goals in classical mode).

    ``placement="edge"`` puts starts on the leftmost passable column and
    goals on the rightmost one; it needs a grid graph.
    """
    V = graph.n_nodes
    if n > V:
        raise TooManyAgents(f"{n} agents on {V} nodes")
    if n < 1:
        raise InstanceInvalid("need at least one agent")
    rng = np.random.default_rng(seed)
    if placement == "random":
        starts = rng.permutation(V)[:n]
        goals = rng.permutation(V)[:n]
    elif placement == "edge":
        if graph.grid is None:
            raise InstanceInvalid("edge placement needs a grid graph")
        xs = np.array([graph.cell(v)[0] for v in range(V)])
        left = np.nonzero(xs == xs.min())[0]
        right = np.nonzero(xs == xs.max())[0]
        if n > min(left.size, right.size):
            raise TooManyAgents(f"{n} agents but only {min(left.size, right.size)} edge cells")
        starts = rng.permutation(left)[:n]
        goals = rng.permutation(right)[:n]
    else:
        raise ValueError(f"unknown placement {placement!r}")
    inst = Instance(
        graph,
        [int(v) for v in starts],
        None if mode == "iterative" else [int(v) for v in goals],
        mode=mode,
        n_tasks=n_tasks,
        task_seed=seed,
        max_timestep=max_timestep,
        name=f"random-{seed}",
    )
    inst.validate()
    return inst


def metrics(result: RunResult) -> dict:
    """Summary row: SOC, cost per agent, makespan and mean service time."""
    return {
        "soc": result.soc,
        "cost_per_agent": result.soc / result.n if result.n else 0.0,
        "makespan": result.makespan,
        "service_time": result.service_time,
    }
