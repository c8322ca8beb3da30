"""PIBT and windowed PIBT for classical and iterative multi-agent path finding."""

from ._accel import BACKEND
from .graph import DistanceOracle, Graph, build_grid, check_pibt_condition
from .paths import ProvisionalPaths, check_execution, extend_stay, is_disentangled, pair_disentangled
from .planner import SearchConstraints, cope_stuck, find_best_path, valid_path_exists
from .scenario import Instance, RunResult, generate_random_instance, metrics, run
from .solvers import PIBT, SOLVERS, WinPIBT, make_agents, pibt_step, update_priorities

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DistanceOracle",
    "Graph",
    "Instance",
    "PIBT",
    "ProvisionalPaths",
    "RunResult",
    "SOLVERS",
    "SearchConstraints",
    "WinPIBT",
    "build_grid",
    "check_execution",
    "check_pibt_condition",
    "cope_stuck",
    "extend_stay",
    "find_best_path",
    "generate_random_instance",
    "is_disentangled",
    "make_agents",
    "metrics",
    "pair_disentangled",
    "pibt_step",
    "run",
    "update_priorities",
    "valid_path_exists",
]
