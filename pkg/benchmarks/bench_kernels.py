"""Compare the numba and pure-numpy kernel backends.

Usage::

    python3 benchmarks/bench_kernels.py [--agents 200] [--window 10] [--repeat 5]

Kernel timings call ``kernels.loops`` and ``kernels.vector`` directly on the
same inputs.  End-to-end timings run a full solve in a fresh interpreter per
backend, with ``WINPIBT_DISABLE_NUMBA`` toggled.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from winpibt import build_grid, generate_random_instance
from winpibt.kernels import loops, vector
from winpibt.paths import ProvisionalPaths
from winpibt.solvers import WinPIBT, make_agents

E2E = """
import time
from winpibt import build_grid, generate_random_instance, run, BACKEND
inst = generate_random_instance(build_grid({side}, {side}), {agents}, 1)
run(inst, "winpibt", {window})  # warm up JIT
tic = time.perf_counter()
r = run(inst, "winpibt", {window})
print(BACKEND, time.perf_counter() - tic, r.success, r.soc)
"""


def search_state(side: int, agents: int, window: int, seed: int = 0):
    """Provisional paths after one full winPIBT step on a random instance."""
    g = build_grid(side, side)
    inst = generate_random_instance(g, agents, seed)
    s = WinPIBT(g, inst.starts, make_agents(inst.goals, window))
    s.step(0)
    return g, s.paths, inst.goals


def time_kernels(g, pp: ProvisionalPaths, goal: int, repeat: int) -> dict:
    agent = int(np.argmin(pp.ell))
    beta = max(int(pp.max_registered()), int(pp.ell[agent]) + 1)
    pp.ensure_capacity(beta + 1)
    h = g.distances.to(goal)
    start = int(pp.last[agent])
    out = {}
    for name, mod in (("numba", loops), ("numpy", vector)):
        args = (pp.reg, pp.ell, pp.reg_end, agent, beta, g.succ)
        allowed, block = mod.build_constraints(*args)
        mod.space_time_search(g.succ, start, goal, allowed, block, h)  # compile
        n = 200
        tb = min(timeit.repeat(lambda: mod.build_constraints(*args), number=n, repeat=repeat)) / n
        ts = min(
            timeit.repeat(
                lambda: mod.space_time_search(g.succ, start, goal, allowed, block, h), number=n, repeat=repeat
            )
        ) / n
        out[name] = (tb, ts)
    return out


def time_end_to_end(side: int, agents: int, window: int) -> dict:
    out = {}
    for flag in ("0", "1"):
        env = dict(os.environ, WINPIBT_DISABLE_NUMBA=flag)
        code = E2E.format(side=side, agents=agents, window=window)
        line = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
        ).stdout.split()
        out[line[0]] = (float(line[1]), line[2] == "True", int(line[3]))
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--side", type=int, default=32)
    ap.add_argument("--agents", type=int, default=200)
    ap.add_argument("--window", type=int, default=10)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    g, pp, goals = search_state(args.side, args.agents, args.window)
    k = time_kernels(g, pp, int(goals[0]), args.repeat)
    print(f"kernels on {args.side}x{args.side}, {args.agents} agents, window {args.window} (per call)")
    print(f"{'backend':8} {'build_constraints':>18} {'space_time_search':>18}")
    for name, (tb, ts) in k.items():
        print(f"{name:8} {tb * 1e6:15.1f} us {ts * 1e6:15.1f} us")

    e = time_end_to_end(args.side, args.agents, args.window)
    print("\nfull winPIBT run (after warm-up)")
    for name, (sec, ok, soc) in e.items():
        print(f"{name:8} {sec:8.3f} s  success={ok} soc={soc}")
    if {"numba", "numpy"} <= e.keys():
        print(f"speedup  {e['numpy'][0] / e['numba'][0]:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
