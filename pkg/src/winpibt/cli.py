"""Command-line entry point: ``winpibt {solve,batch,check-map,render}``.

Exit codes: 0 on success, 1 when a run hits the timestep cutoff or a map
violates a structural requirement, 2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import bench_io, maps
from .graph import GraphError, build_grid, check_pibt_condition
from .scenario import DEFAULT_MAX_TIMESTEP, MODES, Instance, InstanceInvalid, generate_random_instance, run
from .solvers import SOLVERS

OUTPUT_DIR_ENV = "WINPIBT_OUTPUT_DIR"
GOLDEN = ("fig1", "fig3")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _grid_spec(text: str) -> tuple[int, int]:
    try:
        w, h = (int(p) for p in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WIDTHxHEIGHT, got {text!r}") from None
    if w < 1 or h < 1:
        raise argparse.ArgumentTypeError("grid dimensions must be positive")
    return w, h


def parse_seeds(text: str) -> list[int]:
    """``"1..25"`` (inclusive) or a comma-separated list."""
    try:
        if ".." in text:
            lo, hi = (int(p) for p in text.split(".."))
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed list {text!r}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _instance_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--map", type=Path, help="MovingAI .map file")
    src.add_argument("--grid", type=_grid_spec, help="empty grid WIDTHxHEIGHT")
    src.add_argument("--golden", choices=GOLDEN, help="built-in worked example")
    p.add_argument("--scen", type=Path, help="MovingAI .scen file (classical mode)")
    p.add_argument("--agents", type=_positive, default=None, help="number of agents")
    p.add_argument("--solver", choices=SOLVERS, default="winpibt")
    p.add_argument("--window", type=_positive, default=None, help="window size (winPIBT)")
    p.add_argument("--mode", choices=MODES, default="classical")
    p.add_argument("--tasks", type=_positive, default=100, help="task count K (iterative mode)")
    p.add_argument("--placement", choices=("random", "edge"), default="random")
    p.add_argument("--max-timestep", type=_positive, default=DEFAULT_MAX_TIMESTEP)
    p.add_argument("--timing", action="store_true", help="record wall-clock runtime")


def _out_args(p: argparse.ArgumentParser, default_fmt: str) -> None:
    p.add_argument("-o", "--output", type=Path, help="output file (default: stdout or $%s)" % OUTPUT_DIR_ENV)
    p.add_argument("--format", choices=("jsonl", "csv"), default=default_fmt)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="winpibt", description="PIBT and windowed PIBT for MAPF")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run one instance")
    _instance_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--paths", action="store_true", help="include executed paths in JSON output")
    _out_args(p, "jsonl")

    p = sub.add_parser("batch", help="run one instance per seed")
    _instance_args(p)
    p.add_argument("--seeds", type=parse_seeds, default=list(range(1, 26)), help="e.g. 1..25 or 1,4,9")
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    _out_args(p, "csv")

    p = sub.add_parser("check-map", help="parse a map and test the PIBT graph condition")
    p.add_argument("--map", type=Path, required=True)

    p = sub.add_parser("render", help="draw executed paths as SVG")
    _instance_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--result", type=Path, help="JSON-lines record with paths to draw instead of solving")
    p.add_argument("-o", "--output", type=Path)
    return parser


# -- instance assembly ---------------------------------------------------


def _load_graph(args):
    if args.golden == "fig3":
        return maps.fig3_instance().graph
    if args.golden == "fig1":
        return maps.fig1_graph()
    if args.grid is not None:
        return build_grid(*args.grid)
    if args.map is not None:
        return bench_io.load_map(args.map).to_graph()
    raise UsageError("one of --map, --grid or --golden is required")


def _window(args) -> int:
    if args.window is not None:
        return args.window
    return maps.FIG3_WINDOW if args.golden == "fig3" else 1


def make_instance(args, seed: int) -> Instance:
    if args.golden:
        inst = maps.fig3_instance() if args.golden == "fig3" else maps.fig1_instance()
        inst.max_timestep = args.max_timestep
        return inst
    graph = _load_graph(args)
    if args.scen is not None:
        if args.mode != "classical":
            raise UsageError("--scen only supports classical mode")
        map_file = bench_io.load_map(args.map) if args.map is not None else None
        scen = bench_io.parse_scen(args.scen.read_text(encoding="utf-8"), map_file)
        n = args.agents or len(scen.entries)
        starts, goals = scen.agents(graph, n)
        return Instance(graph, starts, goals, max_timestep=args.max_timestep, name=args.scen.stem)
    if args.agents is None:
        raise UsageError("--agents is required without --scen or --golden")
    return generate_random_instance(
        graph,
        args.agents,
        seed,
        mode=args.mode,
        placement=args.placement,
        n_tasks=args.tasks,
        max_timestep=args.max_timestep,
    )


def _solve_one(args, seed: int):
    inst = make_instance(args, seed)
    result = run(inst, args.solver, _window(args), seed=seed)
    if not args.timing:
        result.runtime = None
    return result


def _solve_seed(payload):
    args, seed = payload
    return _solve_one(args, seed)


def _summary(r) -> str:
    status = "ok" if r.success else "cutoff"
    extra = f" tasks={r.tasks_completed}" if r.mode == "iterative" else ""
    return f"{r.solver} w={r.window} seed={r.seed} n={r.n}: {status} soc={r.soc} makespan={r.makespan}{extra}"


def _emit(data: bytes, output: Path | None, default_name: str) -> Path | None:
    """Write to ``output``, else into $WINPIBT_OUTPUT_DIR, else stdout."""
    if output is None and os.environ.get(OUTPUT_DIR_ENV):
        output = Path(os.environ[OUTPUT_DIR_ENV]) / default_name
    if output is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return None
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_bytes(data)
    return output


def _report(line: str, wrote: Path | None) -> None:
    # keep stdout clean when it carries the structured output
    print(line, file=sys.stdout if wrote is not None else sys.stderr)


# -- subcommands ---------------------------------------------------------


def cmd_solve(args) -> int:
    result = _solve_one(args, args.seed)
    data = bench_io.write_result([result], args.format, include_paths=args.paths)
    wrote = _emit(data, args.output, f"solve-{result.solver}-{args.seed}.{args.format}")
    _report(_summary(result), wrote)
    return EXIT_OK if result.success else EXIT_FAIL


def cmd_batch(args) -> int:
    payloads = [(args, s) for s in args.seeds]
    if args.jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_solve_seed, payloads))
    else:
        results = [_solve_seed(p) for p in payloads]
    data = bench_io.write_result(results, args.format)
    wrote = _emit(data, args.output, f"batch-{args.solver}.{args.format}")
    ok = sum(r.success for r in results)
    _report(f"{args.solver}: {ok}/{len(results)} runs succeeded", wrote)
    return EXIT_OK if ok == len(results) else EXIT_FAIL


def cmd_check_map(args) -> int:
    m = bench_io.load_map(args.map)
    try:
        graph = m.to_graph()
    except GraphError as exc:
        print(f"{args.map}: {m.width}x{m.height}, {m.n_passable} passable; invalid graph: {exc}")
        return EXIT_FAIL
    cond = check_pibt_condition(graph)
    line = f"{args.map}: {m.width}x{m.height}, {graph.n_nodes} nodes, {graph.n_edges} edges"
    if cond.satisfied:
        print(f"{line}; PIBT condition satisfied")
        return EXIT_OK
    u, v = cond.witness
    print(f"{line}; PIBT condition violated at edge {graph.cell(u)}-{graph.cell(v)}")
    return EXIT_FAIL


def cmd_render(args) -> int:
    graph = _load_graph(args)
    if args.result is not None:
        records = bench_io.read_result(args.result.read_bytes(), "jsonl")
        if not records:
            raise UsageError(f"{args.result} holds no records")
        result = records[0]
    else:
        result = _solve_one(args, args.seed)
    svg = bench_io.render_svg(result, graph)
    wrote = _emit(svg.encode(), args.output, f"render-{result.solver}-{args.seed}.svg")
    _report(f"rendered {len(result.paths)} paths", wrote)
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "batch": cmd_batch, "check-map": cmd_check_map, "render": cmd_render}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (UsageError, InstanceInvalid, bench_io.ParseError, GraphError, OSError) as exc:
        print(f"winpibt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
