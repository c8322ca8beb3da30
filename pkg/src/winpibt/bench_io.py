"""MovingAI map/scenario files, run-record serialization and SVG rendering.

Coordinates follow the MovingAI convention: ``x`` is the column, ``y`` the
row, origin at the top-left corner.  Node ids are assigned row-major over
passable cells (see :func:`winpibt.graph.build_grid`).
"""

from __future__ import annotations

import colorsys
import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph, build_grid
from .scenario import RunResult, TooManyAgents

PASSABLE = frozenset(".G")
BLOCKED = frozenset("@OT")


class ParseError(ValueError):
    pass


class MalformedHeader(ParseError):
    def __init__(self, line: int, msg: str = ""):
        self.line = line
        super().__init__(f"line {line}: {msg or 'malformed header'}")


class DimensionMismatch(ParseError):
    pass


class UnknownTerrain(ParseError):
    def __init__(self, char: str, row: int, col: int):
        self.char, self.row, self.col = char, row, col
        super().__init__(f"unknown terrain {char!r} at row {row}, col {col}")


class MalformedEntry(ParseError):
    def __init__(self, line: int, msg: str = ""):
        self.line = line
        super().__init__(f"line {line}: {msg or 'malformed scenario entry'}")


class OutOfBounds(ParseError):
    def __init__(self, entry: int, msg: str = ""):
        self.entry = entry
        super().__init__(f"entry {entry}: {msg or 'coordinate out of bounds'}")


class BlockedEndpoint(ParseError):
    def __init__(self, entry: int, msg: str = ""):
        self.entry = entry
        super().__init__(f"entry {entry}: {msg or 'endpoint on a blocked cell'}")


# -- maps ----------------------------------------------------------------


@dataclass(frozen=True)
class MapFile:
    height: int
    width: int
    passable: np.ndarray  # (height, width) bool
    type: str = "octile"

    def __eq__(self, other) -> bool:
        if not isinstance(other, MapFile):
            return NotImplemented
        return (
            (self.height, self.width, self.type) == (other.height, other.width, other.type)
            and np.array_equal(self.passable, other.passable)
        )

    @property
    def n_passable(self) -> int:
        return int(self.passable.sum())

    def to_graph(self) -> Graph:
        return build_grid(self.width, self.height, self.passable)


def _header_value(lines: list[str], idx: int, key: str) -> str:
    if idx >= len(lines):
        raise MalformedHeader(idx + 1, f"missing '{key}' line")
    parts = lines[idx].split()
    if len(parts) != 2 or parts[0] != key:
        raise MalformedHeader(idx + 1, f"expected '{key} <value>'")
    return parts[1]


def _positive(lines: list[str], idx: int, key: str) -> int:
    raw = _header_value(lines, idx, key)
    if not (raw.isascii() and raw.isdigit()) or int(raw) < 1:
        raise MalformedHeader(idx + 1, f"{key} must be a positive integer")
    return int(raw)


def parse_map(text: str) -> MapFile:
    lines = text.replace("\r\n", "\n").split("\n")
    kind = _header_value(lines, 0, "type")
    height = _positive(lines, 1, "height")
    width = _positive(lines, 2, "width")
    if len(lines) < 4 or lines[3].strip() != "map":
        raise MalformedHeader(4, "expected 'map'")
    rows = lines[4:]
    while rows and rows[-1] == "":
        rows.pop()
    if len(rows) != height:
        raise DimensionMismatch(f"header says {height} rows, found {len(rows)}")
    for y, row in enumerate(rows):
        if len(row) != width:
            raise DimensionMismatch(f"row {y} has {len(row)} cells, expected {width}")
    grid = np.zeros((height, width), dtype=bool)
    for y, row in enumerate(rows):
        for x, ch in enumerate(row):
            if ch in PASSABLE:
                grid[y, x] = True
            elif ch not in BLOCKED:
                raise UnknownTerrain(ch, y, x)
    return MapFile(height, width, grid, kind)


def write_map(m: MapFile) -> str:
    body = "\n".join("".join("." if c else "@" for c in row) for row in m.passable)
    return f"type {m.type}\nheight {m.height}\nwidth {m.width}\nmap\n{body}\n"


def load_map(path) -> MapFile:
    with open(path, encoding="utf-8") as fh:
        return parse_map(fh.read())


# -- scenarios -----------------------------------------------------------


@dataclass(frozen=True)
class ScenEntry:
    bucket: int
    map_name: str
    width: int
    height: int
    sx: int
    sy: int
    gx: int
    gy: int
    optimal: float


@dataclass(frozen=True)
class ScenFile:
    version: str
    entries: tuple[ScenEntry, ...]

    def agents(self, graph: Graph, n: int) -> tuple[list[int], list[int]]:
        """Starts and goals of the first ``n`` entries as node ids."""
        if n > len(self.entries):
            raise TooManyAgents(f"{n} agents but the scenario has {len(self.entries)} entries")
        starts = [graph.node_at(e.sx, e.sy) for e in self.entries[:n]]
        goals = [graph.node_at(e.gx, e.gy) for e in self.entries[:n]]
        return starts, goals


def parse_scen(text: str, map_file: MapFile | None = None) -> ScenFile:
    lines = text.replace("\r\n", "\n").split("\n")
    head = lines[0].split() if lines else []
    if len(head) != 2 or head[0] != "version":
        raise MalformedHeader(1, "expected 'version <n>'")
    entries = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split("\t") if "\t" in line else line.split()
        if len(parts) != 9:
            raise MalformedEntry(lineno, f"expected 9 fields, found {len(parts)}")
        try:
            bucket, w, h, sx, sy, gx, gy = (int(parts[k]) for k in (0, 2, 3, 4, 5, 6, 7))
            optimal = float(parts[8])
        except ValueError as exc:
            raise MalformedEntry(lineno, str(exc)) from None
        entry = ScenEntry(bucket, parts[1], w, h, sx, sy, gx, gy, optimal)
        idx = len(entries)
        width, height = (map_file.width, map_file.height) if map_file else (w, h)
        for x, y in ((sx, sy), (gx, gy)):
            if not (0 <= x < width and 0 <= y < height):
                raise OutOfBounds(idx, f"({x}, {y}) outside {width}x{height}")
            if map_file is not None and not map_file.passable[y, x]:
                raise BlockedEndpoint(idx, f"({x}, {y}) is blocked")
        entries.append(entry)
    return ScenFile(head[1], tuple(entries))


def write_scen(scen: ScenFile) -> str:
    out = [f"version {scen.version}"]
    for e in scen.entries:
        fields = (e.bucket, e.map_name, e.width, e.height, e.sx, e.sy, e.gx, e.gy, repr(e.optimal))
        out.append("\t".join(str(f) for f in fields))
    return "\n".join(out) + "\n"


# -- run records ---------------------------------------------------------

FIELDS = (
    "solver",
    "window",
    "seed",
    "n",
    "mode",
    "soc",
    "makespan",
    "service",
    "runtime",
    "success",
    "tasks_completed",
)


def _record(r: RunResult, include_paths: bool) -> dict:
    rec = {
        "solver": r.solver,
        "window": r.window,
        "seed": r.seed,
        "n": r.n,
        "mode": r.mode,
        "soc": r.soc,
        "makespan": r.makespan,
        "service": r.service_time,
        "runtime": r.runtime,
        "success": r.success,
        "tasks_completed": r.tasks_completed,
    }
    if include_paths:
        rec["paths"] = r.paths
    return rec


def write_result(results: Iterable[RunResult], fmt: str = "jsonl", include_paths: bool = False) -> bytes:
    """Serialize run records as JSON lines or CSV (UTF-8, LF endings)."""
    rows = [_record(r, include_paths and fmt == "jsonl") for r in results]
    if fmt == "jsonl":
        return "".join(json.dumps(row) + "\n" for row in rows).encode()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: "" if row[k] is None else row[k] for k in FIELDS})
        return buf.getvalue().encode()
    raise ValueError(f"unknown format {fmt!r}")


def _from_record(rec: dict) -> RunResult:
    return RunResult(
        solver=rec["solver"],
        window=rec["window"],
        seed=rec["seed"],
        n=rec["n"],
        mode=rec["mode"],
        success=rec["success"],
        soc=rec["soc"],
        makespan=rec["makespan"],
        service_time=rec["service"],
        runtime=rec["runtime"],
        tasks_completed=rec["tasks_completed"],
        paths=rec.get("paths", []),
    )


def _csv_value(key: str, raw: str):
    if raw == "":
        return None
    if key in ("solver", "mode"):
        return raw
    if key == "success":
        return raw == "True"
    if key in ("service", "runtime"):
        return float(raw)
    return int(raw)


def read_result(data: bytes | str, fmt: str = "jsonl") -> list[RunResult]:
    text = data.decode() if isinstance(data, bytes) else data
    if fmt == "jsonl":
        return [_from_record(json.loads(line)) for line in text.splitlines() if line.strip()]
    if fmt == "csv":
        reader = csv.DictReader(io.StringIO(text))
        return [_from_record({k: _csv_value(k, row[k]) for k in FIELDS}) for row in reader]
    raise ValueError(f"unknown format {fmt!r}")


# -- rendering -----------------------------------------------------------


def _colour(k: int, n: int) -> str:
    r, g, b = colorsys.hsv_to_rgb(k / max(n, 1), 0.75, 0.85)
    return f"#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}"


def render_svg(
    result: RunResult | Sequence[Sequence[int]] | None,
    graph: Graph,
    goals: Sequence[int] | None = None,
    cell: int = 24,
) -> str:
    """Static picture of the grid with one polyline per agent.

    ``result`` may be a :class:`RunResult`, a bare list of node paths or
    None (grid only).  Starts are drawn as circles, goals as squares.
    """
    meta = graph.grid
    if meta is None:
        raise ValueError("rendering needs a grid graph")
    if isinstance(result, RunResult):
        paths, goals = result.paths, goals if goals is not None else result.goals
    else:
        paths = [] if result is None else [list(p) for p in result]
    W, H = meta.width * cell, meta.height * cell
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect width="{W}" height="{H}" fill="#ffffff"/>',
    ]
    for y in range(meta.height):
        for x in range(meta.width):
            fill = "#f4f4f4" if meta.passable[y, x] else "#333333"
            out.append(
                f'<rect class="cell" x="{x * cell}" y="{y * cell}" width="{cell}" height="{cell}" '
                f'fill="{fill}" stroke="#cccccc"/>'
            )

    def centre(v: int) -> tuple[float, float]:
        x, y = graph.cell(v)
        return (x + 0.5) * cell, (y + 0.5) * cell

    n = len(paths)
    for k, path in enumerate(paths):
        if not path:
            continue
        colour = _colour(k, n)
        pts = [path[0]] + [v for prev, v in zip(path, path[1:]) if v != prev]
        coords = " ".join(f"{cx:g},{cy:g}" for cx, cy in map(centre, pts))
        out.append(
            f'<polyline class="agent" data-agent="{k}" points="{coords}" fill="none" '
            f'stroke="{colour}" stroke-width="{cell / 8:g}"/>'
        )
        sx, sy = centre(path[0])
        out.append(f'<circle class="start" cx="{sx:g}" cy="{sy:g}" r="{cell / 4:g}" fill="{colour}"/>')
        if goals is not None and k < len(goals):
            gx, gy = centre(goals[k])
            s = cell / 2
            out.append(
                f'<rect class="goal" x="{gx - s / 2:g}" y="{gy - s / 2:g}" width="{s:g}" height="{s:g}" '
                f'fill="none" stroke="{colour}" stroke-width="2"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
