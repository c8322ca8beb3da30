"""Environment graphs, the distance oracle and the PIBT structural check."""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import networkx as nx
import numpy as np

from . import kernels


class GraphError(ValueError):
    """Base class for invalid environment graphs."""


class EmptyMap(GraphError):
    pass


class DisconnectedMap(GraphError):
    """Some node cannot be reached from node 0 (or cannot reach it back)."""

    def __init__(self, node: int, cell: tuple[int, int] | None = None):
        self.node = node
        self.cell = cell
        where = f"cell (x={cell[0]}, y={cell[1]})" if cell else f"node {node}"
        super().__init__(f"graph is not strongly connected: {where} is unreachable")


class UnknownNode(GraphError, KeyError):
    pass


def _pad(rows: Sequence[Sequence[int]]) -> np.ndarray:
    width = max((len(r) for r in rows), default=0)
    out = np.full((len(rows), max(width, 1)), -1, dtype=np.int32)
    for i, r in enumerate(rows):
        out[i, : len(r)] = r
    return out


@dataclass(frozen=True)
class GridMeta:
    """Cell bookkeeping for graphs built from a grid (x = column, y = row)."""

    width: int
    height: int
    passable: np.ndarray  # (height, width) bool
    node_of_cell: np.ndarray  # (height, width) int32, -1 where blocked
    cell_of_node: np.ndarray  # (V, 2) int32 holding (x, y)


class Graph:
    """Immutable simple graph with dense integer node ids.

    ``succ`` and ``pred`` are the padded out/in-neighbour tables used by the
    kernels; for undirected graphs they are the same array.
    """

    def __init__(
        self,
        adjacency: Sequence[Iterable[int]],
        directed: bool = False,
        grid: GridMeta | None = None,
        validate: bool = True,
    ):
        adj = tuple(tuple(sorted(int(v) for v in nbrs)) for nbrs in adjacency)
        n = len(adj)
        if n == 0:
            raise EmptyMap("graph has no nodes")
        for u, nbrs in enumerate(adj):
            if len(set(nbrs)) != len(nbrs):
                raise GraphError(f"duplicate edge at node {u}")
            for v in nbrs:
                if v == u:
                    raise GraphError(f"self-loop at node {u}")
                if not 0 <= v < n:
                    raise UnknownNode(v)
        if not directed:
            for u, nbrs in enumerate(adj):
                for v in nbrs:
                    if u not in adj[v]:
                        raise GraphError(f"asymmetric undirected edge {u}-{v}")
        self.adjacency = adj
        self.directed = directed
        self.grid = grid
        self.n_nodes = n
        self.succ = _pad(adj)
        if directed:
            incoming: list[list[int]] = [[] for _ in range(n)]
            for u, nbrs in enumerate(adj):
                for v in nbrs:
                    incoming[v].append(u)
            self.pred = _pad([sorted(r) for r in incoming])
        else:
            self.pred = self.succ
        self.succ.setflags(write=False)
        self.pred.setflags(write=False)
        if validate:
            self._check_strongly_connected()

    @classmethod
    def from_edges(cls, n_nodes: int, edges: Iterable[tuple[int, int]], directed: bool = False) -> Graph:
        adj: list[set[int]] = [set() for _ in range(n_nodes)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if not (0 <= u < n_nodes and 0 <= v < n_nodes):
                raise UnknownNode(max(u, v))
            adj[u].add(v)
            if not directed:
                adj[v].add(u)
        return cls([sorted(a) for a in adj], directed=directed)

    @property
    def kind(self) -> str:
        return "general-directed" if self.directed else "undirected-grid" if self.grid else "undirected"

    def __len__(self) -> int:
        return self.n_nodes

    def __repr__(self) -> str:
        return f"Graph(n_nodes={self.n_nodes}, n_edges={self.n_edges}, kind={self.kind!r})"

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check(v)
        return self.adjacency[v]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Directed edges, or each undirected edge once as ``(low, high)``."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if self.directed or u < v:
                    yield u, v

    @cached_property
    def n_edges(self) -> int:
        return sum(1 for _ in self.edges())

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n_nodes:
            raise UnknownNode(v)

    def _check_strongly_connected(self) -> None:
        for table in (self.succ, self.pred):
            reached = kernels.bfs(table, 0)
            missing = np.nonzero(reached < 0)[0]
            if missing.size:
                node = int(missing[0])
                raise DisconnectedMap(node, self.cell(node) if self.grid else None)

    # grid helpers
    def node_at(self, x: int, y: int) -> int:
        if self.grid is None:
            raise GraphError("graph has no grid layout")
        if not (0 <= x < self.grid.width and 0 <= y < self.grid.height):
            raise UnknownNode((x, y))
        v = int(self.grid.node_of_cell[y, x])
        if v < 0:
            raise UnknownNode((x, y))
        return v

    def cell(self, v: int) -> tuple[int, int]:
        if self.grid is None:
            raise GraphError("graph has no grid layout")
        x, y = self.grid.cell_of_node[v]
        return int(x), int(y)

    # distances
    @cached_property
    def distances(self) -> DistanceOracle:
        return DistanceOracle(self)

    def dist(self, u: int, v: int) -> int:
        self._check(u)
        self._check(v)
        return self.distances(u, v)

    def diameter(self) -> int:
        return self.distances.diameter()

    def to_networkx(self) -> nx.Graph:
        g = nx.DiGraph() if self.directed else nx.Graph()
        g.add_nodes_from(range(self.n_nodes))
        g.add_edges_from(self.edges())
        return g


def build_grid(width: int, height: int, passable=None) -> Graph:
    """4-connected grid graph over the passable cells.

    Node ids follow row-major order of the passable cells, so on a fully
    passable grid ``id = y * width + x``.
    """
    if width <= 0 or height <= 0:
        raise EmptyMap("grid dimensions must be positive")
    if passable is None:
        mask = np.ones((height, width), dtype=bool)
    else:
        mask = np.array(passable, dtype=bool)
        if mask.shape != (height, width):
            raise GraphError(f"mask shape {mask.shape} != ({height}, {width})")
    ys, xs = np.nonzero(mask)
    if ys.size == 0:
        raise EmptyMap("no passable cell")
    node_of_cell = np.full((height, width), -1, dtype=np.int32)
    node_of_cell[ys, xs] = np.arange(ys.size, dtype=np.int32)
    adjacency = []
    for x, y in zip(xs, ys):
        nbrs = []
        for dx, dy in ((0, -1), (-1, 0), (1, 0), (0, 1)):
            nx_, ny_ = x + dx, y + dy
            if 0 <= nx_ < width and 0 <= ny_ < height and mask[ny_, nx_]:
                nbrs.append(int(node_of_cell[ny_, nx_]))
        adjacency.append(nbrs)
    cells = np.stack([xs, ys], axis=1).astype(np.int32)
    for arr in (mask, node_of_cell, cells):
        arr.setflags(write=False)
    meta = GridMeta(width, height, mask, node_of_cell, cells)
    return Graph(adjacency, directed=False, grid=meta)


class DistanceOracle:
    """Exact hop distances.

    Small graphs get an all-pairs table up front; larger ones memoise one
    BFS per queried goal.  Rows are indexed by goal: ``to(g)[u] == dist(u, g)``.
    """

    ALL_PAIRS_LIMIT = 4096

    def __init__(self, graph: Graph, strategy: str | None = None):
        self.graph = graph
        if strategy is None:
            strategy = "all-pairs" if graph.n_nodes <= self.ALL_PAIRS_LIMIT else "bfs"
        if strategy not in ("all-pairs", "bfs"):
            raise ValueError(f"unknown strategy {strategy!r}")
        self.strategy = strategy
        self._table: np.ndarray | None = None
        self._rows: dict[int, np.ndarray] = {}
        self._lock = threading.Lock()
        if strategy == "all-pairs":
            self._table = kernels.all_pairs_to(graph.pred)
            self._table.setflags(write=False)

    def to(self, goal: int) -> np.ndarray:
        if self._table is not None:
            return self._table[goal]
        row = self._rows.get(goal)
        if row is None:
            row = kernels.bfs(self.graph.pred, goal)
            row.setflags(write=False)
            with self._lock:
                row = self._rows.setdefault(goal, row)
        return row

    def __call__(self, u: int, v: int) -> int:
        return int(self.to(v)[u])

    def diameter(self) -> int:
        if self._table is not None:
            return int(self._table.max())
        return max(int(self.to(g).max()) for g in range(self.graph.n_nodes))


@dataclass(frozen=True)
class PibtCondition:
    satisfied: bool
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.satisfied


def _edge_on_cycle(graph: Graph, u: int, v: int) -> bool:
    """Is there a simple cycle of length >= 3 running u -> v -> ... -> u?"""
    seen = {v}
    queue = deque(w for w in graph.adjacency[v] if w != u)
    seen.update(queue)
    while queue:
        w = queue.popleft()
        if w == u:
            return True
        for x in graph.adjacency[w]:
            if x not in seen:
                seen.add(x)
                queue.append(x)
    return False


def check_pibt_condition(graph: Graph) -> PibtCondition:
    """Every adjacent pair must lie on a simple cycle of length >= 3.

    Undirected graphs reduce to "no bridge edge"; directed graphs are
    checked edge by edge.
    """
    if not graph.directed:
        for u, v in nx.bridges(graph.to_networkx()):
            return PibtCondition(False, (min(u, v), max(u, v)))
        return PibtCondition(True)
    for u, v in graph.edges():
        if not _edge_on_cycle(graph, u, v):
            return PibtCondition(False, (u, v))
    return PibtCondition(True)
