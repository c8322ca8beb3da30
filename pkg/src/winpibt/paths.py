"""Committed paths, provisional paths and the disentangled predicate."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels

NodeSeq = Sequence[int]


@dataclass
class Path:
    """Append-only node sequence of one agent; ``nodes[t]`` is its node at t."""

    agent: int
    nodes: list[int] = field(default_factory=list)

    @property
    def frontier(self) -> int:
        return len(self.nodes) - 1

    def append(self, v: int) -> None:
        self.nodes.append(int(v))

    def __len__(self) -> int:
        return len(self.nodes)

    def __getitem__(self, t):
        return self.nodes[t]

    def __iter__(self):
        return iter(self.nodes)


def _nodes(p) -> list[int]:
    return list(p.nodes) if isinstance(p, Path) else [int(v) for v in p]


def pair_disentangled(p: NodeSeq | Path, q: NodeSeq | Path) -> bool:
    """True when the two paths can both be extended without ever colliding."""
    a, b = _nodes(p), _nodes(q)
    if len(a) > len(b):
        a, b = b, a
    la, lb = len(a) - 1, len(b) - 1
    for t in range(la + 1):
        if a[t] == b[t]:
            return False
        if t > 0 and a[t] == b[t - 1] and a[t - 1] == b[t]:
            return False
    return all(b[t] != a[la] for t in range(la + 1, lb + 1))


def _as_array(paths: Sequence[NodeSeq | Path]) -> tuple[np.ndarray, np.ndarray]:
    rows = [_nodes(p) for p in paths]
    ell = np.array([len(r) - 1 for r in rows], dtype=np.int32)
    width = int(ell.max()) + 1 if rows else 1
    arr = np.full((len(rows), width), -1, dtype=np.int32)
    for i, r in enumerate(rows):
        arr[i, : len(r)] = r
    return arr, ell


def first_entangled_pair(paths: Sequence[NodeSeq | Path]) -> tuple[int, int] | None:
    if len(paths) < 2:
        return None
    arr, ell = _as_array(paths)
    i, j = kernels.disentangled_violation(arr, ell)
    return None if i < 0 else (int(i), int(j))


def is_disentangled(paths: Sequence[NodeSeq | Path]) -> bool:
    return first_entangled_pair(paths) is None


@dataclass(frozen=True)
class VertexConflict:
    i: int
    j: int
    t: int


@dataclass(frozen=True)
class SwapConflict:
    i: int
    j: int
    t: int


def extend_stay(p: NodeSeq | Path, until: int) -> list[int]:
    nodes = _nodes(p)
    if until < len(nodes) - 1:
        raise ValueError(f"until={until} is before the path's frontier {len(nodes) - 1}")
    return nodes + [nodes[-1]] * (until - len(nodes) + 1)


def stacked(paths: Sequence[NodeSeq | Path], horizon: int) -> np.ndarray:
    """(n, horizon + 1) array of the paths, padded by staying put."""
    out = np.empty((len(paths), horizon + 1), dtype=np.int32)
    for i, p in enumerate(paths):
        nodes = _nodes(p)[: horizon + 1]
        out[i, : len(nodes)] = nodes
        out[i, len(nodes) :] = nodes[-1]
    return out


def check_execution(paths: Sequence[NodeSeq | Path], horizon: int):
    """Earliest vertex/swap conflict up to ``horizon``, or None.

    Paths shorter than the horizon are treated as waiting at their last node.
    Rotations of three or more agents are legal.
    """
    if len(paths) < 2:
        return None
    kind, i, j, t = kernels.first_conflict(stacked(paths, horizon))
    if kind == 0:
        return None
    cls = VertexConflict if kind == 1 else SwapConflict
    return cls(int(i), int(j), int(t))


class ProvisionalPaths:
    """Committed paths plus each agent's tentative (registered) extension.

    Row ``i`` of :attr:`reg` holds ``Pi_i``: entries up to ``ell[i]`` are
    committed, entries up to ``reg_end[i]`` are registered, the rest is -1.
    """

    def __init__(self, starts: Sequence[int], capacity: int = 64):
        n = len(starts)
        self.n_agents = n
        self.reg = np.full((n, max(capacity, 2)), -1, dtype=np.int32)
        self.reg[:, 0] = starts
        self.ell = np.zeros(n, dtype=np.int32)
        self.reg_end = np.zeros(n, dtype=np.int32)
        self.last = np.array(starts, dtype=np.int32)

    def _reserve(self, t: int) -> None:
        cap = self.reg.shape[1]
        if t < cap:
            return
        while cap <= t:
            cap *= 2
        grown = np.full((self.n_agents, cap), -1, dtype=np.int32)
        grown[:, : self.reg.shape[1]] = self.reg
        self.reg = grown

    def ensure_capacity(self, t: int) -> None:
        self._reserve(t)

    def max_registered(self) -> int:
        return int(self.reg_end.max())

    def frontier(self, i: int) -> int:
        return int(self.ell[i])

    def committed(self, i: int) -> list[int]:
        return self.reg[i, : self.ell[i] + 1].tolist()

    def registered(self, i: int) -> list[int]:
        return self.reg[i, : self.reg_end[i] + 1].tolist()

    def committed_paths(self) -> list[list[int]]:
        return [self.committed(i) for i in range(self.n_agents)]

    def position(self, i: int, t: int) -> int:
        """Committed node at ``t``; agents wait at their last node beyond ``ell``."""
        return int(self.reg[i, min(t, self.ell[i])])

    def register(self, i: int, segment: Sequence[int]) -> None:
        """Replace agent i's tentative part with ``segment`` (timesteps ell+1...)."""
        self.revoke(i)
        start = int(self.ell[i]) + 1
        end = start + len(segment) - 1
        self._reserve(end)
        self.reg[i, start : end + 1] = segment
        self.reg_end[i] = max(end, start - 1)

    def revoke(self, i: int) -> None:
        ell = self.ell[i]
        if self.reg_end[i] > ell:
            self.reg[i, ell + 1 : self.reg_end[i] + 1] = -1
            self.reg_end[i] = ell

    def secure(self, i: int) -> int:
        """Commit the next registered node of agent i and return it."""
        t = self.ell[i] + 1
        if t > self.reg_end[i]:
            raise RuntimeError(f"agent {i} has nothing registered at t={t}")
        self.ell[i] = t
        v = int(self.reg[i, t])
        self.last[i] = v
        return v

    def append(self, i: int, v: int) -> None:
        """Commit ``v`` directly after agent i's frontier (one-step planners)."""
        self.revoke(i)
        t = int(self.ell[i]) + 1
        self._reserve(t)
        self.reg[i, t] = v
        self.ell[i] = self.reg_end[i] = t
        self.last[i] = v

    def cope_stuck(self, i: int, alpha: int) -> None:
        """Wait at the last committed node through ``alpha``; drop tentative nodes."""
        self.revoke(i)
        ell = int(self.ell[i])
        if alpha > ell:
            self._reserve(alpha)
            self.reg[i, ell + 1 : alpha + 1] = self.last[i]
            self.ell[i] = self.reg_end[i] = alpha

    def agents_at_last(self, v: int) -> np.ndarray:
        return np.nonzero(self.last == v)[0]

    def is_disentangled(self) -> bool:
        width = int(self.ell.max()) + 1
        i, _ = kernels.disentangled_violation(self.reg[:, :width], self.ell)
        return i < 0

    def first_entangled_pair(self) -> tuple[int, int] | None:
        width = int(self.ell.max()) + 1
        i, j = kernels.disentangled_violation(self.reg[:, :width], self.ell)
        return None if i < 0 else (int(i), int(j))
