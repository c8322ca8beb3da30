"""Built-in environments and the small worked-example instances.

The bridge and warehouse maps are generated approximations of the layouts
commonly used for MAPF experiments; dimensions are parameters.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph, build_grid
from .scenario import Instance


def empty_grid(width: int, height: int | None = None) -> Graph:
    return build_grid(width, width if height is None else height)


def bridge_mask(room: int = 8, height: int = 16, corridor: int = 6, bridges: int = 2) -> np.ndarray:
    """Two open rooms joined by ``bridges`` one-cell-wide corridors.

    Returns a ``(height, width)`` boolean mask (True = passable).
    """
    if bridges < 1 or bridges > height:
        raise ValueError("bridges must lie in 1..height")
    width = 2 * room + corridor
    mask = np.zeros((height, width), dtype=bool)
    mask[:, :room] = True
    mask[:, room + corridor :] = True
    rows = np.linspace(0, height - 1, bridges + 2)[1:-1].round().astype(int)
    mask[rows, room : room + corridor] = True
    return mask


def bridge_map(room: int = 8, height: int = 16, corridor: int = 6, bridges: int = 2) -> Graph:
    mask = bridge_mask(room, height, corridor, bridges)
    return build_grid(mask.shape[1], mask.shape[0], mask)


def kiva_mask(
    shelf_cols: int = 4,
    shelf_rows: int = 3,
    shelf_len: int = 5,
    aisle: int = 1,
    margin: int = 2,
) -> np.ndarray:
    """Warehouse floor: a lattice of 2-deep shelf blocks ringed by aisles."""
    block_w, block_h = shelf_len, 2
    width = 2 * margin + shelf_cols * block_w + (shelf_cols - 1) * aisle
    height = 2 * margin + shelf_rows * block_h + (shelf_rows - 1) * aisle
    mask = np.ones((height, width), dtype=bool)
    for r in range(shelf_rows):
        y = margin + r * (block_h + aisle)
        for c in range(shelf_cols):
            x = margin + c * (block_w + aisle)
            mask[y : y + block_h, x : x + block_w] = False
    return mask


def kiva_map(**kwargs) -> Graph:
    mask = kiva_mask(**kwargs)
    return build_grid(mask.shape[1], mask.shape[0], mask)


# -- worked examples -----------------------------------------------------


def fig1_graph() -> Graph:
    """A cycle of eight nodes with a two-node dead end hanging off node 2.

    Nodes 0..4 form the bottom row (4 is the dead end), 5 and 7 climb the
    left side, 8 and 9 run along the top and 6 joins 9 back down to 2.
    """
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (2, 6), (5, 7), (6, 9), (7, 8), (8, 9)]
    return Graph.from_edges(10, edges)


def fig1_instance() -> Instance:
    """Two agents trade places across the dead end; agent 0 ranks first."""
    return Instance(fig1_graph(), [4, 8], [8, 4], name="fig1")


def fig2_graph() -> Graph:
    edges = [(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5), (1, 2), (3, 4)]
    return Graph.from_edges(6, edges)


def fig2_instance() -> Instance:
    """Five agents where a chain of pushes ends at a stuck agent.

    Agent ``k`` here is ``a_{k+1}``; goals make a1 want a2's node, a2 want
    a3's and a3 want a4's; a4 is walled in and a5 sits on its goal.
    """
    return Instance(fig2_graph(), [2, 4, 3, 5, 1], [4, 3, 5, 0, 1], name="fig2")


FIG2_ORDER = (0, 4, 1, 2, 3)


def fig3_instance() -> Instance:
    """3x2 grid with nodes v1..v6 stored as ids 0..5 (two rows of three).

    Goals of a2..a4 are not given with the example; they are taken to be
    the nodes their listed paths end on.
    """
    return Instance(build_grid(3, 2), [3, 1, 2, 5], [2, 4, 5, 0], name="fig3")


FIG3_WINDOW = 3
FIG3_EXPECTED = (
    (3, 4, 5, 2),
    (1, 0, 3, 4),
    (2, 1, 4, 5),
    (5, 2, 1, 0),
)
