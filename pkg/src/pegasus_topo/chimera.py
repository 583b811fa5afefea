"""Chimera couplers: K4,4 cells plus same-side links to grid neighbours.

Side ``i=1`` qubits link to the cell at ``x+1``; side ``i=0`` qubits link to
the cell at ``y+1``. Links leaving the ``X`` by ``Y`` window are dropped.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import Callable, Iterable, TypeVar

from .coords import CellCoord, Dims, QubitCoord, validate_cell
from .graph import Edge, EdgeClass, TopologyGraph, canonical, make_edge

__all__ = [
    "k44_edges",
    "chimera_horizontal_edges",
    "chimera_vertical_edges",
    "chimera_graph",
    "chimera_edge_count",
]

T = TypeVar("T")

BITS2 = tuple(product((0, 1), repeat=2))


def gather(items: Iterable[T], fn: Callable[[T], list[Edge]], workers: int = 1) -> list[Edge]:
    """Apply ``fn`` to each item, optionally on a thread pool, and canonicalize.

    The canonical sort makes the result independent of ``workers``.
    """
    items = list(items)
    if workers <= 1:
        chunks = map(fn, items)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(fn, items))
    return canonical(e for chunk in chunks for e in chunk)


def k44_edges(cell: CellCoord, d: Dims) -> list[Edge]:
    validate_cell(cell, d)
    x, y, z = cell
    return [
        make_edge(QubitCoord(x, y, z, 0, j, k), QubitCoord(x, y, z, 1, jp, kp), EdgeClass.CHIMERA_INTRA)
        for (j, k) in BITS2
        for (jp, kp) in BITS2
    ]


def _horizontal_from(cell: CellCoord, d: Dims) -> list[Edge]:
    x, y, z = cell
    if x + 1 >= d.X:
        return []
    return [
        make_edge(QubitCoord(x, y, z, 1, j, k), QubitCoord(x + 1, y, z, 1, j, k), EdgeClass.CHIMERA_HORIZONTAL)
        for (j, k) in BITS2
    ]


def _vertical_from(cell: CellCoord, d: Dims) -> list[Edge]:
    x, y, z = cell
    if y + 1 >= d.Y:
        return []
    return [
        make_edge(QubitCoord(x, y, z, 0, j, k), QubitCoord(x, y + 1, z, 0, j, k), EdgeClass.CHIMERA_VERTICAL)
        for (j, k) in BITS2
    ]


def chimera_horizontal_edges(d: Dims) -> list[Edge]:
    return gather(d.cells(), lambda c: _horizontal_from(c, d))


def chimera_vertical_edges(d: Dims) -> list[Edge]:
    return gather(d.cells(), lambda c: _vertical_from(c, d))


def chimera_cell_edges(cell: CellCoord, d: Dims) -> list[Edge]:
    """All Chimera edges owned by ``cell``: its K4,4 and its forward grid links."""
    return k44_edges(cell, d) + _horizontal_from(cell, d) + _vertical_from(cell, d)


def chimera_edge_count(d: Dims) -> int:
    X, Y, Z = d.X, d.Y, d.Z
    return 16 * X * Y * Z + 4 * (X - 1) * Y * Z + 4 * X * (Y - 1) * Z


def chimera_graph(d: Dims, workers: int = 1) -> TopologyGraph:
    """Chimera graph on every layer of ``d``.

    With ``Z=3`` the result is three disjoint copies, one per layer.
    """
    return TopologyGraph(d, gather(d.cells(), lambda c: chimera_cell_edges(c, d), workers))
