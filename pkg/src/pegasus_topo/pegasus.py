"""Pegasus-only couplers and the full Pegasus graph.

Pegasus stacks three Chimera layers and adds two kinds of edges:

* a coupler inside every cell joining ``k=0`` to ``k=1`` for fixed ``(i, j)``;
* inter-layer K2,4 bundles from layer ``z`` to layer ``(z+1) % 3``, always
  joining side ``i`` to the complementary side ``1-i``.

The inter-layer edges are produced two ways. :func:`interlayer_edges_general`
evaluates the single closed-form offset rule per qubit, and
:func:`interlayer_edges_grouped` applies the eight coloured rules of
:data:`INTERLAYER_RULES` per cell. :func:`rules_equivalent` compares them.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .chimera import BITS2, chimera_cell_edges, gather
from .coords import (
    CellCoord,
    CoordinateError,
    Dims,
    QubitCoord,
    UnsupportedTopologyError,
    validate,
)
from .graph import ColorGroup, Edge, EdgeClass, TopologyGraph, make_edge

__all__ = [
    "InterLayerRule",
    "INTERLAYER_RULES",
    "pegasus_intracell_edges",
    "interlayer_edges_general",
    "interlayer_edges_grouped",
    "RuleComparison",
    "rules_equivalent",
    "pegasus_graph",
    "pegasus_edge_count",
    "has_edge",
]

LAYERS = 3


def _require_pegasus(d: Dims) -> None:
    if d.Z != LAYERS:
        raise UnsupportedTopologyError(f"Pegasus needs Z=3 layers, got Z={d.Z}")


@dataclass(frozen=True)
class InterLayerRule:
    """One coloured bundle rule.

    Qubits ``(x, y, z, i, j, k)`` with ``z`` in ``layers`` couple to all four
    qubits on side ``1-i`` of cell ``(x+dx, y+dy, (z+1) % 3)``.
    """

    layers: tuple[int, ...]
    i: int
    j: int
    dx: int
    dy: int
    group: ColorGroup

    @property
    def target_side(self) -> int:
        return 1 - self.i

    def target_cell(self, cell: CellCoord) -> CellCoord:
        return CellCoord(cell.x + self.dx, cell.y + self.dy, (cell.z + 1) % LAYERS)


INTERLAYER_RULES: tuple[InterLayerRule, ...] = (
    InterLayerRule((0, 1), 0, 0, 0, 0, ColorGroup.BLUE),
    InterLayerRule((0, 1), 1, 0, 0, 0, ColorGroup.RED),
    InterLayerRule((0, 1), 0, 1, -1, 0, ColorGroup.GREEN),
    InterLayerRule((0, 1), 1, 1, 0, -1, ColorGroup.ORANGE),
    InterLayerRule((2,), 0, 0, 1, 1, ColorGroup.BLUE),
    InterLayerRule((2,), 1, 0, 1, 1, ColorGroup.RED),
    InterLayerRule((2,), 0, 1, 0, 1, ColorGroup.GREEN),
    InterLayerRule((2,), 1, 1, 1, 0, ColorGroup.ORANGE),
)


def _intracell_from(cell: CellCoord) -> list[Edge]:
    x, y, z = cell
    return [
        make_edge(QubitCoord(x, y, z, i, j, 0), QubitCoord(x, y, z, i, j, 1), EdgeClass.PEGASUS_INTRA)
        for (i, j) in BITS2
    ]


def pegasus_intracell_edges(d: Dims) -> list[Edge]:
    _require_pegasus(d)
    return gather(d.cells(), _intracell_from)


def general_target_cell(q: QubitCoord) -> CellCoord:
    """Target cell of ``q`` under the one-line rule, ignoring lattice bounds."""
    x, y, z, i, j, _ = q
    ibar = 1 - i
    tx = x - j * ibar
    ty = y - j * i
    if z == 2:
        tx += 1
        ty += 1
    return CellCoord(tx, ty, (z + 1) % LAYERS)


def _general_from(cell: CellCoord, d: Dims) -> list[Edge]:
    out = []
    for q in cell.qubits():
        t = general_target_cell(q)
        if not d.contains_cell(*t):
            continue
        cls = EdgeClass.interlayer(ColorGroup.for_source(q.i, q.j))
        for jp, kp in BITS2:
            out.append(make_edge(q, QubitCoord(t.x, t.y, t.z, 1 - q.i, jp, kp), cls))
    return out


def interlayer_edges_general(d: Dims, workers: int = 1) -> list[Edge]:
    _require_pegasus(d)
    return gather(d.cells(), lambda c: _general_from(c, d), workers)


def _rule_bundle(rule: InterLayerRule, cell: CellCoord) -> list[Edge]:
    t = rule.target_cell(cell)
    cls = EdgeClass.interlayer(rule.group)
    return [
        make_edge(
            QubitCoord(cell.x, cell.y, cell.z, rule.i, rule.j, k),
            QubitCoord(t.x, t.y, t.z, rule.target_side, jp, kp),
            cls,
        )
        for k in (0, 1)
        for (jp, kp) in BITS2
    ]


def _grouped_from(cell: CellCoord, d: Dims) -> list[Edge]:
    out = []
    for rule in INTERLAYER_RULES:
        if cell.z in rule.layers and d.contains_cell(*rule.target_cell(cell)):
            out.extend(_rule_bundle(rule, cell))
    return out


def interlayer_edges_grouped(d: Dims, workers: int = 1) -> list[Edge]:
    _require_pegasus(d)
    return gather(d.cells(), lambda c: _grouped_from(c, d), workers)


@dataclass(frozen=True)
class RuleComparison:
    """Outcome of comparing the two inter-layer formulations."""

    dims: Dims
    general_count: int
    grouped_count: int
    only_general: tuple[tuple[QubitCoord, QubitCoord], ...] = field(default=())
    only_grouped: tuple[tuple[QubitCoord, QubitCoord], ...] = field(default=())

    @property
    def equivalent(self) -> bool:
        return not self.only_general and not self.only_grouped

    def __bool__(self) -> bool:
        return self.equivalent

    def report(self) -> str:
        d = self.dims
        lines = [
            f"X={d.X} Y={d.Y}: general={self.general_count} grouped={self.grouped_count} "
            f"{'equivalent' if self.equivalent else 'MISMATCH'}"
        ]
        for label, pairs in (("general only", self.only_general), ("grouped only", self.only_grouped)):
            for a, b in pairs:
                lines.append(f"  {label}: {tuple(a)} -- {tuple(b)}")
        return "\n".join(lines)


def rules_equivalent(d: Dims) -> RuleComparison:
    """Compare the edge sets of both formulations, ignoring classes."""
    general = {e.pair for e in interlayer_edges_general(d)}
    grouped = {e.pair for e in interlayer_edges_grouped(d)}

    def key(pair):
        return (pair[0].key(), pair[1].key())

    return RuleComparison(
        dims=d,
        general_count=len(general),
        grouped_count=len(grouped),
        only_general=tuple(sorted(general - grouped, key=key)),
        only_grouped=tuple(sorted(grouped - general, key=key)),
    )


def _pegasus_cell_edges(cell: CellCoord, d: Dims) -> list[Edge]:
    return chimera_cell_edges(cell, d) + _intracell_from(cell) + _grouped_from(cell, d)


def pegasus_graph(d: Dims, workers: int = 1) -> TopologyGraph:
    _require_pegasus(d)
    return TopologyGraph(d, gather(d.cells(), lambda c: _pegasus_cell_edges(c, d), workers))


def pegasus_edge_count(d: Dims) -> int:
    """Closed-form edge count of :func:`pegasus_graph`."""
    _require_pegasus(d)
    X, Y = d.X, d.Y
    chimera = 3 * (16 * X * Y + 4 * (X - 1) * Y + 4 * X * (Y - 1))
    intracell = 12 * X * Y
    # z in {0,1}: two same-cell bundles, one shifted in x, one in y
    low = 2 * (2 * X * Y + (X - 1) * Y + X * (Y - 1))
    # z == 2: two diagonal bundles, one shifted in y, one in x
    high = 2 * (X - 1) * (Y - 1) + X * (Y - 1) + (X - 1) * Y
    return chimera + intracell + 8 * (low + high)


def _forward_interlayer(src: QubitCoord, dst: QubitCoord) -> bool:
    if dst.z != (src.z + 1) % LAYERS or dst.i != 1 - src.i:
        return False
    return general_target_cell(src) == dst.cell


def has_edge(a: QubitCoord, b: QubitCoord, d: Dims) -> EdgeClass | None:
    """Class of the Pegasus coupler between ``a`` and ``b``, or ``None``.

    Evaluated in closed form from the coordinates, without building a graph.
    """
    _require_pegasus(d)
    for q in (a, b):
        if not validate(q, d):
            raise CoordinateError(f"{q} not valid for {d}")
    if a == b:
        return None
    if a.z == b.z:
        if a.cell == b.cell:
            if a.i != b.i:
                return EdgeClass.CHIMERA_INTRA
            if a.j == b.j:
                return EdgeClass.PEGASUS_INTRA
            return None
        if a.i != b.i or a.j != b.j or a.k != b.k:
            return None
        dx, dy = abs(a.x - b.x), abs(a.y - b.y)
        if a.i == 1 and dx == 1 and dy == 0:
            return EdgeClass.CHIMERA_HORIZONTAL
        if a.i == 0 and dx == 0 and dy == 1:
            return EdgeClass.CHIMERA_VERTICAL
        return None
    for src, dst in ((a, b), (b, a)):
        if _forward_interlayer(src, dst):
            return EdgeClass.interlayer(ColorGroup.for_source(src.i, src.j))
    return None

