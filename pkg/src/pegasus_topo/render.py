"""SVG depictions of Chimera and Pegasus lattices.

Layout follows the usual figure convention: origin bottom-left, ``x`` to the
right, ``y`` upward and successive layers ``z`` shifted up and to the right.
Each style is a placement of the eight qubits of a cell around the cell
centre:

``classic``   two slightly slanted columns, side ``i=0`` left, ``i=1`` right
``diamond``   side ``i=0`` on a horizontal bar, side ``i=1`` on a vertical bar
``triangle``  side ``i=0`` along the bottom, side ``i=1`` up the right edge
``compressed`` one dot per cell; needs a :class:`CompressedGraph`

Every vertex is one ``<circle class="vertex">`` and every edge one
``<line class="edge">``; optional boundary stubs use ``class="stub"``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from .analysis import CompressedGraph, CompressedKind, compress
from .chimera import chimera_graph
from .coords import CellCoord, Dims, QubitCoord
from .graph import ColorGroup, EdgeClass, TopologyGraph
from .pegasus import pegasus_graph

__all__ = ["RenderStyle", "ColorMode", "RenderSpec", "RenderError", "render_svg", "COLORS"]


class RenderStyle(Enum):
    CLASSIC = "classic"
    DIAMOND = "diamond"
    TRIANGLE = "triangle"
    COMPRESSED = "compressed"


class ColorMode(Enum):
    MONO = "mono"
    CLASS = "class"
    GROUP = "group"


class RenderError(ValueError):
    """Style and graph do not fit together, or the graph is too large."""


BLACK = "#000000"
GREY = "#808080"
LIGHT_BLUE = "#87CEEB"

COLORS = {
    ColorGroup.BLUE: "#0000FF",
    ColorGroup.RED: "#FF0000",
    ColorGroup.GREEN: "#008000",
    ColorGroup.ORANGE: "#FFA500",
}


@dataclass(frozen=True)
class RenderSpec:
    style: RenderStyle = RenderStyle.DIAMOND
    tilted_lattice: bool = False
    color_mode: ColorMode = ColorMode.GROUP
    cell_pitch: float = 100.0
    cell_size: float = 0.55  # fraction of the pitch covered by one cell
    layer_offset: float = 0.3  # per-layer shift, in pitches, both right and up
    tilt_shear: float = 0.5  # x shift per unit y when tilted_lattice is set
    vertex_radius: float = 3.0
    chimera_width: float = 0.8
    pegasus_width: float = 1.2
    margin: float = 20.0
    show_boundary_stubs: bool = False
    max_vertices: int = 50_000

    def __post_init__(self) -> None:
        object.__setattr__(self, "style", RenderStyle(self.style))
        object.__setattr__(self, "color_mode", ColorMode(self.color_mode))
        if self.cell_pitch <= 0:
            raise RenderError(f"cell_pitch must be positive, got {self.cell_pitch}")


def _cell_centre(x: float, y: float, z: float, spec: RenderSpec) -> tuple[float, float]:
    cx = x + z * spec.layer_offset
    cy = y + z * spec.layer_offset
    if spec.tilted_lattice:
        cx += spec.tilt_shear * cy
    return cx * spec.cell_pitch, cy * spec.cell_pitch


def _local(q: QubitCoord, spec: RenderSpec) -> tuple[float, float]:
    s = spec.cell_size * spec.cell_pitch
    r = 2 * q.j + q.k
    if spec.style is RenderStyle.CLASSIC:
        v = (r - 1.5) * s / 4
        u = (-0.25 if q.i == 0 else 0.25) * s + 0.15 * v
        return u, v
    if spec.style is RenderStyle.DIAMOND:
        along = (-2, -1, 1, 2)[r] * s / 5
        return (along, 0.0) if q.i == 0 else (0.0, along)
    # triangle
    if q.i == 0:
        return (-0.5 + 0.25 * r) * s, -0.5 * s
    return 0.5 * s, (-0.25 + 0.25 * r) * s


def qubit_position(q: QubitCoord, spec: RenderSpec) -> tuple[float, float]:
    """Position in figure units (y upward); accepts coordinates outside any lattice."""
    cx, cy = _cell_centre(q.x, q.y, q.z, spec)
    u, v = _local(q, spec)
    return cx + u, cy + v


def cell_position(c: CellCoord, spec: RenderSpec) -> tuple[float, float]:
    return _cell_centre(c.x, c.y, c.z, spec)


def _edge_colour(cls: EdgeClass, mode: ColorMode) -> str:
    if cls.is_chimera:
        return GREY
    if cls is EdgeClass.PEGASUS_INTRA or mode is ColorMode.MONO:
        return BLACK
    if mode is ColorMode.CLASS:
        return LIGHT_BLUE
    return COLORS[cls.group]


_CLASS_LAYER = {cls: n for n, cls in enumerate(EdgeClass)}


def _fmt(v: float) -> str:
    text = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


class _Canvas:
    def __init__(self, spec: RenderSpec) -> None:
        self.spec = spec
        self.edges: list[tuple] = []
        self.stubs: list[tuple] = []
        self.vertices: list[tuple] = []

    def document(self, title: str) -> str:
        spec = self.spec
        points = [(x, y) for _, x, y in self.vertices]
        for _, (x1, y1), (x2, y2), _, _ in self.edges + self.stubs:
            points += [(x1, y1), (x2, y2)]
        if not points:
            points = [(0.0, 0.0)]
        pad = spec.margin + spec.vertex_radius
        x0 = min(p[0] for p in points) - pad
        x1 = max(p[0] for p in points) + pad
        y0 = min(p[1] for p in points) - pad
        y1 = max(p[1] for p in points) + pad
        width, height = x1 - x0, y1 - y0

        def tx(x):
            return _fmt(x - x0)

        def ty(y):
            return _fmt(y1 - y)

        out = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_fmt(width)}" height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
            f"<title>{title}</title>",
            '<g id="edges" stroke-linecap="round">',
        ]
        for attrs, (xa, ya), (xb, yb), colour, w in self.edges:
            out.append(
                f'<line class="edge" {attrs} x1="{tx(xa)}" y1="{ty(ya)}" x2="{tx(xb)}" y2="{ty(yb)}" '
                f'stroke="{colour}" stroke-width="{_fmt(w)}"/>'
            )
        out.append("</g>")
        if self.stubs:
            out.append('<g id="stubs" stroke-dasharray="2,2">')
            for attrs, (xa, ya), (xb, yb), colour, w in self.stubs:
                out.append(
                    f'<line class="stub" {attrs} x1="{tx(xa)}" y1="{ty(ya)}" x2="{tx(xb)}" y2="{ty(yb)}" '
                    f'stroke="{colour}" stroke-width="{_fmt(w)}"/>'
                )
            out.append("</g>")
        out.append('<g id="vertices">')
        r = _fmt(self.spec.vertex_radius)
        for attrs, x, y in self.vertices:
            out.append(f'<circle class="vertex" {attrs} cx="{tx(x)}" cy="{ty(y)}" r="{r}" fill="{BLACK}"/>')
        out.append("</g>")
        out.append("</svg>")
        return "\n".join(out) + "\n"


def _width(cls: EdgeClass, spec: RenderSpec) -> float:
    return spec.chimera_width if cls.is_chimera else spec.pegasus_width


def _padded(dims: Dims, pegasus: bool) -> TopologyGraph:
    big = Dims(dims.X + 2, dims.Y + 2, dims.Z)
    return pegasus_graph(big) if pegasus else chimera_graph(big)


def _inside(x: int, y: int, dims: Dims) -> bool:
    return 1 <= x <= dims.X and 1 <= y <= dims.Y


def _shift(q: QubitCoord) -> QubitCoord:
    return q._replace(x=q.x - 1, y=q.y - 1)


def _toward(p, target, fraction=0.4):
    return (p[0] + fraction * (target[0] - p[0]), p[1] + fraction * (target[1] - p[1]))


def _render_full(g: TopologyGraph, spec: RenderSpec) -> str:
    canvas = _Canvas(spec)
    ordered = sorted(g.edges, key=lambda e: (_CLASS_LAYER[e.cls], e.sort_key()))
    for e in ordered:
        canvas.edges.append((
            f'data-class="{e.cls.value}"',
            qubit_position(e.a, spec),
            qubit_position(e.b, spec),
            _edge_colour(e.cls, spec.color_mode),
            _width(e.cls, spec),
        ))
    if spec.show_boundary_stubs:
        for e in _padded(g.dims, g.is_pegasus).edges:
            ins = [_inside(q.x, q.y, g.dims) for q in e.pair]
            if ins[0] == ins[1]:
                continue
            inner, outer = (e.a, e.b) if ins[0] else (e.b, e.a)
            p = qubit_position(_shift(inner), spec)
            canvas.stubs.append((
                f'data-class="{e.cls.value}"',
                p,
                _toward(p, qubit_position(_shift(outer), spec)),
                _edge_colour(e.cls, spec.color_mode),
                _width(e.cls, spec),
            ))
    for q in g.vertices():
        x, y = qubit_position(q, spec)
        canvas.vertices.append((f'data-q="{",".join(map(str, q))}"', x, y))
    d = g.dims
    return canvas.document(f"{spec.style.value} X={d.X} Y={d.Y} Z={d.Z}")


def _bundle_colour(groups: tuple[ColorGroup, ...], mode: ColorMode) -> str:
    if mode is ColorMode.MONO:
        return BLACK
    if mode is ColorMode.CLASS or not groups:
        return LIGHT_BLUE
    return COLORS[groups[0]]


def _compressed_edge(e, spec: RenderSpec, a_pos, b_pos) -> tuple:
    if e.kind is CompressedKind.GRID:
        return (f'data-kind="grid" data-multiplicity="{e.multiplicity}"', a_pos, b_pos, GREY, spec.chimera_width)
    groups = " ".join(grp.value for grp in e.groups)
    return (
        f'data-kind="bundle" data-multiplicity="{e.multiplicity}" data-groups="{groups}"',
        a_pos,
        b_pos,
        _bundle_colour(e.groups, spec.color_mode),
        spec.pegasus_width * e.multiplicity,
    )


def _render_compressed(c: CompressedGraph, spec: RenderSpec) -> str:
    canvas = _Canvas(spec)
    for e in sorted(c.edges, key=lambda e: (e.kind is CompressedKind.BUNDLE, e.a.key(), e.b.key())):
        canvas.edges.append(_compressed_edge(e, spec, cell_position(e.a, spec), cell_position(e.b, spec)))
    if spec.show_boundary_stubs:
        pegasus = any(e.kind is CompressedKind.BUNDLE for e in c.edges)
        for e in compress(_padded(c.dims, pegasus)).edges:
            ins = [_inside(cell.x, cell.y, c.dims) for cell in (e.a, e.b)]
            if ins[0] == ins[1]:
                continue
            inner, outer = (e.a, e.b) if ins[0] else (e.b, e.a)
            p = cell_position(CellCoord(inner.x - 1, inner.y - 1, inner.z), spec)
            q = cell_position(CellCoord(outer.x - 1, outer.y - 1, outer.z), spec)
            canvas.stubs.append(_compressed_edge(e, spec, p, _toward(p, q)))
    for cell in c.vertices:
        x, y = cell_position(cell, spec)
        canvas.vertices.append((f'data-cell="{",".join(map(str, cell))}"', x, y))
    d = c.dims
    return canvas.document(f"compressed X={d.X} Y={d.Y} Z={d.Z}")


def render_svg(g: Union[TopologyGraph, CompressedGraph], spec: RenderSpec | None = None) -> str:
    spec = spec or RenderSpec()
    if spec.style is RenderStyle.COMPRESSED:
        if not isinstance(g, CompressedGraph):
            raise RenderError("compressed style needs a compressed graph")
        if g.num_vertices > spec.max_vertices:
            raise RenderError(f"{g.num_vertices} vertices exceed render limit {spec.max_vertices}")
        return _render_compressed(g, spec)
    if not isinstance(g, TopologyGraph):
        raise RenderError(f"{spec.style.value} style needs a full qubit graph")
    if g.num_vertices > spec.max_vertices:
        raise RenderError(f"{g.num_vertices} vertices exceed render limit {spec.max_vertices}")
    return _render_full(g, spec)
