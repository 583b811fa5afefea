"""Edge classes and the immutable topology graph container."""
from __future__ import annotations

from collections import Counter
from enum import Enum
from typing import Iterable, Iterator, NamedTuple

from .coords import CoordinateError, Dims, QubitCoord, linear_index, validate

__all__ = ["ColorGroup", "EdgeClass", "Edge", "TopologyGraph", "make_edge"]


class ColorGroup(Enum):
    """Colour of an inter-layer rule, fixed by the source qubit's ``(i, j)``."""

    BLUE = "blue"
    RED = "red"
    GREEN = "green"
    ORANGE = "orange"

    @classmethod
    def for_source(cls, i: int, j: int) -> "ColorGroup":
        return _GROUP_BY_SIDE[(i, j)]


_GROUP_BY_SIDE = {
    (0, 0): ColorGroup.BLUE,
    (1, 0): ColorGroup.RED,
    (0, 1): ColorGroup.GREEN,
    (1, 1): ColorGroup.ORANGE,
}


class EdgeClass(Enum):
    CHIMERA_INTRA = "chimera-intra"
    CHIMERA_HORIZONTAL = "chimera-horizontal"
    CHIMERA_VERTICAL = "chimera-vertical"
    PEGASUS_INTRA = "pegasus-intra"
    INTERLAYER_BLUE = "interlayer-blue"
    INTERLAYER_RED = "interlayer-red"
    INTERLAYER_GREEN = "interlayer-green"
    INTERLAYER_ORANGE = "interlayer-orange"

    @property
    def is_chimera(self) -> bool:
        return self in _CHIMERA_CLASSES

    @property
    def is_interlayer(self) -> bool:
        return self in _INTERLAYER_BY_GROUP.values()

    @property
    def group(self) -> ColorGroup | None:
        return _GROUP_BY_INTERLAYER.get(self)

    @classmethod
    def interlayer(cls, group: ColorGroup) -> "EdgeClass":
        return _INTERLAYER_BY_GROUP[group]


_CHIMERA_CLASSES = frozenset(
    {EdgeClass.CHIMERA_INTRA, EdgeClass.CHIMERA_HORIZONTAL, EdgeClass.CHIMERA_VERTICAL}
)
_INTERLAYER_BY_GROUP = {
    ColorGroup.BLUE: EdgeClass.INTERLAYER_BLUE,
    ColorGroup.RED: EdgeClass.INTERLAYER_RED,
    ColorGroup.GREEN: EdgeClass.INTERLAYER_GREEN,
    ColorGroup.ORANGE: EdgeClass.INTERLAYER_ORANGE,
}
_GROUP_BY_INTERLAYER = {v: k for k, v in _INTERLAYER_BY_GROUP.items()}


class Edge(NamedTuple):
    """Unordered coupler stored with ``a`` before ``b`` in linear order.

    Build instances with :func:`make_edge`; the named-tuple constructor does
    not reorder its arguments.
    """

    a: QubitCoord
    b: QubitCoord
    cls: EdgeClass

    @property
    def pair(self) -> tuple[QubitCoord, QubitCoord]:
        return (self.a, self.b)

    def sort_key(self) -> tuple:
        return (self.a.key(), self.b.key())


def make_edge(a: QubitCoord, b: QubitCoord, cls: EdgeClass) -> Edge:
    if a == b:
        raise CoordinateError(f"self-loop on {a}")
    if b.key() < a.key():
        a, b = b, a
    return Edge(a, b, cls)


def canonical(edges: Iterable[Edge]) -> list[Edge]:
    """Deduplicate by endpoint pair and sort by linear order of endpoints.

    Raises ``ValueError`` if one pair is supplied with two different classes.
    """
    seen: dict[tuple[QubitCoord, QubitCoord], Edge] = {}
    for e in edges:
        prev = seen.get(e.pair)
        if prev is None:
            seen[e.pair] = e
        elif prev.cls is not e.cls:
            raise ValueError(f"edge {e.a}-{e.b} has conflicting classes {prev.cls.value}, {e.cls.value}")
    return sorted(seen.values(), key=Edge.sort_key)


class TopologyGraph:
    """Immutable qubit graph over every coordinate of ``dims``.

    Every qubit of the lattice is a vertex, including isolated ones, and each
    edge keeps the class of the rule that produced it.
    """

    __slots__ = ("_dims", "_edges", "_lookup", "_adj")

    def __init__(self, dims: Dims, edges: Iterable[Edge]) -> None:
        ordered = canonical(edges)
        for e in ordered:
            for q in e.pair:
                if not validate(q, dims):
                    raise CoordinateError(f"edge endpoint {q} not valid for {dims}")
        adj: dict[QubitCoord, list[QubitCoord]] = {q: [] for q in dims.qubits()}
        for e in ordered:
            adj[e.a].append(e.b)
            adj[e.b].append(e.a)
        self._dims = dims
        self._edges = tuple(ordered)
        self._lookup = {e.pair: e.cls for e in ordered}
        self._adj = {q: tuple(sorted(ns, key=QubitCoord.key)) for q, ns in adj.items()}

    @property
    def dims(self) -> Dims:
        return self._dims

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def num_vertices(self) -> int:
        return self._dims.num_qubits

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def vertices(self) -> Iterator[QubitCoord]:
        return self._dims.qubits()

    def neighbors(self, q: QubitCoord) -> tuple[QubitCoord, ...]:
        return self._adj[q]

    def degree(self, q: QubitCoord) -> int:
        return len(self._adj[q])

    def has_edge(self, a: QubitCoord, b: QubitCoord) -> EdgeClass | None:
        if b.key() < a.key():
            a, b = b, a
        return self._lookup.get((a, b))

    def edge_pairs(self) -> frozenset[tuple[QubitCoord, QubitCoord]]:
        return frozenset(self._lookup)

    def class_counts(self) -> Counter:
        return Counter(e.cls for e in self._edges)

    @property
    def is_pegasus(self) -> bool:
        """True if any edge comes from a Pegasus-only rule."""
        return any(not e.cls.is_chimera for e in self._edges)

    def without(self, *classes: EdgeClass) -> "TopologyGraph":
        drop = set(classes)
        return TopologyGraph(self._dims, (e for e in self._edges if e.cls not in drop))

    def indexed_edges(self) -> Iterator[tuple[int, int, EdgeClass]]:
        d = self._dims
        for e in self._edges:
            yield linear_index(e.a, d), linear_index(e.b, d), e.cls

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TopologyGraph):
            return NotImplemented
        return self._dims == other._dims and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._dims, self._edges))

    def __repr__(self) -> str:
        d = self._dims
        return f"TopologyGraph(X={d.X}, Y={d.Y}, Z={d.Z}, edges={len(self._edges)})"
