"""Six-index qubit coordinates for Chimera and Pegasus lattices.

A qubit is addressed by ``(x, y, z, i, j, k)``: the cell position ``(x, y)``
within a Chimera layer, the layer ``z``, the side ``i`` of the K4,4 cell and
two bits ``j``, ``k`` that label the four qubits on that side.

Linear indices are cell-major with ``k`` varying fastest, so the eight
qubits of a cell always occupy eight consecutive integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

__all__ = [
    "CoordinateError",
    "UnsupportedTopologyError",
    "Dims",
    "QubitCoord",
    "CellCoord",
    "linear_index",
    "from_linear",
    "validate",
    "validate_cell",
]

ALLOWED_LAYERS = (1, 3)


class CoordinateError(ValueError):
    """A coordinate or index lies outside the lattice."""

    def __init__(self, message: str, field: str | None = None) -> None:
        super().__init__(message)
        self.field = field


class UnsupportedTopologyError(ValueError):
    """The requested operation is undefined for the given lattice shape."""


@dataclass(frozen=True, order=True)
class Dims:
    """Lattice shape: ``X`` by ``Y`` cells in each of ``Z`` layers."""

    X: int
    Y: int
    Z: int

    def __post_init__(self) -> None:
        for name in ("X", "Y", "Z"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise CoordinateError(f"{name} must be an integer, got {value!r}", name)
        if self.X < 1:
            raise CoordinateError(f"X must be >= 1, got {self.X}", "X")
        if self.Y < 1:
            raise CoordinateError(f"Y must be >= 1, got {self.Y}", "Y")
        if self.Z not in ALLOWED_LAYERS:
            raise CoordinateError(f"Z must be 1 or 3, got {self.Z}", "Z")

    @property
    def num_qubits(self) -> int:
        return 8 * self.X * self.Y * self.Z

    @property
    def num_cells(self) -> int:
        return self.X * self.Y * self.Z

    def cells(self) -> Iterator["CellCoord"]:
        """Cells in linear order (z slowest, x fastest)."""
        for z in range(self.Z):
            for y in range(self.Y):
                for x in range(self.X):
                    yield CellCoord(x, y, z)

    def qubits(self) -> Iterator["QubitCoord"]:
        """All qubits in linear-index order."""
        for cell in self.cells():
            yield from cell.qubits()

    def contains_cell(self, x: int, y: int, z: int) -> bool:
        return 0 <= x < self.X and 0 <= y < self.Y and 0 <= z < self.Z


class CellCoord(NamedTuple):
    x: int
    y: int
    z: int

    def qubits(self) -> Iterator["QubitCoord"]:
        for i in (0, 1):
            for j in (0, 1):
                for k in (0, 1):
                    yield QubitCoord(self.x, self.y, self.z, i, j, k)

    def key(self) -> tuple[int, int, int]:
        """Sort key matching linear order of cells."""
        return (self.z, self.y, self.x)


class QubitCoord(NamedTuple):
    x: int
    y: int
    z: int
    i: int
    j: int
    k: int

    @property
    def cell(self) -> CellCoord:
        return CellCoord(self.x, self.y, self.z)

    def key(self) -> tuple[int, int, int, int, int, int]:
        """Sort key whose order agrees with :func:`linear_index` for any dims."""
        return (self.z, self.y, self.x, self.i, self.j, self.k)


def _bad_field(q: QubitCoord, d: Dims) -> str | None:
    bounds = (("x", d.X), ("y", d.Y), ("z", d.Z), ("i", 2), ("j", 2), ("k", 2))
    for name, upper in bounds:
        value = getattr(q, name)
        if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value < upper:
            return name
    return None


def validate(q: QubitCoord, d: Dims) -> bool:
    """True iff every field of ``q`` lies in its half-open range for ``d``."""
    return _bad_field(q, d) is None


def validate_cell(cell: CellCoord, d: Dims) -> None:
    for name, upper in (("x", d.X), ("y", d.Y), ("z", d.Z)):
        value = getattr(cell, name)
        if not 0 <= value < upper:
            raise CoordinateError(
                f"cell field {name}={value} outside [0, {upper}) for {d}", name
            )


def linear_index(q: QubitCoord, d: Dims) -> int:
    bad = _bad_field(q, d)
    if bad is not None:
        raise CoordinateError(f"qubit field {bad}={getattr(q, bad)!r} out of range for {d}", bad)
    x, y, z, i, j, k = q
    return k + 2 * j + 4 * i + 8 * (x + d.X * (y + d.Y * z))


def from_linear(idx: int, d: Dims) -> QubitCoord:
    if not 0 <= idx < d.num_qubits:
        raise CoordinateError(f"linear index {idx} outside [0, {d.num_qubits})", "index")
    cell, rem = divmod(idx, 8)
    i, rem = divmod(rem, 4)
    j, k = divmod(rem, 2)
    rest, x = divmod(cell, d.X)
    z, y = divmod(rest, d.Y)
    return QubitCoord(x, y, z, i, j, k)
