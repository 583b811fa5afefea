"""Serialisation of topology graphs.

Four formats are supported, all byte-stable and all carrying the edge class:

``edgelist``
    Text, one ``<idx_a> <idx_b> <class>`` line per edge after the header
    ``# pegasus-topo v1 X=<X> Y=<Y> Z=<Z>``.
``json``
    ``{"format": "pegasus-topo", "version": 1, "dims": ..., "edges": [...]}``.
``dot``
    Undirected Graphviz graph; node ids are linear indices.
``graphml``
    GraphML with ``class`` on edges and the six coordinates on nodes.

A fifth, ``compressed``, is write-only from a topology graph and stores the
cell-level :class:`~pegasus_topo.analysis.CompressedGraph` as JSON.
"""
from __future__ import annotations

import json
import re
import sys
import xml.etree.ElementTree as ET
from enum import Enum
from pathlib import Path
from typing import Union

from .analysis import CompressedEdge, CompressedGraph, CompressedKind
from .coords import CellCoord, CoordinateError, Dims, from_linear, linear_index
from .graph import ColorGroup, EdgeClass, TopologyGraph, make_edge

__all__ = [
    "ExportFormat",
    "ParseError",
    "ExportError",
    "export",
    "parse",
    "parse_edgelist",
    "export_compressed",
    "parse_compressed",
    "sniff_format",
    "read_graph",
    "write_bytes",
]

HEADER_RE = re.compile(r"^# pegasus-topo v1 X=(\d+) Y=(\d+) Z=(\d+)$")
JSON_FORMAT = "pegasus-topo"
COMPRESSED_FORMAT = "pegasus-topo-compressed"
GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"


class ExportFormat(Enum):
    EDGELIST = "edgelist"
    DOT = "dot"
    GRAPHML = "graphml"
    JSON = "json"


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ExportError(OSError):
    pass


# ---------------------------------------------------------------------------
# writers


def _edgelist(g: TopologyGraph) -> str:
    d = g.dims
    lines = [f"# pegasus-topo v1 X={d.X} Y={d.Y} Z={d.Z}"]
    lines.extend(f"{a} {b} {cls.value}" for a, b, cls in g.indexed_edges())
    return "\n".join(lines) + "\n"


def _json(g: TopologyGraph) -> str:
    d = g.dims
    head = json.dumps(
        {"format": JSON_FORMAT, "version": 1, "dims": {"X": d.X, "Y": d.Y, "Z": d.Z}}
    )
    rows = ",\n".join(f"  [{a}, {b}, \"{cls.value}\"]" for a, b, cls in g.indexed_edges())
    body = f"[\n{rows}\n]" if rows else "[]"
    return head[:-1] + f', "edges": {body}}}\n'


def _dot(g: TopologyGraph) -> str:
    d = g.dims
    out = [
        "graph pegasus_topo {",
        f'  graph [X={d.X}, Y={d.Y}, Z={d.Z}];',
    ]
    for q in g.vertices():
        idx = linear_index(q, d)
        out.append(f'  {idx} [x={q.x}, y={q.y}, z={q.z}, i={q.i}, j={q.j}, k={q.k}];')
    for a, b, cls in g.indexed_edges():
        out.append(f'  {a} -- {b} [class="{cls.value}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def _graphml(g: TopologyGraph) -> str:
    d = g.dims
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<graphml xmlns="{GRAPHML_NS}">',
    ]
    for name, domain in (("X", "graph"), ("Y", "graph"), ("Z", "graph")):
        out.append(f'  <key id="{name}" for="{domain}" attr.name="{name}" attr.type="int"/>')
    for name in "xyzijk":
        out.append(f'  <key id="q{name}" for="node" attr.name="{name}" attr.type="int"/>')
    out.append('  <key id="class" for="edge" attr.name="class" attr.type="string"/>')
    out.append('  <graph id="G" edgedefault="undirected">')
    for name, value in (("X", d.X), ("Y", d.Y), ("Z", d.Z)):
        out.append(f'    <data key="{name}">{value}</data>')
    for q in g.vertices():
        data = "".join(f'<data key="q{n}">{v}</data>' for n, v in zip("xyzijk", q))
        out.append(f'    <node id="n{linear_index(q, d)}">{data}</node>')
    for a, b, cls in g.indexed_edges():
        out.append(
            f'    <edge source="n{a}" target="n{b}"><data key="class">{cls.value}</data></edge>'
        )
    out.append("  </graph>")
    out.append("</graphml>")
    return "\n".join(out) + "\n"


_WRITERS = {
    ExportFormat.EDGELIST: _edgelist,
    ExportFormat.JSON: _json,
    ExportFormat.DOT: _dot,
    ExportFormat.GRAPHML: _graphml,
}


def export(g: TopologyGraph, fmt: ExportFormat | str) -> bytes:
    return _WRITERS[ExportFormat(fmt)](g).encode("utf-8")


def export_compressed(c: CompressedGraph) -> bytes:
    d = c.dims
    edges = [
        {
            "a": list(e.a),
            "b": list(e.b),
            "kind": e.kind.value,
            "multiplicity": e.multiplicity,
            "groups": [grp.value for grp in e.groups],
        }
        for e in c.edges
    ]
    doc = {
        "format": COMPRESSED_FORMAT,
        "version": 1,
        "dims": {"X": d.X, "Y": d.Y, "Z": d.Z},
        "edges": edges,
    }
    return (json.dumps(doc, indent=1) + "\n").encode("utf-8")


def write_bytes(data: bytes, path: Union[str, Path]) -> None:
    """Write to ``path``; ``-`` means stdout."""
    if str(path) == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise ExportError(f"cannot write {path}: {exc.strerror or exc}") from exc


# ---------------------------------------------------------------------------
# readers


def _edge_class(value: str, line: int | None = None) -> EdgeClass:
    try:
        return EdgeClass(value)
    except ValueError:
        raise ParseError(f"unknown edge class {value!r}", line) from None


def _build(dims: Dims, triples, line_of=None) -> TopologyGraph:
    edges = []
    seen = set()
    for n, (a, b, cls) in enumerate(triples):
        line = line_of[n] if line_of else None
        try:
            qa, qb = from_linear(a, dims), from_linear(b, dims)
        except CoordinateError as exc:
            raise CoordinateError(f"line {line}: {exc}" if line else str(exc), exc.field) from None
        if a == b:
            raise ParseError(f"self-loop on {a}", line)
        pair = (min(a, b), max(a, b))
        if pair in seen:
            raise ParseError(f"duplicate edge {pair[0]} {pair[1]}", line)
        seen.add(pair)
        edges.append(make_edge(qa, qb, cls))
    return TopologyGraph(dims, edges)


def _dims(X, Y, Z, line: int | None = None) -> Dims:
    try:
        return Dims(int(X), int(Y), int(Z))
    except (CoordinateError, TypeError, ValueError) as exc:
        raise ParseError(f"bad dimensions: {exc}", line) from None


def parse_edgelist(data: bytes | str) -> tuple[TopologyGraph, Dims]:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("missing header", 1)
    m = HEADER_RE.match(lines[0].rstrip("\r"))
    if not m:
        raise ParseError(f"bad header {lines[0]!r}", 1)
    dims = _dims(*m.groups(), line=1)
    triples, line_of = [], []
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.rstrip("\r")
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"expected '<a> <b> <class>', got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer index in {line!r}", lineno) from None
        triples.append((a, b, _edge_class(parts[2], lineno)))
        line_of.append(lineno)
    return _build(dims, triples, line_of), dims


def _parse_json(text: str) -> TopologyGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict) or doc.get("format") != JSON_FORMAT or doc.get("version") != 1:
        raise ParseError("not a pegasus-topo v1 JSON document")
    try:
        dims = _dims(doc["dims"]["X"], doc["dims"]["Y"], doc["dims"]["Z"])
        triples = [(int(a), int(b), _edge_class(c)) for a, b, c in doc["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed JSON graph: {exc}") from None
    return _build(dims, triples)


_DOT_GRAPH_RE = re.compile(r"graph \[X=(\d+), Y=(\d+), Z=(\d+)\];")
_DOT_EDGE_RE = re.compile(r'^\s*(\d+)\s*--\s*(\d+)\s*\[class="([a-z-]+)"\];\s*$')


def _parse_dot(text: str) -> TopologyGraph:
    m = _DOT_GRAPH_RE.search(text)
    if not m:
        raise ParseError("DOT input lacks graph [X=.., Y=.., Z=..] attributes")
    dims = _dims(*m.groups())
    triples, line_of = [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if "--" not in line:
            continue
        em = _DOT_EDGE_RE.match(line)
        if not em:
            raise ParseError(f"unrecognised edge statement {line.strip()!r}", lineno)
        triples.append((int(em.group(1)), int(em.group(2)), _edge_class(em.group(3), lineno)))
        line_of.append(lineno)
    return _build(dims, triples, line_of)


def _parse_graphml(text: str) -> TopologyGraph:
    ns = {"g": GRAPHML_NS}
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise ParseError(f"invalid GraphML: {exc}", exc.position[0]) from None
    graph = root.find("g:graph", ns)
    if graph is None:
        raise ParseError("GraphML has no <graph> element")
    gdata = {el.get("key"): el.text for el in graph.findall("g:data", ns)}
    try:
        dims = _dims(gdata["X"], gdata["Y"], gdata["Z"])
    except KeyError as exc:
        raise ParseError(f"GraphML graph lacks data key {exc}") from None
    triples = []
    for el in graph.findall("g:edge", ns):
        src, dst = el.get("source", ""), el.get("target", "")
        cls_el = el.find("g:data[@key='class']", ns)
        if not (src.startswith("n") and dst.startswith("n")) or cls_el is None:
            raise ParseError(f"malformed GraphML edge {src!r} -> {dst!r}")
        try:
            triples.append((int(src[1:]), int(dst[1:]), _edge_class(cls_el.text or "")))
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed GraphML node id in {src!r} -> {dst!r}") from None
    return _build(dims, triples)


def parse(data: bytes | str, fmt: ExportFormat | str) -> TopologyGraph:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    fmt = ExportFormat(fmt)
    if fmt is ExportFormat.EDGELIST:
        return parse_edgelist(text)[0]
    if fmt is ExportFormat.JSON:
        return _parse_json(text)
    if fmt is ExportFormat.DOT:
        return _parse_dot(text)
    return _parse_graphml(text)


def parse_compressed(data: bytes | str) -> CompressedGraph:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        doc = json.loads(text)
        if doc.get("format") != COMPRESSED_FORMAT:
            raise ParseError("not a compressed-graph document")
        dims = _dims(doc["dims"]["X"], doc["dims"]["Y"], doc["dims"]["Z"])
        edges = tuple(
            CompressedEdge(
                CellCoord(*e["a"]),
                CellCoord(*e["b"]),
                CompressedKind(e["kind"]),
                int(e["multiplicity"]),
                tuple(ColorGroup(v) for v in e["groups"]),
            )
            for e in doc["edges"]
        )
    except ParseError:
        raise
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed compressed graph: {exc}") from None
    for e in edges:
        for c in (e.a, e.b):
            if not dims.contains_cell(*c):
                raise CoordinateError(f"cell {tuple(c)} outside {dims}")
    return CompressedGraph(dims, edges)


def sniff_format(data: bytes) -> str:
    """Guess the format of serialised input: an ExportFormat value or ``compressed``."""
    head = data.lstrip()[:512].decode("utf-8", errors="replace")
    if head.startswith("# pegasus-topo"):
        return ExportFormat.EDGELIST.value
    if head.startswith("<"):
        return ExportFormat.GRAPHML.value
    if head.startswith("graph"):
        return ExportFormat.DOT.value
    if head.startswith("{"):
        return "compressed" if f'"{COMPRESSED_FORMAT}"' in head else ExportFormat.JSON.value
    raise ParseError("unrecognised input format")


def read_graph(data: bytes) -> Union[TopologyGraph, CompressedGraph]:
    fmt = sniff_format(data)
    if fmt == "compressed":
        return parse_compressed(data)
    return parse(data, fmt)
