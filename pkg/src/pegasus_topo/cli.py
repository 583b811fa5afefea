"""Command-line driver.

Exit codes: 0 success, 1 failed check, 2 usage error, 3 I/O or input error.
Paths may be ``-`` for stdin/stdout.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path
from typing import Sequence

from . import analysis, io
from .analysis import CompressedGraph
from .chimera import chimera_graph
from .coords import CoordinateError, Dims, linear_index
from .graph import TopologyGraph
from .pegasus import pegasus_graph, rules_equivalent
from .render import ColorMode, RenderError, RenderSpec, RenderStyle, render_svg

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

ANALYZE_SCHEMA = "analyze/1"


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pegasus-topo",
        description="Generate, analyse and draw Chimera and Pegasus qubit graphs.",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    gen = sub.add_parser("generate", help="build a graph and write it out")
    gen.add_argument("--graph", choices=("chimera", "pegasus"), required=True)
    gen.add_argument("--x", type=_positive, required=True)
    gen.add_argument("--y", type=_positive, required=True)
    gen.add_argument("--z", type=int, choices=(1, 3))
    gen.add_argument("--format", choices=[f.value for f in io.ExportFormat], default="edgelist")
    gen.add_argument("--out", default="-")

    ana = sub.add_parser("analyze", help="print a JSON report about a graph file")
    ana.add_argument("--in", dest="inp", required=True)
    ana.add_argument("--degrees", action="store_true")
    ana.add_argument("--compress", action="store_true")
    ana.add_argument("--planarity", action="store_true")
    ana.add_argument("--find-k4", dest="find_k4", type=_nonnegative, metavar="LIMIT")

    chk = sub.add_parser("check-rules", help="compare both inter-layer rule forms")
    chk.add_argument("--x", type=_positive, required=True)
    chk.add_argument("--y", type=_positive, required=True)

    ren = sub.add_parser("render", help="draw a graph file as SVG")
    ren.add_argument("--in", dest="inp", required=True)
    ren.add_argument("--style", choices=[s.value for s in RenderStyle], required=True)
    ren.add_argument("--tilted", action="store_true")
    ren.add_argument("--colors", choices=[c.value for c in ColorMode], default="group")
    ren.add_argument("--out", default="-")

    con = sub.add_parser("convert", help="re-encode a graph file")
    con.add_argument("--in", dest="inp", required=True)
    con.add_argument("--format", choices=[f.value for f in io.ExportFormat] + ["compressed"], required=True)
    con.add_argument("--out", default="-")
    return parser


def _read(path: str):
    try:
        data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return io.read_graph(data)
    except (io.ParseError, CoordinateError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _read_full(path: str) -> TopologyGraph:
    g = _read(path)
    if not isinstance(g, TopologyGraph):
        raise UsageError(f"{path} holds a compressed graph; this command needs a full qubit graph")
    return g


def _generate(args) -> int:
    if args.graph == "pegasus":
        if args.z not in (None, 3):
            raise UsageError("pegasus needs --z 3")
        g = pegasus_graph(Dims(args.x, args.y, 3))
    else:
        g = chimera_graph(Dims(args.x, args.y, args.z or 1))
    io.write_bytes(io.export(g, args.format), args.out)
    return EXIT_OK


def _dims_dict(d: Dims) -> dict:
    return {"X": d.X, "Y": d.Y, "Z": d.Z}


def _compressed_summary(c: CompressedGraph) -> dict:
    bundle_edges = [e for e in c.edges if e.kind is analysis.CompressedKind.BUNDLE]
    adj = c.adjacency()
    return {
        "vertices": c.num_vertices,
        "edges": c.num_edges,
        "grid_edges": c.num_edges - len(bundle_edges),
        "bundle_edges": len(bundle_edges),
        "bundles": sum(e.multiplicity for e in bundle_edges),
        "double_bundle_edges": sum(1 for e in bundle_edges if e.multiplicity == 2),
        "degree_histogram": {str(k): v for k, v in sorted(
            Counter(len(ns) for ns in adj.values()).items())},
    }


def _analyze(args) -> int:
    g = _read(args.inp)
    report: dict = {"schema": ANALYZE_SCHEMA, "dims": _dims_dict(g.dims)}
    if isinstance(g, CompressedGraph):
        if args.degrees or args.compress or args.find_k4 is not None:
            raise UsageError("--degrees, --compress and --find-k4 need a full qubit graph")
        report["graph"] = "compressed"
        report["vertices"] = g.num_vertices
        report["edges"] = g.num_edges
        if args.planarity:
            report["planarity"] = {"compressed": analysis.nonplanarity_certificate(g).to_dict()}
    else:
        report["graph"] = "pegasus" if g.is_pegasus else "chimera"
        report["vertices"] = g.num_vertices
        report["edges"] = g.num_edges
        report["edge_classes"] = {cls.value: n for cls, n in sorted(
            g.class_counts().items(), key=lambda kv: kv[0].value)}
        compressed = analysis.compress(g) if (args.compress or args.planarity) else None
        if args.degrees:
            report["degrees"] = {str(k): v for k, v in analysis.degree_histogram(g).items()}
        if args.compress:
            report["compressed"] = _compressed_summary(compressed)
        if args.planarity:
            report["planarity"] = {
                "full": analysis.nonplanarity_certificate(g).to_dict(),
                "compressed": analysis.nonplanarity_certificate(compressed).to_dict(),
            }
        if args.find_k4 is not None:
            cliques = analysis.find_k4(g, args.find_k4)
            report["k4"] = {
                "limit": args.find_k4,
                "found": len(cliques),
                "cliques": [[linear_index(q, g.dims) for q in quad] for quad in cliques],
            }
    text = json.dumps(report, indent=2) + "\n"
    io.write_bytes(text.encode("utf-8"), "-")
    return EXIT_OK


def _check_rules(args) -> int:
    result = rules_equivalent(Dims(args.x, args.y, 3))
    print(result.report())
    return EXIT_OK if result.equivalent else EXIT_CHECK_FAILED


def _render(args) -> int:
    g = _read(args.inp)
    spec = RenderSpec(style=args.style, tilted_lattice=args.tilted, color_mode=args.colors)
    try:
        svg = render_svg(g, spec)
    except RenderError as exc:
        raise UsageError(str(exc)) from None
    io.write_bytes(svg.encode("utf-8"), args.out)
    return EXIT_OK


def _convert(args) -> int:
    if args.format == "compressed":
        g = _read(args.inp)
        if isinstance(g, TopologyGraph):
            g = analysis.compress(g)
        io.write_bytes(io.export_compressed(g), args.out)
        return EXIT_OK
    g = _read_full(args.inp)
    io.write_bytes(io.export(g, args.format), args.out)
    return EXIT_OK


COMMANDS = {
    "generate": _generate,
    "analyze": _analyze,
    "check-rules": _check_rules,
    "render": _render,
    "convert": _convert,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"pegasus-topo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, io.ExportError) as exc:
        print(f"pegasus-topo: error: {exc}", file=sys.stderr)
        return EXIT_IO


run = main

if __name__ == "__main__":
    sys.exit(main())
