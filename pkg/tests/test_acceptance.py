"""Exit criteria. Each test rebuilds its inputs inside the timed region."""
import time
import xml.etree.ElementTree as ET
from contextlib import contextmanager
from itertools import combinations, product
from pathlib import Path

import networkx as nx
import pytest

from oracle import brute_force_edges, brute_force_k4, to_networkx
from pegasus_topo.analysis import (
    Verdict,
    compress,
    find_k4,
    interlayer_partners,
    nonplanarity_certificate,
)
from pegasus_topo.chimera import chimera_graph
from pegasus_topo.coords import CellCoord, Dims
from pegasus_topo.graph import ColorGroup, EdgeClass
from pegasus_topo.io import ExportFormat, export, parse
from pegasus_topo.pegasus import (
    has_edge,
    interlayer_edges_general,
    interlayer_edges_grouped,
    pegasus_graph,
)
from pegasus_topo.render import COLORS, RenderSpec, RenderStyle, render_svg

acceptance = pytest.mark.acceptance


@contextmanager
def within(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.3f}s, limit {seconds}s"


def interior_cells(X, Y):
    return [CellCoord(x, y, z) for z in range(3) for y in range(1, Y - 1) for x in range(1, X - 1)]


@acceptance(1, "Chimera vertex counts 128/512/1152/2048")
def test_ac1_table_counts():
    with within(1.0):
        counts = [chimera_graph(Dims(s, s, 1)).num_vertices for s in (4, 8, 12, 16)]
    assert counts == [128, 512, 1152, 2048]


@acceptance(2, "interior Pegasus qubits have degree 15")
def test_ac2_degree_fifteen():
    with within(1.0):
        g3 = pegasus_graph(Dims(3, 3, 3))
        small = [g3.degree(q) for q in CellCoord(1, 1, 1).qubits()]
        g5 = pegasus_graph(Dims(5, 5, 3))
        big = [g5.degree(q) for cell in interior_cells(5, 5) for q in cell.qubits()]
    assert small == [15] * 8
    assert len(big) == 27 * 8
    assert set(big) == {15}


@acceptance(3, "64 edges, 8 K2,4 bundles, 6 partners, 2 doubled")
def test_ac3_bundle_structure():
    with within(1.0):
        g = pegasus_graph(Dims(5, 5, 3))
        cells = interior_cells(5, 5)
        found = {}
        for cell in cells:
            touching = [e for e in g.edges if e.cls.is_interlayer and cell in (e.a.cell, e.b.cell)]
            bundles = {}
            for e in touching:
                src, dst = (e.a, e.b) if e.b.z == (e.a.z + 1) % 3 else (e.b, e.a)
                bundles.setdefault((src.cell, src.i, src.j, dst.cell), []).append((src, dst))
            found[cell] = (touching, bundles, interlayer_partners(g, cell))
    for cell, (touching, bundles, partners) in found.items():
        assert len(touching) == 64
        assert len(bundles) == 8
        for pairs in bundles.values():
            # K2,4: both k of one (i, j) pair against a whole opposite side
            sources = {s for s, _ in pairs}
            sinks = {t for _, t in pairs}
            assert len(pairs) == 8 and len(sources) == 2 and len(sinks) == 4
            assert len({t.i for t in sinks}) == 1 and len({(s.i, s.j) for s in sources}) == 1
        assert len(partners) == 6
        assert sum(partners.values()) == 8
        assert sorted(partners.values()) == [1, 1, 1, 1, 2, 2]


@acceptance(4, "general and grouped rules agree for X,Y in 1..6")
def test_ac4_rule_equivalence():
    with within(5.0):
        results = {
            (X, Y): interlayer_edges_general(Dims(X, Y, 3)) == interlayer_edges_grouped(Dims(X, Y, 3))
            for X, Y in product(range(1, 7), repeat=2)
        }
    assert len(results) == 36
    assert all(results.values()), [k for k, ok in results.items() if not ok]


@acceptance(5, "stripping Pegasus edges leaves three Chimera layers")
def test_ac5_chimera_recovery():
    pegasus_only = {EdgeClass.PEGASUS_INTRA, *(EdgeClass.interlayer(c) for c in ColorGroup)}
    with within(1.0):
        g = pegasus_graph(Dims(5, 5, 3))
        stripped = g.without(*pegasus_only)
        base = chimera_graph(Dims(5, 5, 1))
        G = to_networkx(stripped)
        components = list(nx.connected_components(G))
    assert len(components) == 3
    reference = {(tuple(e.a), tuple(e.b), e.cls) for e in base.edges}
    for z in range(3):
        layer = {(tuple(e.a), tuple(e.b), e.cls) for e in stripped.edges if e.a.z == z}
        # identity on (x, y, i, j, k)
        moved = {(a[:2] + (0,) + a[3:], b[:2] + (0,) + b[3:], cls) for a, b, cls in layer}
        assert moved == reference
    # one component per layer
    assert sorted(tuple({q[2] for q in c}) for c in components) == [(0,), (1,), (2,)]
    assert sorted(len(c) for c in components) == [200, 200, 200]


@acceptance(6, "compressed Pegasus 5x5 non-planar, Chimera grid unknown")
def test_ac6_nonplanarity():
    oracle_m = len({(a[:3], b[:3]) for a, b in brute_force_edges(5, 5, 3, pegasus=True) if a[:3] != b[:3]})
    with within(1.0):
        pegasus_cert = nonplanarity_certificate(compress(pegasus_graph(Dims(5, 5, 3))))
        chimera_cert = nonplanarity_certificate(compress(chimera_graph(Dims(5, 5, 1))))
    assert pegasus_cert.verdict is Verdict.NON_PLANAR
    assert (pegasus_cert.n, pegasus_cert.m) == (75, oracle_m)
    assert oracle_m > 3 * 75 - 6
    assert chimera_cert.verdict is Verdict.UNKNOWN


@acceptance(7, "K4 cliques in Pegasus 1x1 match a brute-force scan")
def test_ac7_k4():
    with within(1.0):
        g = pegasus_graph(Dims(1, 1, 3))
        cliques = find_k4(g)
        brute = brute_force_k4(1, 1, 3, pegasus=True)
    assert cliques
    for quad in cliques:
        for a, b in combinations(quad, 2):
            assert has_edge(a, b, g.dims) is not None
    assert [tuple(tuple(q) for q in quad) for quad in cliques] == brute


@acceptance(8, "brute-force oracle matches the generator for X=Y in 1..3")
def test_ac8_oracle():
    with within(10.0):
        outcome = {}
        for side in (1, 2, 3):
            g = pegasus_graph(Dims(side, side, 3))
            ours = [(tuple(e.a), tuple(e.b), e.cls.value) for e in g.edges]
            theirs = sorted(
                (a, b, c) for (a, b), c in brute_force_edges(side, side, 3, pegasus=True).items()
            )
            outcome[side] = (set(ours) == set(theirs), len(ours), len(theirs))
    for side, (same, n_ours, n_theirs) in outcome.items():
        assert same, f"X=Y={side}"
        assert n_ours == n_theirs


@acceptance(9, "exports are deterministic and round-trip")
def test_ac9_determinism():
    d = Dims(2, 2, 3)
    blobs = {fmt: {export(pegasus_graph(d, workers=w), fmt) for w in (1, 2, 4, 8) for _ in range(2)}
             for fmt in ExportFormat}
    assert all(len(v) == 1 for v in blobs.values())
    golden = Path(__file__).parent / "golden" / "pegasus_2x2.edgelist"
    assert blobs[ExportFormat.EDGELIST] == {golden.read_bytes()}
    g = pegasus_graph(d)
    for fmt in (ExportFormat.EDGELIST, ExportFormat.JSON):
        back = parse(export(g, fmt), fmt)
        assert back == g
        assert [e.cls for e in back.edges] == [e.cls for e in g.edges]


@acceptance(10, "SVG element counts and group colours")
def test_ac10_render():
    svg_ns = "{http://www.w3.org/2000/svg}"
    with within(2.0):
        g = pegasus_graph(Dims(2, 2, 3))
        c = compress(g)
        docs = {
            style: render_svg(c if style is RenderStyle.COMPRESSED else g, RenderSpec(style=style, color_mode="group"))
            for style in RenderStyle
        }
    for style, svg in docs.items():
        root = ET.fromstring(svg)
        vertices = root.findall(f".//{svg_ns}circle[@class='vertex']")
        edges = root.findall(f".//{svg_ns}line[@class='edge']")
        target = c if style is RenderStyle.COMPRESSED else g
        assert (len(vertices), len(edges)) == (target.num_vertices, target.num_edges), style
        if style is RenderStyle.COMPRESSED:
            continue
        inter = [e for e in edges if EdgeClass(e.get("data-class")).is_interlayer]
        assert len(inter) == 240
        assert all(e.get("stroke") in set(COLORS.values()) for e in inter)
