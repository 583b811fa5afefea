"""Structural analytics over topology graphs.

Covers degree histograms, the cell-level compressed graph, sound
non-planarity certificates and enumeration of 4-cliques.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Hashable, Iterable, Iterator, Sequence, Union

from .coords import CellCoord, Dims, QubitCoord
from .graph import ColorGroup, EdgeClass, TopologyGraph

__all__ = [
    "CompressedKind",
    "CompressedEdge",
    "CompressedGraph",
    "Verdict",
    "CertificateKind",
    "NonplanarityCertificate",
    "degree_histogram",
    "compress",
    "nonplanarity_certificate",
    "verify_kuratowski",
    "find_k4",
    "interlayer_partners",
]

DEFAULT_SEARCH_BUDGET = 100_000


def degree_histogram(g: TopologyGraph) -> dict[int, int]:
    counts = Counter(g.degree(q) for q in g.vertices())
    return dict(sorted(counts.items()))


# ---------------------------------------------------------------------------
# compressed graph


class CompressedKind(Enum):
    GRID = "grid"
    BUNDLE = "bundle"


@dataclass(frozen=True)
class CompressedEdge:
    a: CellCoord
    b: CellCoord
    kind: CompressedKind
    multiplicity: int
    groups: tuple[ColorGroup, ...] = ()


@dataclass(frozen=True)
class CompressedGraph:
    """One vertex per K4,4 cell; one edge per grid link or per bundle pair."""

    dims: Dims
    edges: tuple[CompressedEdge, ...]
    vertices: tuple[CellCoord, ...] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.dims.cells()))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> dict[CellCoord, set[CellCoord]]:
        adj: dict[CellCoord, set[CellCoord]] = {c: set() for c in self.vertices}
        for e in self.edges:
            adj[e.a].add(e.b)
            adj[e.b].add(e.a)
        return adj

    def degree(self, cell: CellCoord) -> int:
        return sum(1 for e in self.edges if cell in (e.a, e.b))

    def neighbors(self, cell: CellCoord, kind: CompressedKind | None = None) -> set[CellCoord]:
        out = set()
        for e in self.edges:
            if kind is not None and e.kind is not kind:
                continue
            if e.a == cell:
                out.add(e.b)
            elif e.b == cell:
                out.add(e.a)
        return out

    def bundle_count(self, cell: CellCoord) -> int:
        return sum(e.multiplicity for e in self.edges if e.kind is CompressedKind.BUNDLE and cell in (e.a, e.b))


def _forward(a: QubitCoord, b: QubitCoord) -> tuple[QubitCoord, QubitCoord]:
    """Orient an inter-layer edge from layer z to layer (z+1) % 3."""
    return (a, b) if b.z == (a.z + 1) % 3 else (b, a)


def compress(g: TopologyGraph) -> CompressedGraph:
    """Collapse each cell to a vertex.

    Chimera grid links between two cells become one ``GRID`` edge. Inter-layer
    edges are grouped into K2,4 bundles keyed by the forward source cell, the
    source ``(i, j)`` and the target cell; each cell pair records how many
    bundles join it. Intra-cell edges disappear.
    """
    grid: set[tuple[CellCoord, CellCoord]] = set()
    bundles: dict[tuple[CellCoord, CellCoord], set[tuple[int, int]]] = defaultdict(set)
    for e in g.edges:
        if e.cls in (EdgeClass.CHIMERA_HORIZONTAL, EdgeClass.CHIMERA_VERTICAL):
            grid.add((e.a.cell, e.b.cell))
        elif e.cls.is_interlayer:
            src, dst = _forward(e.a, e.b)
            bundles[(src.cell, dst.cell)].add((src.i, src.j))

    edges = [CompressedEdge(a, b, CompressedKind.GRID, 1) for a, b in grid]
    for (src, dst), sides in bundles.items():
        groups = tuple(sorted((ColorGroup.for_source(i, j) for i, j in sides), key=_GROUP_ORDER.index))
        a, b = (src, dst) if src.key() < dst.key() else (dst, src)
        edges.append(CompressedEdge(a, b, CompressedKind.BUNDLE, len(sides), groups))
    edges.sort(key=lambda e: (e.a.key(), e.b.key(), e.kind.value))
    return CompressedGraph(g.dims, tuple(edges))


_GROUP_ORDER = list(ColorGroup)


def interlayer_partners(g: TopologyGraph, cell: CellCoord) -> dict[CellCoord, int]:
    """Bundle count from ``cell`` to each cell it shares inter-layer edges with."""
    per_partner: dict[CellCoord, set[tuple]] = defaultdict(set)
    for q in cell.qubits():
        for n in g.neighbors(q):
            cls = g.has_edge(q, n)
            if cls is None or not cls.is_interlayer:
                continue
            src, dst = _forward(q, n)
            per_partner[n.cell].add((src.cell, src.i, src.j))
    return {c: len(s) for c, s in sorted(per_partner.items(), key=lambda kv: kv[0].key())}


# ---------------------------------------------------------------------------
# non-planarity


class Verdict(Enum):
    NON_PLANAR = "non-planar"
    UNKNOWN = "unknown"


class CertificateKind(Enum):
    EDGE_BOUND = "edge-bound"
    K33_SUBDIVISION = "k33-subdivision"
    K5_SUBDIVISION = "k5-subdivision"


@dataclass(frozen=True)
class NonplanarityCertificate:
    verdict: Verdict
    kind: CertificateKind | None
    n: int
    m: int
    branch: tuple = ()
    paths: tuple = ()
    expansions: int = 0

    @property
    def bound(self) -> int:
        return 3 * self.n - 6

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "kind": None if self.kind is None else self.kind.value,
            "n": self.n,
            "m": self.m,
            "bound": self.bound,
            "branch": [list(v) for v in self.branch],
            "paths": [[list(v) for v in p] for p in self.paths],
            "expansions": self.expansions,
        }


Graphish = Union[TopologyGraph, CompressedGraph, "dict[Hashable, set]"]


def _simple_adjacency(g: Graphish) -> dict[Hashable, set]:
    if isinstance(g, TopologyGraph):
        return {q: set(g.neighbors(q)) for q in g.vertices()}
    if isinstance(g, CompressedGraph):
        return g.adjacency()
    return {v: set(ns) - {v} for v, ns in g.items()}


def _key(v):
    # type name first so mixed label types still sort deterministically
    return (type(v).__name__, v.key() if hasattr(v, "key") else v)


def _edge_set(adj: dict) -> set[frozenset]:
    return {frozenset((u, v)) for u, ns in adj.items() for v in ns}


def verify_kuratowski(adj: dict, branch: Sequence, paths: Sequence[Sequence], kind: CertificateKind) -> bool:
    """Check that ``paths`` realise a subdivision of K3,3 or K5 in ``adj``.

    For K3,3 the first three branch vertices form one side. Paths must be
    listed in the order produced by :func:`_branch_pairs` and be internally
    vertex-disjoint from each other and from the branch vertices.
    """
    pairs = _branch_pairs(branch, kind)
    if pairs is None or len(paths) != len(pairs) or len(set(branch)) != len(branch):
        return False
    branch_set = set(branch)
    interior_seen: set = set()
    for (u, v), path in zip(pairs, paths):
        if len(path) < 2 or path[0] != u or path[-1] != v:
            return False
        for s, t in zip(path, path[1:]):
            if t not in adj.get(s, ()):
                return False
        interior = path[1:-1]
        if len(set(interior)) != len(interior):
            return False
        for w in interior:
            if w in branch_set or w in interior_seen:
                return False
            interior_seen.add(w)
    return True


def _branch_pairs(branch: Sequence, kind: CertificateKind) -> list[tuple] | None:
    if kind is CertificateKind.K33_SUBDIVISION and len(branch) == 6:
        side_a, side_b = branch[:3], branch[3:]
        return [(a, b) for a in side_a for b in side_b]
    if kind is CertificateKind.K5_SUBDIVISION and len(branch) == 5:
        return list(combinations(branch, 2))
    return None


class _BudgetExhausted(Exception):
    pass


class _KuratowskiSearch:
    """Backtracking search for K3,3 / K5 subdivisions with an expansion cap.

    Branch candidates are visited from the highest degree down; for each
    choice, the required paths are routed one at a time by depth-first search
    that prefers neighbours closer to the target (BFS distances), backtracking
    over alternatives. Every DFS step and every branch choice costs one unit.
    """

    def __init__(self, adj: dict, budget: int) -> None:
        self.adj = {v: sorted(ns, key=_key) for v, ns in adj.items()}
        self.budget = budget
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.used > self.budget:
            raise _BudgetExhausted

    def _distances(self, target, blocked: set) -> dict:
        dist = {target: 0}
        frontier = [target]
        while frontier:
            nxt = []
            for u in frontier:
                self.tick()
                for w in self.adj[u]:
                    if w not in dist and w not in blocked:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        return dist

    def _paths(self, u, v, blocked: set) -> Iterator[list]:
        dist = self._distances(v, blocked)
        if u not in dist:
            return
        path = [u]
        on_path = {u}

        def extend(cur):
            self.tick()
            if cur == v:
                yield list(path)
                return
            options = [w for w in self.adj[cur] if w in dist and w not in on_path]
            options.sort(key=lambda w: (dist[w], _key(w)))
            for w in options:
                path.append(w)
                on_path.add(w)
                yield from extend(w)
                path.pop()
                on_path.discard(w)

        yield from extend(u)

    def _route(self, pairs: list[tuple], branch_set: set, idx: int, blocked: set, found: list) -> bool:
        if idx == len(pairs):
            return True
        u, v = pairs[idx]
        others = branch_set - {u, v}
        for p in self._paths(u, v, blocked | others):
            interior = p[1:-1]
            found.append(p)
            if self._route(pairs, branch_set, idx + 1, blocked | set(interior), found):
                return True
            found.pop()
        return False

    def _try(self, branch: tuple, kind: CertificateKind):
        self.tick()
        pairs = _branch_pairs(branch, kind)
        paths: list = []
        if self._route(pairs, set(branch), 0, set(), paths):
            return branch, tuple(tuple(p) for p in paths)
        return None

    def run(self):
        adj = self.adj
        deg3 = sorted((v for v in adj if len(adj[v]) >= 3), key=lambda v: (-len(adj[v]), _key(v)))
        deg4 = [v for v in deg3 if len(adj[v]) >= 4]
        for six in combinations(deg3, 6):
            first, rest = six[0], six[1:]
            for partners in combinations(rest, 2):
                side_a = (first,) + partners
                side_b = tuple(w for w in rest if w not in partners)
                hit = self._try(side_a + side_b, CertificateKind.K33_SUBDIVISION)
                if hit:
                    return CertificateKind.K33_SUBDIVISION, hit
        for five in combinations(deg4, 5):
            hit = self._try(five, CertificateKind.K5_SUBDIVISION)
            if hit:
                return CertificateKind.K5_SUBDIVISION, hit
        return None


def _prune_leaves(adj: dict) -> dict:
    """Drop vertices of degree < 2 repeatedly; they lie on no subdivision."""
    adj = {v: set(ns) for v, ns in adj.items()}
    stack = [v for v, ns in adj.items() if len(ns) < 2]
    while stack:
        v = stack.pop()
        if v not in adj:
            continue
        for w in adj.pop(v):
            adj[w].discard(v)
            if len(adj[w]) < 2:
                stack.append(w)
    return adj


def nonplanarity_certificate(g: Graphish, budget: int = DEFAULT_SEARCH_BUDGET) -> NonplanarityCertificate:
    """Try to prove ``g`` non-planar; never claims planarity.

    Bundle multiplicities and parallel edges are flattened first. Returns an
    edge-bound certificate when ``m > 3n - 6``, otherwise a verified
    Kuratowski subdivision if one is found within ``budget`` expansions,
    otherwise verdict ``UNKNOWN``.
    """
    adj = _simple_adjacency(g)
    n = len(adj)
    m = len(_edge_set(adj))
    if n >= 3 and m > 3 * n - 6:
        return NonplanarityCertificate(Verdict.NON_PLANAR, CertificateKind.EDGE_BOUND, n, m)

    search = _KuratowskiSearch(_prune_leaves(adj), budget)
    try:
        result = search.run()
    except _BudgetExhausted:
        result = None
    if result is not None:
        kind, (branch, paths) = result
        if verify_kuratowski(adj, branch, paths, kind):
            return NonplanarityCertificate(Verdict.NON_PLANAR, kind, n, m, branch, paths, search.used)
    return NonplanarityCertificate(Verdict.UNKNOWN, None, n, m, expansions=min(search.used, budget))


# ---------------------------------------------------------------------------
# cliques


def find_k4(g: TopologyGraph, limit: int | None = None) -> list[tuple[QubitCoord, ...]]:
    """Enumerate 4-cliques in linear order, stopping after ``limit`` of them.

    Each clique is returned as an increasing tuple of qubits and is checked
    pairwise against ``g.has_edge`` before it is emitted.
    """
    if limit is not None and limit <= 0:
        return []
    higher = {q: [w for w in g.neighbors(q) if q.key() < w.key()] for q in g.vertices()}
    higher_set = {q: set(ws) for q, ws in higher.items()}
    found: list[tuple[QubitCoord, ...]] = []
    for a in g.vertices():
        for b in higher[a]:
            common_ab = [w for w in higher[b] if w in higher_set[a]]
            for ci, c in enumerate(common_ab):
                for d in common_ab[ci + 1:]:
                    if d not in higher_set[c]:
                        continue
                    quad = (a, b, c, d)
                    if not all(g.has_edge(u, v) for u, v in combinations(quad, 2)):
                        raise AssertionError(f"unsound clique {quad}")
                    found.append(quad)
                    if limit is not None and len(found) >= limit:
                        return found
    return found


def count_edges(adj: dict) -> int:
    return len(_edge_set(adj))


def flatten(edges: Iterable[tuple]) -> dict:
    """Adjacency sets from an iterable of vertex pairs."""
    adj: dict = defaultdict(set)
    for u, v in edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return dict(adj)
