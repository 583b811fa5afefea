"""Chimera and Pegasus qubit-connectivity graphs.

>>> from pegasus_topo import Dims, pegasus_graph
>>> g = pegasus_graph(Dims(2, 2, 3))
>>> g.num_vertices, g.num_edges
(96, 528)
"""
from .analysis import (
    CompressedGraph,
    NonplanarityCertificate,
    Verdict,
    compress,
    degree_histogram,
    find_k4,
    nonplanarity_certificate,
)
from .chimera import chimera_graph, chimera_horizontal_edges, chimera_vertical_edges, k44_edges
from .coords import (
    CellCoord,
    CoordinateError,
    Dims,
    QubitCoord,
    UnsupportedTopologyError,
    from_linear,
    linear_index,
    validate,
)
from .graph import ColorGroup, Edge, EdgeClass, TopologyGraph
from .io import ExportFormat, ParseError, export, parse, parse_edgelist
from .pegasus import (
    INTERLAYER_RULES,
    has_edge,
    interlayer_edges_general,
    interlayer_edges_grouped,
    pegasus_graph,
    pegasus_intracell_edges,
    rules_equivalent,
)
from .render import ColorMode, RenderSpec, RenderStyle, render_svg

__version__ = "0.1.0"
