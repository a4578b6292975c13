"""Decision procedures, with checkable certificates, for structural properties
of graph C*-algebras: AF-ness, pure infiniteness, stability, unital
quotients, ideal lattices, graph-traces and Markov-shift contraction."""

__version__ = "0.1.0"

from .graph import DirectedGraph, Edge, GraphError, Path, strongly_connected_components  # noqa: E402
from .presentations import (  # noqa: E402
    AdjacencyMatrix, ParseError, PeriodicPresentation, graph_of_matrix, parse, realize_truncation,
)
from .verdict import Value, Verdict  # noqa: E402
from .ideals import enumerate_hereditary_saturated, quotient_graph  # noqa: E402
from .classify import is_af, is_purely_infinite, properly_infinite_vertex, torus_corners  # noqa: E402
from .traces import bounded_graph_trace, has_unital_quotient, is_stable, path_count_identity, s0_subgraph  # noqa: E402
from .periodic import (  # noqa: E402
    left_infinite_vertices, mean_cycles, periodic_is_purely_infinite, periodic_is_stable, shift_quotient,
)
from .shiftspace import Cylinder, contraction_witness, cylinder_compare, markov_classify, shift_image  # noqa: E402

__all__ = [
    "AdjacencyMatrix", "Cylinder", "DirectedGraph", "Edge", "GraphError", "ParseError", "Path",
    "PeriodicPresentation", "Value", "Verdict", "bounded_graph_trace", "contraction_witness",
    "cylinder_compare", "enumerate_hereditary_saturated", "graph_of_matrix", "has_unital_quotient",
    "is_af", "is_purely_infinite", "is_stable", "left_infinite_vertices", "markov_classify", "mean_cycles",
    "parse", "path_count_identity", "periodic_is_purely_infinite", "periodic_is_stable",
    "properly_infinite_vertex", "quotient_graph", "realize_truncation", "s0_subgraph", "shift_image",
    "shift_quotient", "strongly_connected_components", "torus_corners",
]
