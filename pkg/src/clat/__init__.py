"""Clique-inserted lattices and graphs.

Graph transforms (line graph, subdivision, clique-insertion), spectra and
energy, Kirchhoff index, exact spanning-tree and dimer counts, bulk
lattice limits, and LPS/Chiu Ramanujan Cayley graphs.
"""

from .errors import ClatError, ComputationError, ValidationError
from .graph import (
    Graph,
    build_graph,
    clique_insert,
    graph_predicates,
    iterate_clique_insert,
    line_graph,
    read_edge_list,
    subdivision,
    write_edge_list,
)
from .spectral import Spectrum, adjacency_spectrum, graph_energy, laplacian_spectrum

__all__ = [
    "ClatError",
    "ComputationError",
    "ValidationError",
    "Graph",
    "build_graph",
    "clique_insert",
    "graph_predicates",
    "iterate_clique_insert",
    "line_graph",
    "read_edge_list",
    "subdivision",
    "write_edge_list",
    "Spectrum",
    "adjacency_spectrum",
    "graph_energy",
    "laplacian_spectrum",
]
