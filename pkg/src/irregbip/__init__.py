"""Spectral radius of irregular bipartite graphs: extremal families, bounds and exhaustive search."""

from .graph import Bipartition, DisconnectedGraphError, Graph, GraphError, bipartition, distance
from .canon import canonical_form, is_isomorphic
from .formats import graph6_decode, graph6_encode, read_edge_list, write_edge_list
from .constructions import b_graph, complete_bipartite, h_graph, path
from .spectral import SpectralResult, spectral_radius
from .enumeration import SearchSpec, extremal_search, generate

__version__ = "0.1.0"
