"""Graph representation and structural machinery."""

from .bitset import VertexSet, iter_bits, mask_of, members, popcount
from .chordal import (
    CliqueTree,
    central_bag,
    clique_tree,
    component_separators,
    is_chordal,
    is_minimal_separator,
    is_minimal_triangulation,
    is_pmc,
    minimal_triangulation,
    weighted_central_bag,
)
from .core import (
    Graph,
    WeightedGraph,
    closed_neighborhood,
    connected_components,
    induced_subgraph,
    open_neighborhood,
    pairwise_distance_at_least,
    second_closed_neighborhood,
)
from .nuke import Measure, NukeParams, best_hitting_vertex, is_nuke, minimize_nuke
from .patterns import (
    InducedPath,
    PatternGraph,
    contains_induced,
    e_graph,
    find_induced_path,
    is_pk_free,
)

__all__ = [
    "VertexSet", "iter_bits", "mask_of", "members", "popcount",
    "CliqueTree", "central_bag", "clique_tree", "component_separators",
    "is_chordal", "is_minimal_separator", "is_minimal_triangulation", "is_pmc",
    "minimal_triangulation", "weighted_central_bag",
    "Graph", "WeightedGraph", "closed_neighborhood", "connected_components",
    "induced_subgraph", "open_neighborhood", "pairwise_distance_at_least",
    "second_closed_neighborhood",
    "Measure", "NukeParams", "best_hitting_vertex", "is_nuke", "minimize_nuke",
    "InducedPath", "PatternGraph", "contains_induced", "e_graph",
    "find_induced_path", "is_pk_free",
]
