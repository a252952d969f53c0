"""Unmatched nodes, clustering and link addition for undirected networks."""

from netmatch._core import (
    AugmentationPlan,
    Contraction,
    Graph,
    InfeasibleLinkCount,
    MatchResult,
    TripletCounts,
    analyze,
    count_triplets,
    deficiency,
    find_contractions,
    generate,
    global_clustering,
    hall_ore_deficiency,
    load_edge_list,
    maximum_matching,
    max_addable_links,
    reduce_unmatched,
    run_observability,
    save_edge_list,
    spectral_radius,
    sweep,
    table1,
)

__all__ = [
    "AugmentationPlan",
    "Contraction",
    "Graph",
    "InfeasibleLinkCount",
    "MatchResult",
    "TripletCounts",
    "analyze",
    "count_triplets",
    "deficiency",
    "find_contractions",
    "generate",
    "global_clustering",
    "hall_ore_deficiency",
    "load_edge_list",
    "maximum_matching",
    "max_addable_links",
    "reduce_unmatched",
    "run_observability",
    "save_edge_list",
    "spectral_radius",
    "sweep",
    "table1",
]
