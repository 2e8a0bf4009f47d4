"""Exact rank-width, treewidth and edge expansion of small graphs, with
seeded G(n, p) experiments across the sparse and dense regimes."""

from .errors import CapacityError
from .gf2 import BitMatrix, Gf2Basis, contains, echelonize, rank, sparse_rank_lower_bound
from .graph import (
    Graph,
    GnpConfig,
    classify_component,
    complement,
    components,
    cut_matrix,
    cutrank,
    degree_stats,
    read_graph,
    sample_gnp,
    write_graph,
)
from .width import (
    RankDecomposition,
    WidthReport,
    balanced_separation,
    brute_force_rank_width,
    rank_width,
    tree_width,
    width_of_decomposition,
    width_report,
)

__version__ = "0.1.0"
