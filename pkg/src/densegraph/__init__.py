"""Analysis toolkit for small, dense undirected graphs.

Build a graph from an edge list, compare its structural indices against a
seeded random-graph baseline, extract the rich club from the degree-ordered
density profile, partition with three community algorithms and intersect
them into stable communities, and place everything on a dissimilarity-based
hemicycle layout.  The ``densegraph`` CLI exposes the same pipeline.
"""

from ._version import __version__
from .community import (
    Dendrogram,
    FastGreedy,
    Group,
    GroupSummary,
    Partition,
    RemovalAnalysis,
    SpectralPartition,
    Walktrap,
    fast_greedy,
    make_partition,
    modularity,
    partition_labels,
    remove_and_partition,
    spectral_partition,
    stable_communities,
    walktrap,
)
from .ensemble import EnsembleSummary, ErParams, ensemble_summary, sample_er
from .errors import (
    DegenerateInputError,
    EdgeListParseError,
    EigenSolverError,
    GraphAnalysisError,
    IsolatedVertexError,
    NonEuclideanInputError,
    UndefinedMetricError,
)
from .graph import (
    EdgeList,
    Graph,
    connected_components,
    graph_from_edge_list,
    induced_subgraph,
    load_graph,
    parse_edge_list,
    read_edge_list,
    read_registry,
    to_edge_list_text,
    to_registry_text,
)
from .hemicycle import (
    DissimilarityMatrix,
    Embedding,
    GramMatrix,
    HemicycleEmbedding,
    HemicycleLayout,
    angular_coords,
    czekanovski_dice,
    gram_from_distances,
    hemicycle_layout,
    mean_distance_to_club,
    principal_coordinates,
    project_out_variable,
    radial_coords,
)
from .metrics import (
    CentralityScores,
    ClusteringCoefficients,
    ComponentPolicy,
    DistanceTable,
    PathMetrics,
    StructuralIndices,
    all_pairs_distances,
    betweenness_fractions,
    centralities,
    centralization,
    clustering,
    density,
    path_metrics,
    structural_summary,
)
from .richclub import (
    CentralityByDegreeRow,
    ProfileRow,
    RichClubProfile,
    RichClubResult,
    centrality_by_degree_report,
    degree_order,
    detect_rich_club,
    rich_club_profile,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
