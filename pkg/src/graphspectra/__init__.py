"""Compare graph spectra across representation matrices.

Builds the adjacency, unnormalised Laplacian and random-walk normalised
Laplacian of a graph, relates their spectra through affine transforms,
evaluates closed-form bounds on eigenvalue and normalised-eigengap
differences driven by the degree extremes, and demonstrates the impact
of the representation choice via spectral clustering.
"""

from .bounds import (
    BoundSet,
    CrossoverReport,
    GapBoundSet,
    GapDifferences,
    MatrixPair,
    PairDifferences,
    PolyMapReport,
    Region,
    RegionInfo,
    Transform,
    TransformParams,
    WeylReport,
    apply_transform,
    classify_region,
    detect_maximal_crossover,
    eigenvalue_bound_set,
    gap_bound_set,
    gap_differences,
    mapped_support,
    pair_differences,
    polynomial_spectrum_map,
    transform_params,
    weyl_check,
)
from .clustering import (
    ClusterComparison,
    ClusteringResult,
    Embedding,
    cluster,
    compare_clusterings,
    kmeans,
    spectral_embed,
)
from .graphs import (
    ClassTag,
    ComponentLabeling,
    DegreeSummary,
    Graph,
    GraphFormatError,
    class_tag,
    connected_components,
    degree_summary,
    disjoint_union,
    gen_bipartite_b,
    gen_complete,
    gen_graph_c,
    gen_star,
    is_d_regular,
    load_edge_list,
    load_pajek,
)
from .spectra import (
    EigenPairs,
    EigensolverError,
    RepMatrix,
    RepresentationKind,
    Spectrum,
    UndefinedRepresentationError,
    build_matrix,
    eig_sym,
    eigensystem,
    normalized_eigengaps,
    spectral_support,
    spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "BoundSet",
    "ClassTag",
    "ClusterComparison",
    "ClusteringResult",
    "ComponentLabeling",
    "CrossoverReport",
    "DegreeSummary",
    "EigenPairs",
    "EigensolverError",
    "Embedding",
    "GapBoundSet",
    "GapDifferences",
    "Graph",
    "GraphFormatError",
    "MatrixPair",
    "PairDifferences",
    "PolyMapReport",
    "Region",
    "RegionInfo",
    "RepMatrix",
    "RepresentationKind",
    "Spectrum",
    "Transform",
    "TransformParams",
    "UndefinedRepresentationError",
    "WeylReport",
    "apply_transform",
    "build_matrix",
    "class_tag",
    "classify_region",
    "cluster",
    "compare_clusterings",
    "connected_components",
    "degree_summary",
    "detect_maximal_crossover",
    "disjoint_union",
    "eig_sym",
    "eigensystem",
    "eigenvalue_bound_set",
    "gap_bound_set",
    "gap_differences",
    "gen_bipartite_b",
    "gen_complete",
    "gen_graph_c",
    "gen_star",
    "is_d_regular",
    "kmeans",
    "load_edge_list",
    "load_pajek",
    "mapped_support",
    "normalized_eigengaps",
    "pair_differences",
    "polynomial_spectrum_map",
    "spectral_embed",
    "spectral_support",
    "spectrum",
    "transform_params",
    "weyl_check",
]
