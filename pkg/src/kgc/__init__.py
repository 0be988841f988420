"""Additive-approximation k-geodesic centers of connected unweighted graphs,
with exact desk-scale oracles and hyperbolicity measurement."""

from .graph_core import (
    CapExceededError,
    DELTA_VERTEX_CAP,
    DistanceMatrix,
    Graph,
    GraphFormatError,
    GraphValidationError,
    HalfInteger,
    SplitMix64,
    apsp,
    cycle_graph,
    four_point_delta,
    generate,
    grid_graph,
    gromov_product,
    load_graph,
    path_graph,
    random_connected,
    random_tree,
    serialize_graph,
    star_graph,
    subdivide,
    tau_hat_from_delta,
)
from .geodesics import (
    VertexPath,
    enumerate_geodesics,
    exists_covering_rpath,
    family_eccentricity,
    is_isometric,
    path_through,
    shortest_path,
)
from .rooted_cover import (
    PackingWitness,
    RootedOutcome,
    RootedSolution,
    best_root,
    cover_or_packing,
    min_radius_for_root,
    scan_root,
    verify_packing,
)
from .shallow_pairing import (
    Pairing,
    fiber,
    find_shallow_pairing,
    min_gamma_pairing,
    pairing_distance,
    pairing_graph,
    paths_of_pairing,
    perfect_matching,
    total_distance,
)
from .solver import BoundReport, SolveOptions, SolveResult, build_profile, solve, solve_tree
from .oracle import (
    OracleCaps,
    OracleResult,
    check_rooted_relaxation,
    check_subdivision_lemma,
    exact_optimum,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceededError",
    "DELTA_VERTEX_CAP",
    "DistanceMatrix",
    "Graph",
    "GraphFormatError",
    "GraphValidationError",
    "HalfInteger",
    "SplitMix64",
    "apsp",
    "cycle_graph",
    "four_point_delta",
    "generate",
    "grid_graph",
    "gromov_product",
    "load_graph",
    "path_graph",
    "random_connected",
    "random_tree",
    "serialize_graph",
    "star_graph",
    "subdivide",
    "tau_hat_from_delta",
    "VertexPath",
    "enumerate_geodesics",
    "exists_covering_rpath",
    "family_eccentricity",
    "is_isometric",
    "path_through",
    "shortest_path",
    "PackingWitness",
    "RootedOutcome",
    "RootedSolution",
    "best_root",
    "cover_or_packing",
    "min_radius_for_root",
    "scan_root",
    "verify_packing",
    "Pairing",
    "fiber",
    "find_shallow_pairing",
    "min_gamma_pairing",
    "pairing_distance",
    "pairing_graph",
    "paths_of_pairing",
    "perfect_matching",
    "total_distance",
    "BoundReport",
    "SolveOptions",
    "SolveResult",
    "build_profile",
    "solve",
    "solve_tree",
    "OracleCaps",
    "OracleResult",
    "check_rooted_relaxation",
    "check_subdivision_lemma",
    "exact_optimum",
]
