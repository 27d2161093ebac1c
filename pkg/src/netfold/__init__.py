"""Exact enumeration and ranking of optimal unfolding nets of polyhedral shells.

The pipeline: validate a shell (`PolyhedronSpec`), build its vertex graph
(`build_shell_graph`), enumerate every optimal cut (`enumerate_mlsts`, or
`enumerate_hole_cuts` for shells with a hole), deduplicate under the graph's
automorphism group (`dedupe_cuts`), unfold each class to a planar net
(`unfold`), rank by radius of gyration (`rank_nets`), and select the first
non-overlapping net (`select_optimal_net`).  `enumerate_interiors` with
`count_net_classes` counts classes exactly without materializing cut lists.
"""

from .analysis import (
    ShellStatistics,
    build_statistics_table,
    compute_statistics,
    estimate_comparison,
    leaf_estimate,
    leaf_estimate_v,
    mlst_ratio_estimate,
    vertex_estimate,
)
from .catalog import CATALOG, CatalogEntry, builtin, catalog_entry, catalog_names
from .errors import (
    BudgetExceededError,
    FallbackExhaustedError,
    MissingGeometryError,
    NetfoldError,
    NonManifoldError,
    ValidationError,
)
from .geometry import (
    NetLayout,
    RankedNet,
    centroid_and_rg,
    check_overlap,
    rank_nets,
    select_optimal_net,
    unfold,
    vertex_connections,
)
from .holes import HoleSpec, enumerate_hole_cuts, hole_spec, remove_faces
from .io import load_polyhedron, save_polyhedron
from .mlst import (
    InteriorResult,
    MlstResult,
    count_labeled_cuts,
    enumerate_interiors,
    enumerate_mlsts,
)
from .polyhedra import PolyhedronSpec, validate_polyhedron
from .shellgraph import (
    ShellGraph,
    build_face_graph,
    build_shell_graph,
    count_spanning_trees,
    enumerate_spanning_trees,
)
from .svg import export_svg
from .symmetry import (
    AutomorphismGroup,
    CanonicalCut,
    canonical_cut,
    count_net_classes,
    dedupe_cuts,
    estimate_net_count,
    find_automorphisms,
)

__version__ = "0.1.0"

__all__ = [
    "AutomorphismGroup",
    "BudgetExceededError",
    "CATALOG",
    "CanonicalCut",
    "CatalogEntry",
    "FallbackExhaustedError",
    "HoleSpec",
    "InteriorResult",
    "MissingGeometryError",
    "MlstResult",
    "NetLayout",
    "NetfoldError",
    "NonManifoldError",
    "PolyhedronSpec",
    "RankedNet",
    "ShellGraph",
    "ShellStatistics",
    "ValidationError",
    "build_face_graph",
    "build_shell_graph",
    "build_statistics_table",
    "builtin",
    "canonical_cut",
    "catalog_entry",
    "catalog_names",
    "centroid_and_rg",
    "check_overlap",
    "compute_statistics",
    "count_labeled_cuts",
    "count_net_classes",
    "count_spanning_trees",
    "dedupe_cuts",
    "enumerate_hole_cuts",
    "enumerate_interiors",
    "enumerate_mlsts",
    "enumerate_spanning_trees",
    "estimate_comparison",
    "estimate_net_count",
    "export_svg",
    "find_automorphisms",
    "hole_spec",
    "leaf_estimate",
    "leaf_estimate_v",
    "load_polyhedron",
    "mlst_ratio_estimate",
    "rank_nets",
    "remove_faces",
    "save_polyhedron",
    "select_optimal_net",
    "unfold",
    "validate_polyhedron",
    "vertex_connections",
    "vertex_estimate",
]
