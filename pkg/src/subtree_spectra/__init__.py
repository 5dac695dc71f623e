"""Exact subtree polynomials of trees and the geometry of their roots."""

from .errors import (
    BudgetExhausted,
    CounterexampleFound,
    InternalInvariantViolation,
    InvalidParameters,
    MalformedLine,
    NoConvergence,
    NotATree,
    OrderOutOfRange,
    OrderTooLargeForOracle,
    OverflowAtPrecision,
    SubtreeSpectraError,
    VertexOutOfRange,
)
from .poly_core import ExactPolynomial
from .tree_model import (
    FamilySpec,
    Forest,
    Tree,
    build_family,
    canonical_code,
    delete_vertex,
    parse_edge_list,
)
from .subtree_engine import (
    SubtreeProfile,
    all_local_polynomials,
    brute_force_polynomial,
    closed_form,
    forest_polynomial,
    local_polynomial,
    max_independent_set,
    profile,
    subtree_polynomial,
)
from .tree_enum import (
    count_free_trees,
    enumerate_free_trees,
    prufer_dedup_oracle,
    random_tree,
)
from .root_solver import (
    RegionPredicate,
    RootSet,
    classify,
    find_roots,
    global_disk,
    max_modulus,
    order_annulus,
    order_disk,
    real_interval,
    real_roots_in,
    refine_extended,
)
from .analysis import (
    ClosureTarget,
    ClosureWitness,
    ScanReport,
    approximate_target_root,
    closure_parameter,
    closure_root_map,
    scan_order,
    spider_real_root,
    verify_local_vs_deleted,
    verify_root_free_intervals,
)

__version__ = "0.1.0"
