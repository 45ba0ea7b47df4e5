"""Exact Pareto-optimal decision trees for binary data.

Computes the full front of (misclassified positives, misclassified
negatives) trade-offs over all depth-bounded trees and extracts the
provably best tree for any monotonic metric such as F1, Matthews
correlation or Fowlkes-Mallows.
"""

from .dataset import (
    DataStore,
    Dataset,
    DatasetFormatError,
    FrequencyTable,
    difference_bounds,
    load_dataset,
    parse_dataset,
    serialize_dataset,
)
from .estimator import ParetoTreeClassifier
from .metrics import (
    Metric,
    MetricCounts,
    counts_from_pair,
    metric_value,
    parse_metric,
    select_best,
)
from .pareto import (
    INF,
    dominates,
    filter_upper_bound,
    front_gt,
    leaf_front,
    merge,
    nondom,
    subtract_ub,
    trivial_upper_bound,
)
from .shallow import solve_shallow
from .solver import (
    CacheEntry,
    Leaf,
    SolveConfig,
    SolveStats,
    Split,
    TreeSearch,
    apply_tree,
    evaluate_tree,
    lookahead_lb,
    similarity_lb,
    solve_frontier,
    tree_depth,
    tree_from_dict,
    tree_to_dict,
)

__version__ = "0.1.0"

__all__ = [
    "DataStore",
    "Dataset",
    "DatasetFormatError",
    "FrequencyTable",
    "difference_bounds",
    "load_dataset",
    "parse_dataset",
    "serialize_dataset",
    "ParetoTreeClassifier",
    "Metric",
    "MetricCounts",
    "counts_from_pair",
    "metric_value",
    "parse_metric",
    "select_best",
    "INF",
    "dominates",
    "filter_upper_bound",
    "front_gt",
    "leaf_front",
    "merge",
    "nondom",
    "subtract_ub",
    "trivial_upper_bound",
    "solve_shallow",
    "CacheEntry",
    "Leaf",
    "SolveConfig",
    "SolveStats",
    "Split",
    "TreeSearch",
    "apply_tree",
    "evaluate_tree",
    "lookahead_lb",
    "similarity_lb",
    "solve_frontier",
    "tree_depth",
    "tree_from_dict",
    "tree_to_dict",
    "__version__",
]
