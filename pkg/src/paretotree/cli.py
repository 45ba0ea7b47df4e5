"""Command-line interface.

Subcommands: ``frontier`` (full Pareto front), ``optimize`` (metric-best
tree), ``tune`` (cross-validated depth selection) and ``oracle-check``
(randomised self-test against the exhaustive oracle). Reports go to
stdout as JSON, diagnostics to stderr. Exit codes: 0 success, 1 dataset
errors, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .dataset import Dataset, DatasetFormatError, load_dataset
from .metrics import METRIC_TOKENS, Metric, counts_from_pair, metric_value, parse_metric, select_best
from .oracle import brute_frontier, random_dataset
from .solver import SolveConfig, TreeSearch, evaluate_tree, tree_to_dict


def _dataset_summary(path: str, data: Dataset) -> dict:
    return {
        "path": path,
        "instances": len(data),
        "positives": data.n_pos,
        "negatives": data.n_neg,
        "features": data.n_features,
    }


def _emit(report: dict) -> None:
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _metric_arg(token: str) -> Metric:
    return parse_metric(token)


def cmd_frontier(args) -> int:
    data = load_dataset(args.dataset)
    search = TreeSearch(SolveConfig.from_disabled(args.depth, args.disable))
    start = time.perf_counter()
    front = search.frontier(data)
    wall_ms = (time.perf_counter() - start) * 1000.0
    _emit(
        {
            "dataset": _dataset_summary(args.dataset, data),
            "config": {"depth": args.depth, "disabled": sorted(args.disable)},
            "frontier": [[int(a), int(b)] for a, b in front],
            "wall_ms": round(wall_ms, 3),
            "counters": {
                "nodes_expanded": search.stats.nodes_expanded,
                "cache_hits": search.stats.cache_hits,
            },
        }
    )
    return 0


def cmd_optimize(args) -> int:
    data = load_dataset(args.dataset)
    search = TreeSearch(SolveConfig.from_disabled(args.depth, args.disable))
    start = time.perf_counter()
    front = search.frontier(data)
    point, value = select_best(front, args.metric, data.n_pos, data.n_neg)
    tree = search.reconstruct(data, args.depth, point)
    wall_ms = (time.perf_counter() - start) * 1000.0
    _emit(
        {
            "dataset": _dataset_summary(args.dataset, data),
            "config": {
                "depth": args.depth,
                "metric": args.metric.token,
                "disabled": sorted(args.disable),
            },
            "frontier": [[int(a), int(b)] for a, b in front],
            "selected": {"point": [int(point[0]), int(point[1])], "value": value},
            "tree": tree_to_dict(tree),
            "wall_ms": round(wall_ms, 3),
            "counters": {
                "nodes_expanded": search.stats.nodes_expanded,
                "cache_hits": search.stats.cache_hits,
            },
        }
    )
    return 0


def stratified_folds(data: Dataset, k: int, seed: int) -> list[np.ndarray]:
    """Deterministic stratified partition into ``k`` folds.

    Each class is shuffled once and dealt round-robin, so fold class
    proportions match the dataset up to the unavoidable remainder.
    """
    rng = np.random.default_rng(seed)
    y = data.store.y
    pos_idx = np.flatnonzero(y == 1)
    neg_idx = np.flatnonzero(y == 0)
    rng.shuffle(pos_idx)
    rng.shuffle(neg_idx)
    return [np.concatenate((pos_idx[i::k], neg_idx[i::k])) for i in range(k)]


def cmd_tune(args) -> int:
    data = load_dataset(args.dataset)
    k = args.folds
    if min(data.n_pos, data.n_neg) < k:
        print(
            f"error: {k} folds exceed the minority class size {min(data.n_pos, data.n_neg)}",
            file=sys.stderr,
        )
        return 2
    folds = stratified_folds(data, k, args.seed)
    store = data.store
    all_idx = np.arange(store.n_instances)
    metric = args.metric

    per_depth = []
    for depth in range(args.max_depth + 1):
        scores = []
        for test_idx in folds:
            train_idx = np.setdiff1d(all_idx, test_idx)
            train = Dataset.from_indices(store, train_idx)
            test = Dataset.from_indices(store, test_idx)
            search = TreeSearch(SolveConfig(max_depth=depth))
            front = search.frontier(train, depth)
            point, _ = select_best(front, metric, train.n_pos, train.n_neg)
            tree = search.reconstruct(train, depth, point)
            pair = evaluate_tree(tree, test)
            scores.append(metric_value(metric, counts_from_pair(pair, test.n_pos, test.n_neg)))
        per_depth.append(
            {
                "depth": depth,
                "fold_scores": scores,
                "mean": sum(scores) / len(scores),
            }
        )

    means = [d["mean"] for d in per_depth]
    if metric.direction == "minimize":
        best_depth = min(range(len(means)), key=lambda i: (means[i], i))
    else:
        best_depth = max(range(len(means)), key=lambda i: (means[i], -i))
    _emit(
        {
            "dataset": _dataset_summary(args.dataset, data),
            "config": {
                "max_depth": args.max_depth,
                "folds": k,
                "metric": metric.token,
                "seed": args.seed,
            },
            "depths": per_depth,
            "best_depth": best_depth,
        }
    )
    return 0


def cmd_oracle_check(args) -> int:
    rng = np.random.default_rng(args.seed)
    failures = []
    for case in range(args.cases):
        data = random_dataset(rng, args.max_instances, args.max_features)
        depth = int(rng.integers(0, args.max_depth + 1))
        search = TreeSearch(SolveConfig(max_depth=depth))
        got = search.frontier(data, depth)
        expected = brute_frontier(data, depth)
        if not np.array_equal(got, expected):
            failures.append(case)
    _emit(
        {
            "cases": args.cases,
            "seed": args.seed,
            "failures": len(failures),
            "failed_cases": failures,
        }
    )
    return 0 if not failures else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paretotree",
        description="Exact Pareto-optimal decision trees on binary datasets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_disable(p):
        p.add_argument(
            "--disable",
            action="append",
            default=[],
            choices=sorted(SolveConfig.DISABLE_TOKENS),
            help="switch off one search acceleration (repeatable); "
            "A: sibling upper bounding, B: infeasibility caching, "
            "C: lookahead lower bound, D: similarity lower bound, "
            "depth2: frequency-count shallow solver",
        )

    p = sub.add_parser("frontier", help="compute the full Pareto front")
    p.add_argument("dataset", help="label-first 0/1 dataset file")
    p.add_argument("--depth", type=int, required=True, help="maximum tree depth")
    add_disable(p)
    p.set_defaults(func=cmd_frontier)

    p = sub.add_parser("optimize", help="extract the metric-optimal tree")
    p.add_argument("dataset")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument(
        "--metric",
        type=_metric_arg,
        required=True,
        help="one of: " + ", ".join(METRIC_TOKENS),
    )
    add_disable(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("tune", help="pick the tree depth by cross-validation")
    p.add_argument("dataset")
    p.add_argument("--max-depth", type=int, required=True, help="largest depth tried")
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--metric", type=_metric_arg, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("oracle-check", help="randomised self-test against the exhaustive oracle")
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-instances", type=int, default=20)
    p.add_argument("--max-features", type=int, default=6)
    p.add_argument("--max-depth", type=int, default=3)
    p.set_defaults(func=cmd_oracle_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "depth", 0) < 0 or getattr(args, "max_depth", 0) < 0:
        parser.error("depth must be nonnegative")
    if getattr(args, "folds", 2) < 2:
        parser.error("at least 2 folds are required")
    try:
        return args.func(args)
    except (DatasetFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
