"""Independent ground truth for small instances.

Everything here favours obviousness over speed and shares no code with
the search: fronts come from exhausting the full space of achievable
error pairs, dominance filtering is a quadratic double loop, and the
single-objective optimum is a direct recursion. Guards keep the
exhaustive routines at test scale.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .dataset import DataStore, Dataset
from .metrics import Metric, counts_from_pair, metric_value
from .solver import Leaf, Split

MAX_FEATURES = 8
MAX_DEPTH = 3


class OracleLimitError(ValueError):
    """Raised when an exhaustive routine is asked to exceed its guards."""


def _check_limits(num_features: int, depth: int) -> None:
    if num_features > MAX_FEATURES or depth > MAX_DEPTH:
        raise OracleLimitError(
            f"oracle limited to {MAX_FEATURES} features and depth {MAX_DEPTH}, "
            f"got {num_features} features at depth {depth}"
        )


def enumerate_trees(num_features: int, depth: int):
    """Yield every tree of depth <= ``depth``, all leaf labellings included.

    Features may repeat along a path; the redundancy is harmless for an
    exhaustive oracle.
    """
    _check_limits(num_features, depth)
    yield Leaf(0)
    yield Leaf(1)
    if depth == 0:
        return
    subtrees = list(enumerate_trees(num_features, depth - 1))
    for f in range(num_features):
        for left, right in product(subtrees, subtrees):
            yield Split(f, left, right)


def achievable_pairs(data: Dataset, depth: int) -> list[tuple[int, int]]:
    """Every (miss_pos, miss_neg) pair some tree of depth <= ``depth`` attains.

    Recurses over all splits keeping *all* achievable pairs, not just the
    nondominated ones; pair sets are packed into bitmasks over the
    (miss_pos, miss_neg) grid so combining children is shift-and-or.
    """
    _check_limits(data.n_features, depth)
    width = data.n_neg + 1

    def leaf_bits(pos: int, neg: int) -> int:
        return (1 << (pos.bit_count() * width)) | (1 << neg.bit_count())

    def rec(pos: int, neg: int, d: int) -> int:
        bits = leaf_bits(pos, neg)
        if d == 0:
            return bits
        for col in data.store.columns:
            pos_in, neg_in = pos & col, neg & col
            left = rec(pos ^ pos_in, neg ^ neg_in, d - 1)
            right = rec(pos_in, neg_in, d - 1)
            small, big = (left, right) if left.bit_count() <= right.bit_count() else (right, left)
            while small:
                low = small & -small
                bits |= big << (low.bit_length() - 1)
                small ^= low
        return bits

    packed = rec(data.pos, data.neg, depth)
    pairs = []
    while packed:
        low = packed & -packed
        idx = low.bit_length() - 1
        pairs.append(divmod(idx, width))
        packed ^= low
    return pairs


def nondominated(pairs) -> list[tuple[int, int]]:
    """Quadratic dominance filter, deliberately naive."""
    pairs = sorted(set((int(a), int(b)) for a, b in pairs))
    kept = []
    for p in pairs:
        dominated = False
        for q in pairs:
            if q != p and q[0] <= p[0] and q[1] <= p[1]:
                dominated = True
                break
        if not dominated:
            kept.append(p)
    return kept


def brute_frontier(data: Dataset, depth: int) -> np.ndarray:
    """Exact front by exhaustion of all achievable pairs."""
    pairs = nondominated(achievable_pairs(data, depth))
    return np.array(pairs, dtype=np.int64).reshape(-1, 2)


def brute_best_metric(data: Dataset, depth: int, metric: Metric) -> float:
    """Extremal metric value over every achievable tree."""
    n_pos, n_neg = data.class_counts()
    values = [
        metric_value(metric, counts_from_pair(p, n_pos, n_neg))
        for p in achievable_pairs(data, depth)
    ]
    return min(values) if metric.direction == "minimize" else max(values)


def brute_min_misclass(data: Dataset, depth: int) -> int:
    """Minimum total misclassifications by direct recursion over splits."""
    _check_limits(data.n_features, depth)

    def rec(pos: int, neg: int, d: int) -> int:
        best = min(pos.bit_count(), neg.bit_count())
        if d == 0 or best == 0:
            return best
        for col in data.store.columns:
            pos_in, neg_in = pos & col, neg & col
            best = min(best, rec(pos ^ pos_in, neg ^ neg_in, d - 1) + rec(pos_in, neg_in, d - 1))
        return best

    return rec(data.pos, data.neg, depth)


def random_dataset(rng: np.random.Generator, max_instances: int = 20, max_features: int = 6) -> Dataset:
    """Small random dataset with random class balance (pure classes included)."""
    n = int(rng.integers(1, max_instances + 1))
    n_features = int(rng.integers(1, max_features + 1))
    X = rng.integers(0, 2, size=(n, n_features), dtype=np.uint8)
    y = (rng.random(n) < rng.random()).astype(np.uint8)
    return Dataset.from_store(DataStore(X, y))
