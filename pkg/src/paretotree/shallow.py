"""Exact fronts for trees of depth at most two, from frequency counts.

Splitting a dataset twice partitions it into four cells whose class
counts are plain pairwise-feature frequencies, so the whole depth-2
search reduces to arithmetic on one pairwise count table: no dataset is
ever materialised below the root. Depths 0 and 1 fall out of the same
counts.
"""

from __future__ import annotations

import numpy as np

from .dataset import Dataset
from .pareto import leaf_front, nondom

__all__ = ["solve_shallow"]


def solve_shallow(data: Dataset, depth: int) -> np.ndarray:
    """Exact Pareto front over all trees of depth <= ``depth`` (0, 1 or 2).

    Returns the unconstrained front; callers apply their own upper-bound
    filtering. Trees shallower than the budget are always admitted.
    """
    if depth not in (0, 1, 2):
        raise ValueError(f"depth must be 0, 1 or 2, got {depth}")
    n_pos, n_neg = data.class_counts()
    base = leaf_front(n_pos, n_neg)
    if depth == 0 or n_pos == 0 or n_neg == 0 or data.n_features == 0:
        return base
    cp, cn = data.feature_counts()
    if depth == 1:
        return _depth1_front(n_pos, n_neg, cp, cn)
    return _depth2_front(data, n_pos, n_neg, cp, cn)


def _depth1_front(n_pos, n_neg, cp, cn) -> np.ndarray:
    # Splitting on f and labelling the two leaves all four ways yields
    # (P, 0), (0, N) and the two mixed labellings per feature.
    mixed_a = np.column_stack((n_pos - cp, cn))
    mixed_b = np.column_stack((cp, n_neg - cn))
    leaves = np.array([(n_pos, 0), (0, n_neg)], dtype=np.int64)
    return nondom(np.concatenate((leaves, mixed_a, mixed_b)))


def _child_candidates(total_pos, total_neg, in_pos, in_neg) -> np.ndarray:
    """Error pairs achievable by one child of the root at depth <= 1.

    ``in_pos``/``in_neg`` are per-second-feature counts of the child's
    instances that carry the second feature. Labelling the two grandchild
    leaves all four ways yields, per second feature, the child's leaf
    points plus the two mixed labellings.
    """
    out_pos = total_pos - in_pos
    out_neg = total_neg - in_neg
    mixed_a = np.column_stack((in_pos, out_neg))
    mixed_b = np.column_stack((out_pos, in_neg))
    leaves = np.array([(total_pos, 0), (0, total_neg)], dtype=np.int64)
    return np.concatenate((leaves, mixed_a, mixed_b))


def _depth2_front(data, n_pos, n_neg, cp, cn) -> np.ndarray:
    fq_pos, fq_neg = data._pairwise_arrays()
    collected = []
    for f in range(data.n_features):
        right_pos, right_neg = cp[f], cn[f]
        left_pos, left_neg = n_pos - right_pos, n_neg - right_neg
        # Cell counts by inclusion-exclusion from the pairwise table.
        left = nondom(
            _child_candidates(left_pos, left_neg, cp - fq_pos[f], cn - fq_neg[f])
        )
        right = nondom(
            _child_candidates(right_pos, right_neg, fq_pos[f], fq_neg[f])
        )
        sums = (left[:, None, :] + right[None, :, :]).reshape(-1, 2)
        collected.append(sums)
    return nondom(np.concatenate(collected))
