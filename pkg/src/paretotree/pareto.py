"""Bi-objective algebra on (miss_pos, miss_neg) error pairs.

A *front* is a ``(k, 2)`` int64 array of mutually nondominated pairs in
canonical order: first column (misclassified positives) strictly
increasing, second column (misclassified negatives) strictly decreasing.
All functions below accept any array-like of pairs and return canonical
fronts.
"""

from __future__ import annotations

import numpy as np

# Saturating stand-in for an unbounded objective value. Large enough that no
# dataset count comes near it, small enough that int64 arithmetic cannot wrap.
INF = 1 << 62

EMPTY_FRONT = np.empty((0, 2), dtype=np.int64)
EMPTY_FRONT.setflags(write=False)


def trivial_upper_bound() -> np.ndarray:
    """The no-constraint upper bound set ``[(INF, INF)]``."""
    return np.array([[INF, INF]], dtype=np.int64)


def as_pairs(points) -> np.ndarray:
    """Coerce an array-like of pairs to an ``(k, 2)`` int64 array."""
    pts = np.asarray(points, dtype=np.int64)
    if pts.size == 0:
        return EMPTY_FRONT
    return pts.reshape(-1, 2)


def dominates(p, q) -> bool:
    """True iff ``p`` dominates ``q``: componentwise <= and not equal."""
    return p[0] <= q[0] and p[1] <= q[1] and tuple(p) != tuple(q)


def nondom(points) -> np.ndarray:
    """Nondominated, deduplicated subset of ``points`` in canonical order.

    Lexicographic sort followed by a single linear scan: a pair survives iff
    its second objective is strictly below every second objective seen at a
    smaller first objective.
    """
    pts = as_pairs(points)
    if len(pts) == 0:
        return EMPTY_FRONT
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]
    first = np.empty(len(pts), dtype=bool)
    first[0] = True
    first[1:] = pts[1:, 0] != pts[:-1, 0]
    pts = pts[first]  # smallest second objective per first objective
    if len(pts) > 1:
        keep = np.empty(len(pts), dtype=bool)
        keep[0] = True
        keep[1:] = pts[1:, 1] < np.minimum.accumulate(pts[:-1, 1])
        pts = pts[keep]
    return pts


def merge(left, right) -> np.ndarray:
    """Front of all pairwise sums of two fronts.

    Combines the achievable error pairs of two disjoint dataset parts: a
    tree classifying both parts incurs the sum of the per-part errors.
    """
    l, r = as_pairs(left), as_pairs(right)
    if len(l) == 0 or len(r) == 0:
        return EMPTY_FRONT
    sums = (l[:, None, :] + r[None, :, :]).reshape(-1, 2)
    return nondom(sums)


def _strictly_dominated(points: np.ndarray, bound: np.ndarray) -> np.ndarray:
    """Boolean mask: which ``points`` are strictly dominated by ``bound``.

    ``bound`` must be canonical. For each point the only possible dominator
    is the bound entry with the largest first objective still <= the
    point's first objective (its second objective is minimal there).
    """
    if len(bound) == 0 or len(points) == 0:
        return np.zeros(len(points), dtype=bool)
    idx = np.searchsorted(bound[:, 0], points[:, 0], side="right") - 1
    found = idx >= 0
    idx = np.maximum(idx, 0)
    cov_mp = bound[idx, 0]
    cov_mn = bound[idx, 1]
    dominated = found & (cov_mn <= points[:, 1])
    equal = (cov_mp == points[:, 0]) & (cov_mn == points[:, 1])
    return dominated & ~equal


def filter_upper_bound(front, upper_bound) -> np.ndarray:
    """Drop front points strictly dominated by an upper-bound pair.

    Equality with an upper-bound pair is kept: only strict domination
    disqualifies a point.
    """
    f = as_pairs(front)
    ub = as_pairs(upper_bound)
    if len(f) == 0:
        return EMPTY_FRONT
    return f[~_strictly_dominated(f, ub)]


def front_gt(lower, upper) -> bool:
    """True iff every pair of ``lower`` is strictly dominated by ``upper``.

    The infeasibility test: when it holds, no achievable pair covered by
    ``lower`` can survive the ``upper`` filter. An empty ``lower`` never
    justifies pruning and yields False.
    """
    l = as_pairs(lower)
    u = as_pairs(upper)
    if len(l) == 0:
        return False
    return bool(_strictly_dominated(l, u).all())


def subtract_ub(upper_bound, left_front) -> np.ndarray:
    """Upper bound left over for a sibling subtree.

    Componentwise differences of every upper-bound pair and every left-front
    pair; differences with a negative component are discarded (no valid
    sibling could close that gap). Subtraction saturates at the INF
    sentinel: an unbounded component stays unbounded.
    """
    ub = as_pairs(upper_bound)
    lf = as_pairs(left_front)
    if len(ub) == 0:
        return EMPTY_FRONT
    if len(lf) == 0:
        return nondom(ub)
    diff = ub[:, None, :] - lf[None, :, :]
    inf_mask = (ub >= INF)[:, None, :] & np.ones((1, len(lf), 1), dtype=bool)
    diff = np.where(inf_mask, INF, diff).reshape(-1, 2)
    diff = diff[(diff >= 0).all(axis=1)]
    return nondom(diff)


def leaf_front(n_pos: int, n_neg: int) -> np.ndarray:
    """Front achievable by a single classification leaf.

    Labelling everything negative misclassifies the positives and vice
    versa; with a pure or empty dataset the two collapse to one point.
    """
    return nondom([(n_pos, 0), (0, n_neg)])
