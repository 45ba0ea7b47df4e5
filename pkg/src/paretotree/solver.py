"""Recursive bi-objective search for exact Pareto fronts of decision trees.

The search solves each (dataset, depth budget) subproblem to the set of
nondominated (miss_pos, miss_neg) pairs, recursing over every candidate
split feature and combining child fronts with :func:`~.pareto.merge`.
Four independent accelerations are toggleable and never change the
returned front:

* ``upper_bounding`` -- derive a tighter bound for the right child from
  the left child's result ("A");
* ``infeasibility_caching`` -- remember, per subproblem, bound sets that
  rule out future work ("B");
* ``lookahead_bounding`` -- skip a split when merged child lower bounds
  already lose to the upper bound ("C");
* ``similarity_bounding`` -- lower-bound a child from the solved front of
  an overlapping sibling subproblem ("D");
* ``shallow_solver`` -- solve depth <= 2 subproblems by frequency counts
  instead of recursion.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .dataset import Dataset, difference_bounds
from .pareto import (
    EMPTY_FRONT,
    INF,
    as_pairs,
    filter_upper_bound,
    front_gt,
    leaf_front,
    merge,
    nondom,
    subtract_ub,
    trivial_upper_bound,
)
from .shallow import solve_shallow

OPTIMAL = "optimal"
LOWER_BOUND = "lower_bound"

_ZERO_LB = np.zeros((1, 2), dtype=np.int64)
_ZERO_LB.setflags(write=False)


# --------------------------------------------------------------------------
# Trees

@dataclass(frozen=True)
class Leaf:
    label: int


@dataclass(frozen=True)
class Split:
    feature: int
    left: "Leaf | Split"
    right: "Leaf | Split"


def tree_depth(node) -> int:
    if isinstance(node, Leaf):
        return 0
    return 1 + max(tree_depth(node.left), tree_depth(node.right))


def evaluate_tree(node, data: Dataset) -> tuple[int, int]:
    """(misclassified positives, misclassified negatives) of a tree."""
    n_features = data.n_features

    def rec(node, pos, neg):
        if isinstance(node, Leaf):
            if node.label == 0:
                return pos.bit_count(), 0
            return 0, neg.bit_count()
        if not 0 <= node.feature < n_features:
            raise IndexError(f"feature index {node.feature} out of range")
        col = data.store.columns[node.feature]
        pos_in, neg_in = pos & col, neg & col
        lp, ln = rec(node.left, pos ^ pos_in, neg ^ neg_in)
        rp, rn = rec(node.right, pos_in, neg_in)
        return lp + rp, ln + rn

    return rec(node, data.pos, data.neg)


def apply_tree(node, X: np.ndarray) -> np.ndarray:
    """Vectorised classification of a 0/1 feature matrix."""
    X = np.asarray(X)
    out = np.empty(len(X), dtype=np.int64)

    def rec(node, idx):
        if isinstance(node, Leaf):
            out[idx] = node.label
            return
        mask = X[idx, node.feature] == 1
        rec(node.left, idx[~mask])
        rec(node.right, idx[mask])

    rec(node, np.arange(len(X)))
    return out


def tree_to_dict(node) -> dict:
    """JSON-ready form: ``{"leaf": 0|1}`` or ``{"feature", "left", "right"}``."""
    if isinstance(node, Leaf):
        return {"leaf": int(node.label)}
    return {
        "feature": int(node.feature),
        "left": tree_to_dict(node.left),
        "right": tree_to_dict(node.right),
    }


def tree_from_dict(obj: dict):
    if "leaf" in obj:
        return Leaf(int(obj["leaf"]))
    return Split(int(obj["feature"]), tree_from_dict(obj["left"]), tree_from_dict(obj["right"]))


# --------------------------------------------------------------------------
# Bounds

def similarity_lb(reference_front, b_pos: int, b_neg: int) -> np.ndarray:
    """Lower bound from a solved front of an overlapping dataset.

    Every tree can beat the reference front by at most the per-class count
    of reference instances the new dataset lacks, so shifting the front
    down by those counts (clamped at zero) bounds the new dataset.
    """
    shifted = as_pairs(reference_front) - np.array([b_pos, b_neg], dtype=np.int64)
    return nondom(np.maximum(shifted, 0))


def lookahead_lb(lb_left, lb_right) -> np.ndarray:
    """Lower bound for a split: sum of its child lower bounds."""
    return merge(lb_left, lb_right)


def _lb_strength(bound: np.ndarray) -> int:
    # Scalar proxy used only to pick the most useful of several valid
    # lower bounds; any choice is sound.
    if len(bound) == 0:
        return 0
    return int(bound.sum(axis=1).min())


# --------------------------------------------------------------------------
# Search

@dataclass(frozen=True)
class SolveConfig:
    """Depth budget plus toggles for the individual accelerations."""

    max_depth: int
    upper_bounding: bool = True
    infeasibility_caching: bool = True
    lookahead_bounding: bool = True
    similarity_bounding: bool = True
    shallow_solver: bool = True

    DISABLE_TOKENS = {
        "A": "upper_bounding",
        "B": "infeasibility_caching",
        "C": "lookahead_bounding",
        "D": "similarity_bounding",
        "depth2": "shallow_solver",
    }

    def __post_init__(self):
        if self.max_depth < 0:
            raise ValueError("max_depth must be nonnegative")

    @classmethod
    def from_disabled(cls, max_depth: int, disabled=()) -> "SolveConfig":
        cfg = cls(max_depth=max_depth)
        for token in disabled:
            try:
                cfg = replace(cfg, **{cls.DISABLE_TOKENS[token]: False})
            except KeyError:
                raise ValueError(f"unknown technique token {token!r}") from None
        return cfg


@dataclass
class SolveStats:
    nodes_expanded: int = 0
    cache_hits: int = 0


@dataclass
class CacheEntry:
    front: np.ndarray
    status: str  # OPTIMAL or LOWER_BOUND


class TreeSearch:
    """One search instance: a configuration plus its private cache.

    Not thread-safe; run concurrent searches on separate instances (the
    datasets themselves may be shared).
    """

    def __init__(self, config: SolveConfig):
        self.config = config
        self.cache: dict[tuple[int, int], CacheEntry] = {}
        self.stats = SolveStats()

    def frontier(self, data: Dataset, depth: int | None = None, upper_bound=None) -> np.ndarray:
        """Exact front of trees of depth <= ``depth`` on ``data``.

        With an ``upper_bound`` set, points strictly dominated by a bound
        pair are omitted; an empty result means every achievable pair is
        dominated. The default bound is unconstrained, so the full front
        is returned.
        """
        if depth is None:
            depth = self.config.max_depth
        if not 0 <= depth <= self.config.max_depth:
            raise ValueError(f"depth must be within 0..{self.config.max_depth}")
        ub = trivial_upper_bound() if upper_bound is None else nondom(upper_bound)
        front, _ = self._solve(data, depth, ub)
        return front

    # The recursion returns (front, complete): ``front`` holds exactly the
    # achievable nondominated pairs not strictly dominated by ``ub``;
    # ``complete`` marks whether that equals the full unconstrained front,
    # which decides if the result may be cached as optimal.
    def _solve(self, data: Dataset, depth: int, ub: np.ndarray) -> tuple[np.ndarray, bool]:
        cfg = self.config
        n_pos, n_neg = data.class_counts()
        if depth == 0 or n_pos == 0 or n_neg == 0:
            front = leaf_front(n_pos, n_neg)
            ret = filter_upper_bound(front, ub)
            return ret, len(ret) == len(front)

        key = (data.key, depth)
        entry = self.cache.get(key)
        if entry is not None:
            if entry.status == OPTIMAL:
                self.stats.cache_hits += 1
                ret = filter_upper_bound(entry.front, ub)
                return ret, len(ret) == len(entry.front)
            if front_gt(entry.front, ub):
                self.stats.cache_hits += 1
                return EMPTY_FRONT, False

        self.stats.nodes_expanded += 1

        if depth <= 2 and cfg.shallow_solver:
            front = solve_shallow(data, depth)
            self.cache[key] = CacheEntry(front, OPTIMAL)
            ret = filter_upper_bound(front, ub)
            return ret, len(ret) == len(front)

        totals = np.add(*data.feature_counts())
        features = np.flatnonzero((totals > 0) & (totals < len(data)))
        if len(features) == 0:
            # Every feature is constant here; only leaves are expressible.
            front = leaf_front(n_pos, n_neg)
            self.cache[key] = CacheEntry(front, OPTIMAL)
            ret = filter_upper_bound(front, ub)
            return ret, len(ret) == len(front)

        pf = EMPTY_FRONT
        current_ub = ub
        pruned = False
        use_look = cfg.lookahead_bounding
        use_sim = cfg.lookahead_bounding and cfg.similarity_bounding
        sim_data = sim_front = None

        for f in features:
            left, right = data.split(int(f))
            if use_look:
                lb = lookahead_lb(
                    self._child_bound(left, depth - 1, sim_data, sim_front),
                    self._child_bound(right, depth - 1, sim_data, sim_front),
                )
                if front_gt(lb, current_ub):
                    pruned = True
                    continue
            pf_left, left_complete = self._solve(left, depth - 1, current_ub)
            if use_sim and left_complete:
                sim_data, sim_front = left, pf_left
            if len(pf_left) == 0:
                pruned = True
                continue
            if not left_complete:
                pruned = True
            if cfg.upper_bounding:
                # Subtract the componentwise best of the left front. A pair
                # ruled out by this bound yields a dominated sum with every
                # left point, so no needed combination is lost.
                ideal = np.array([[pf_left[0, 0], pf_left[-1, 1]]], dtype=np.int64)
                ub_right = subtract_ub(current_ub, ideal)
            else:
                ub_right = trivial_upper_bound()
            pf_right, right_complete = self._solve(right, depth - 1, ub_right)
            if use_sim and right_complete:
                sim_data, sim_front = right, pf_right
            if len(pf_right) == 0:
                pruned = True
                continue
            if not right_complete:
                pruned = True
            found = merge(pf_left, pf_right)
            pf = nondom(np.concatenate((pf, found)))
            current_ub = nondom(np.concatenate((current_ub, found)))

        ret = filter_upper_bound(pf, ub)
        if not pruned:
            # Nothing below was cut by the incoming bound: pf is the true
            # unconstrained front even if the returned value is filtered.
            self.cache[key] = CacheEntry(pf, OPTIMAL)
            return ret, len(ret) == len(pf)
        if cfg.infeasibility_caching:
            # Everything achievable is either in pf or strictly dominated
            # by a member of the final upper bound, so their union is a
            # valid lower-bound set for this subproblem.
            bound = nondom(np.concatenate((pf, current_ub)))
            bound = bound[(bound < INF).all(axis=1)]
            if len(bound):
                self.cache[key] = CacheEntry(bound, LOWER_BOUND)
        return ret, False

    def _child_bound(self, child: Dataset, depth: int, sim_data, sim_front) -> np.ndarray:
        candidates = [_ZERO_LB]
        entry = self.cache.get((child.key, depth))
        if entry is not None:
            candidates.append(entry.front)
        if sim_data is not None:
            # Count reference instances missing from the child: only those
            # can make the child easier than the reference.
            b_pos, b_neg = difference_bounds(sim_data, child)
            candidates.append(similarity_lb(sim_front, b_pos, b_neg))
        return max(candidates, key=_lb_strength)

    # ----------------------------------------------------------------
    # Witness reconstruction

    def reconstruct(self, data: Dataset, depth: int, target) -> Leaf | Split:
        """A tree of depth <= ``depth`` achieving ``target`` on ``data``.

        ``target`` must lie on the front of (data, depth). Ties between
        witnesses are broken deterministically: lowest split feature
        first, then the left subtree's witness in front order.
        """
        target = (int(target[0]), int(target[1]))
        front = self.frontier(data, depth)
        if not any(target == (int(p[0]), int(p[1])) for p in front):
            raise ValueError(f"target {target} is not on the front")
        return self._witness(data, depth, target)

    def _witness(self, data: Dataset, depth: int, target: tuple[int, int]):
        n_pos, n_neg = data.class_counts()
        if target == (n_pos, 0):
            return Leaf(0)
        if target == (0, n_neg):
            return Leaf(1)
        if depth == 0:
            raise ValueError(f"target {target} unreachable at depth 0")
        trivial = trivial_upper_bound()
        totals = np.add(*data.feature_counts())
        for f in np.flatnonzero((totals > 0) & (totals < len(data))):
            left, right = data.split(int(f))
            front_left, _ = self._solve(left, depth - 1, trivial)
            front_right, _ = self._solve(right, depth - 1, trivial)
            for lp, ln in front_left:
                rp, rn = target[0] - int(lp), target[1] - int(ln)
                if rp < 0:
                    break  # left fronts are sorted by first objective
                if rn < 0:
                    continue
                if not _front_contains(front_right, rp, rn):
                    continue
                return Split(
                    int(f),
                    self._witness(left, depth - 1, (int(lp), int(ln))),
                    self._witness(right, depth - 1, (rp, rn)),
                )
        raise ValueError(f"target {target} unreachable at depth {depth}")


def _front_contains(front: np.ndarray, mp: int, mn: int) -> bool:
    i = int(np.searchsorted(front[:, 0], mp))
    return i < len(front) and front[i, 0] == mp and front[i, 1] == mn


def solve_frontier(data: Dataset, depth: int, disabled=()) -> tuple[np.ndarray, TreeSearch]:
    """Convenience wrapper: solve one dataset, returning front and search."""
    search = TreeSearch(SolveConfig.from_disabled(depth, disabled))
    return search.frontier(data, depth), search
