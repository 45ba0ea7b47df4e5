"""Classification metrics over confusion counts and front-point selection.

Every built-in metric is monotone: improving either error count never
worsens the score. For such metrics the optimum over all trees is
attained on the Pareto front, so :func:`select_best` only scans front
points. Formulas accept numpy arrays as well as scalars; ratios with a
zero denominator evaluate to 0 so degenerate classifiers never win a
maximisation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAXIMIZE = "maximize"
MINIMIZE = "minimize"


@dataclass(frozen=True)
class MetricCounts:
    """Confusion counts; tp + fn and tn + fp are the class totals."""

    tp: int
    tn: int
    fp: int
    fn: int


@dataclass(frozen=True)
class Metric:
    """A named metric with an optimisation direction.

    ``weighted`` carries per-class error weights; all other kinds ignore
    them.
    """

    name: str
    w_pos: float = 1.0
    w_neg: float = 1.0

    def __post_init__(self):
        if self.name not in _FORMULAS:
            raise ValueError(f"unknown metric {self.name!r}")

    @property
    def direction(self) -> str:
        return MINIMIZE if self.name in ("misclass", "weighted") else MAXIMIZE

    @property
    def token(self) -> str:
        if self.name == "weighted":
            return f"weighted:{self.w_pos:g}:{self.w_neg:g}"
        return self.name


def parse_metric(token: str) -> Metric:
    """Parse a CLI metric token, e.g. ``f1`` or ``weighted:2:1``."""
    if token.startswith("weighted:"):
        parts = token.split(":")
        if len(parts) != 3:
            raise ValueError(f"expected weighted:<w_pos>:<w_neg>, got {token!r}")
        try:
            return Metric("weighted", w_pos=float(parts[1]), w_neg=float(parts[2]))
        except ValueError:
            raise ValueError(f"non-numeric weight in {token!r}") from None
    return Metric(token)


def counts_from_pair(pair, n_pos: int, n_neg: int) -> MetricCounts:
    """Confusion counts of an error pair given the class totals."""
    miss_pos, miss_neg = int(pair[0]), int(pair[1])
    if not (0 <= miss_pos <= n_pos and 0 <= miss_neg <= n_neg):
        raise ValueError(f"pair ({miss_pos}, {miss_neg}) exceeds class totals ({n_pos}, {n_neg})")
    return MetricCounts(tp=n_pos - miss_pos, tn=n_neg - miss_neg, fp=miss_neg, fn=miss_pos)


def _ratio(num, denom):
    denom = np.asarray(denom, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(denom > 0, np.asarray(num, dtype=np.float64) / np.where(denom > 0, denom, 1.0), 0.0)
    return out


def _accuracy(tp, tn, fp, fn, m):
    return _ratio(tp + tn, tp + tn + fp + fn)


def _misclass(tp, tn, fp, fn, m):
    return np.asarray(fp + fn, dtype=np.float64)


def _weighted(tp, tn, fp, fn, m):
    return m.w_pos * np.asarray(fp, np.float64) + m.w_neg * np.asarray(fn, np.float64)


def _f1(tp, tn, fp, fn, m):
    return _ratio(tp, tp + 0.5 * (fp + fn))


def _mcc(tp, tn, fp, fn, m):
    tp = np.asarray(tp, np.int64)
    tn = np.asarray(tn, np.int64)
    fp = np.asarray(fp, np.int64)
    fn = np.asarray(fn, np.int64)
    num = tp * tn - fp * fn
    denom = np.sqrt(((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)).astype(np.float64))
    return _ratio(num, denom)


def _fowlkes(tp, tn, fp, fn, m):
    prod = np.asarray(tp + fp, np.float64) * np.asarray(tp + fn, np.float64)
    return _ratio(tp, np.sqrt(prod))


_FORMULAS = {
    "accuracy": _accuracy,
    "misclass": _misclass,
    "weighted": _weighted,
    "f1": _f1,
    "mcc": _mcc,
    "fowlkes": _fowlkes,
}

METRIC_TOKENS = ("accuracy", "misclass", "weighted:<w_pos>:<w_neg>", "f1", "mcc", "fowlkes")


def metric_value(metric: Metric, counts: MetricCounts) -> float:
    return float(_FORMULAS[metric.name](counts.tp, counts.tn, counts.fp, counts.fn, metric))


def metric_values(metric: Metric, front: np.ndarray, n_pos: int, n_neg: int) -> np.ndarray:
    """Metric value of every front point, vectorised."""
    front = np.asarray(front, dtype=np.int64).reshape(-1, 2)
    fn = front[:, 0]
    fp = front[:, 1]
    return np.asarray(
        _FORMULAS[metric.name](n_pos - fn, n_neg - fp, fp, fn, metric), dtype=np.float64
    ).reshape(-1)


def select_best(front, metric: Metric, n_pos: int, n_neg: int) -> tuple[tuple[int, int], float]:
    """Front point with the extremal metric value.

    Ties go to the smaller miss_pos, then smaller miss_neg; since fronts
    are sorted that is the first extremal point.
    """
    front = np.asarray(front, dtype=np.int64).reshape(-1, 2)
    if len(front) == 0:
        raise ValueError("empty front")
    values = metric_values(metric, front, n_pos, n_neg)
    idx = int(np.argmin(values)) if metric.direction == MINIMIZE else int(np.argmax(values))
    return (int(front[idx, 0]), int(front[idx, 1])), float(values[idx])
