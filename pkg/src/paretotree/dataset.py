"""Binary-classification datasets backed by instance bitsets.

A :class:`DataStore` holds the immutable instance matrix once; every
:class:`Dataset` is a pair of bitsets (positive / negative instance
indices) over that store, so splitting on a feature is two bitmask
operations and never copies rows. Everything here is immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DatasetFormatError(ValueError):
    """Raised for malformed dataset files."""


def _popcount(mask: int) -> int:
    return mask.bit_count()


class DataStore:
    """Shared read-only backing for one dataset file.

    Attributes
    ----------
    X : ndarray of shape (n_instances, n_features), uint8
        Binary feature matrix.
    y : ndarray of shape (n_instances,), uint8
        Binary labels.
    columns : list of int
        Per-feature bitmask over instance indices (bit i set iff instance i
        has the feature).
    """

    __slots__ = ("X", "y", "n_instances", "n_features", "columns", "_X32")

    def __init__(self, X: np.ndarray, y: np.ndarray):
        X = np.ascontiguousarray(X, dtype=np.uint8)
        y = np.ascontiguousarray(y, dtype=np.uint8)
        if X.ndim != 2:
            raise ValueError("feature matrix must be 2-dimensional")
        if y.shape != (X.shape[0],):
            raise ValueError("label vector length must match instance count")
        if X.size and not np.isin(X, (0, 1)).all():
            raise ValueError("features must be binary")
        if y.size and not np.isin(y, (0, 1)).all():
            raise ValueError("labels must be binary")
        self.X = X
        self.y = y
        self.n_instances, self.n_features = X.shape
        self.columns = [_mask_from_bool(X[:, f] == 1) for f in range(self.n_features)]
        self._X32 = None

    @property
    def X32(self) -> np.ndarray:
        """float32 copy of X for exact small-count matrix products."""
        if self._X32 is None:
            self._X32 = self.X.astype(np.float32)
        return self._X32


def _mask_from_bool(flags: np.ndarray) -> int:
    bits = np.packbits(flags.astype(np.uint8), bitorder="little")
    return int.from_bytes(bits.tobytes(), "little")


def _bool_from_mask(mask: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


@dataclass(frozen=True)
class FrequencyTable:
    """Pairwise instance counts for all feature-literal pairs.

    ``pos[f, g]`` / ``neg[f, g]`` count the positive / negative instances
    containing both features; counts involving negated literals follow by
    inclusion-exclusion from these and the class totals.
    """

    pos: np.ndarray
    neg: np.ndarray
    n_pos: int
    n_neg: int

    def count_pos(self, f: int, g: int, f_value: int = 1, g_value: int = 1) -> int:
        return self._count(self.pos, self.n_pos, f, g, f_value, g_value)

    def count_neg(self, f: int, g: int, f_value: int = 1, g_value: int = 1) -> int:
        return self._count(self.neg, self.n_neg, f, g, f_value, g_value)

    @staticmethod
    def _count(table, total, f, g, f_value, g_value) -> int:
        both = int(table[f, g])
        cf, cg = int(table[f, f]), int(table[g, g])
        if f_value and g_value:
            return both
        if f_value and not g_value:
            return cf - both
        if g_value and not f_value:
            return cg - both
        return total - cf - cg + both


class Dataset:
    """A subset of a :class:`DataStore`, split into class bitsets.

    Parameters
    ----------
    store : DataStore
        Shared backing store.
    pos, neg : int
        Bitsets of positive / negative instance indices. Must be disjoint.
    """

    __slots__ = ("store", "pos", "neg", "n_pos", "n_neg", "_indices")

    def __init__(self, store: DataStore, pos: int, neg: int):
        self.store = store
        self.pos = pos
        self.neg = neg
        self.n_pos = _popcount(pos)
        self.n_neg = _popcount(neg)
        self._indices = None

    @classmethod
    def from_store(cls, store: DataStore) -> "Dataset":
        pos = _mask_from_bool(store.y == 1)
        neg = _mask_from_bool(store.y == 0)
        return cls(store, pos, neg)

    @classmethod
    def from_arrays(cls, X, y) -> "Dataset":
        return cls.from_store(DataStore(np.asarray(X), np.asarray(y)))

    @classmethod
    def from_indices(cls, store: DataStore, indices) -> "Dataset":
        pos = neg = 0
        for i in indices:
            if store.y[i] == 1:
                pos |= 1 << int(i)
            else:
                neg |= 1 << int(i)
        return cls(store, pos, neg)

    def __len__(self) -> int:
        return self.n_pos + self.n_neg

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Dataset)
            and self.store is other.store
            and self.pos == other.pos
            and self.neg == other.neg
        )

    def __hash__(self) -> int:
        return hash((id(self.store), self.pos, self.neg))

    def __repr__(self) -> str:
        return f"Dataset(n_pos={self.n_pos}, n_neg={self.n_neg}, n_features={self.n_features})"

    @property
    def n_features(self) -> int:
        return self.store.n_features

    @property
    def key(self) -> int:
        """Cache key: equal iff the instance bitsets are equal.

        Labels are fixed by the store, so the union bitset identifies the
        subset exactly (no hash collisions possible).
        """
        return self.pos | self.neg

    def class_counts(self) -> tuple[int, int]:
        return self.n_pos, self.n_neg

    def split(self, feature: int) -> tuple["Dataset", "Dataset"]:
        """Partition into (feature absent, feature present) datasets."""
        if not 0 <= feature < self.n_features:
            raise IndexError(f"feature index {feature} out of range")
        col = self.store.columns[feature]
        pos_in, neg_in = self.pos & col, self.neg & col
        left = Dataset(self.store, self.pos ^ pos_in, self.neg ^ neg_in)
        right = Dataset(self.store, pos_in, neg_in)
        return left, right

    def indices(self) -> tuple[np.ndarray, np.ndarray]:
        """Instance index arrays (positives, negatives), cached."""
        if self._indices is None:
            n = self.store.n_instances
            pos_idx = np.flatnonzero(_bool_from_mask(self.pos, n))
            neg_idx = np.flatnonzero(_bool_from_mask(self.neg, n))
            self._indices = (pos_idx, neg_idx)
        return self._indices

    def feature_counts(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-feature instance counts (positives, negatives)."""
        pos_idx, neg_idx = self.indices()
        X = self.store.X
        cp = X[pos_idx].sum(axis=0, dtype=np.int64) if len(pos_idx) else np.zeros(self.n_features, np.int64)
        cn = X[neg_idx].sum(axis=0, dtype=np.int64) if len(neg_idx) else np.zeros(self.n_features, np.int64)
        return cp, cn

    def pairwise_counts(self) -> FrequencyTable:
        """Pairwise feature frequency table over this subset."""
        pos, neg = self._pairwise_arrays()
        return FrequencyTable(pos=pos, neg=neg, n_pos=self.n_pos, n_neg=self.n_neg)

    def _pairwise_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        # Counts stay below 2**24, so a float32 BLAS product is exact and
        # far faster than integer matmul at benchmark widths.
        pos_idx, neg_idx = self.indices()
        F = self.n_features
        X32 = self.store.X32
        if len(pos_idx):
            fp = (X32[pos_idx].T @ X32[pos_idx]).astype(np.int64)
        else:
            fp = np.zeros((F, F), dtype=np.int64)
        if len(neg_idx):
            fn = (X32[neg_idx].T @ X32[neg_idx]).astype(np.int64)
        else:
            fn = np.zeros((F, F), dtype=np.int64)
        return fp, fn


def difference_bounds(target: Dataset, reference: Dataset) -> tuple[int, int]:
    """Per-class sizes of ``target``'s instances absent from ``reference``."""
    if target.store is not reference.store:
        raise ValueError("datasets must share a backing store")
    b_pos = _popcount(target.pos & ~reference.pos)
    b_neg = _popcount(target.neg & ~reference.neg)
    return b_pos, b_neg


def parse_dataset(text: str) -> Dataset:
    """Parse the label-first whitespace-separated 0/1 line format.

    Each nonempty line is ``label bit bit ...`` with equal width across
    lines; blank lines and trailing whitespace are ignored.
    """
    rows = []
    labels = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens:
            continue
        for tok in tokens:
            if tok not in ("0", "1"):
                raise DatasetFormatError(f"line {lineno}: non-binary token {tok!r}")
        if width is None:
            width = len(tokens)
            if width < 2:
                raise DatasetFormatError(f"line {lineno}: expected a label and at least one feature")
        elif len(tokens) != width:
            raise DatasetFormatError(
                f"line {lineno}: expected {width} columns, found {len(tokens)}"
            )
        labels.append(int(tokens[0]))
        rows.append([int(t) for t in tokens[1:]])
    if not rows:
        raise DatasetFormatError("empty file")
    store = DataStore(np.array(rows, dtype=np.uint8), np.array(labels, dtype=np.uint8))
    return Dataset.from_store(store)


def serialize_dataset(data: Dataset) -> str:
    """Inverse of :func:`parse_dataset` for a full-store dataset."""
    store = data.store
    lines = []
    for i in range(store.n_instances):
        lines.append(" ".join([str(int(store.y[i]))] + [str(int(v)) for v in store.X[i]]))
    return "\n".join(lines) + "\n"


def load_dataset(path) -> Dataset:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_dataset(fh.read())
