"""Sparse labeled datasets for pool-based active learning simulations.

A :class:`Dataset` is an immutable pool of binary-labeled sparse feature
vectors.  It can be loaded from (and written to) the plain-text sparse
format common to SVM tooling::

    <label> <id>:<value> <id>:<value> ...    # optional trailing comment

with label one of ``+1``, ``1``, ``-1`` and strictly increasing positive
feature ids.  Lines starting with ``#`` and blank lines are skipped.

The module also provides deterministic k-fold splitting and a synthetic
generator producing imbalanced Gaussian-cluster data with controllable
class overlap and built-in near-duplicate redundancy.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .seeding import derive_seed

__all__ = [
    "SparseVector",
    "Example",
    "Dataset",
    "FoldSplit",
    "DatasetFormatError",
    "load_sparse_text",
    "save_sparse_text",
    "kfold_split",
    "generate_synthetic",
]


class DatasetFormatError(ValueError):
    """Raised when a sparse-text file violates the line grammar."""


@dataclass(frozen=True)
class SparseVector:
    """Sparse feature vector: ordered ``(feature_id, value)`` entries.

    Feature ids are positive and strictly increasing; zero values are
    never stored.
    """

    entries: tuple[tuple[int, float], ...]

    def __post_init__(self) -> None:
        prev = 0
        for fid, value in self.entries:
            if fid <= prev:
                raise ValueError(f"feature ids must be strictly increasing, got {fid} after {prev}")
            if value == 0.0:
                raise ValueError(f"zero value stored for feature {fid}")
            prev = fid

    @property
    def max_feature_id(self) -> int:
        return self.entries[-1][0] if self.entries else 0

    def dot(self, weights: np.ndarray) -> float:
        """Inner product against a dense weight vector indexed by feature id."""
        total = 0.0
        for fid, value in self.entries:
            if fid < weights.shape[0]:
                total += value * weights[fid]
        return total


@dataclass(frozen=True)
class Example:
    """One labeled instance: sparse features, a ±1 label, and a pool id."""

    features: SparseVector
    label: int
    id: int

    def __post_init__(self) -> None:
        if self.label not in (-1, 1):
            raise ValueError(f"label must be -1 or +1, got {self.label}")
        if self.id < 0:
            raise ValueError(f"id must be non-negative, got {self.id}")


@dataclass(frozen=True, eq=False)
class Dataset:
    """An immutable collection of examples with ids ``0..len-1``.

    Instances cache dense CSR-style arrays for the numeric kernels; the
    cache is derived data and excluded from equality.
    """

    examples: tuple[Example, ...]
    num_features: int
    _cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_examples(cls, examples: Iterable[Example]) -> "Dataset":
        examples = tuple(examples)
        for i, ex in enumerate(examples):
            if ex.id != i:
                raise ValueError(f"example ids must be 0..len-1 in order, got {ex.id} at {i}")
        num_features = max((ex.features.max_feature_id for ex in examples), default=0)
        return cls(examples=examples, num_features=num_features)

    def __len__(self) -> int:
        return len(self.examples)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return self.examples == other.examples and self.num_features == other.num_features

    @property
    def positive_count(self) -> int:
        return sum(1 for ex in self.examples if ex.label == 1)

    @property
    def negative_count(self) -> int:
        return len(self.examples) - self.positive_count

    @property
    def positive_fraction(self) -> float:
        return self.positive_count / len(self.examples)

    def labels(self, ids: Sequence[int] | None = None) -> np.ndarray:
        """Labels as a float64 array, for all examples or a subset of ids."""
        if ids is None:
            return np.array([ex.label for ex in self.examples], dtype=np.float64)
        return np.array([self.examples[i].label for i in ids], dtype=np.float64)

    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """CSR arrays ``(indptr, col_ids, values)`` over all examples.

        Column index equals the feature id (column 0 is unused), so a
        dense weight vector of length ``num_features + 1`` lines up with
        feature ids directly.  Computed once, then cached.
        """
        if "csr" not in self._cache:
            indptr = np.zeros(len(self.examples) + 1, dtype=np.int64)
            nnz = sum(len(ex.features.entries) for ex in self.examples)
            cols = np.zeros(nnz, dtype=np.int64)
            vals = np.zeros(nnz, dtype=np.float64)
            k = 0
            for i, ex in enumerate(self.examples):
                for fid, value in ex.features.entries:
                    cols[k] = fid
                    vals[k] = value
                    k += 1
                indptr[i + 1] = k
            self._cache["csr"] = (indptr, cols, vals)
        return self._cache["csr"]

    def row_sq_norms(self) -> np.ndarray:
        """Squared Euclidean norm of every example's feature vector."""
        if "sq" not in self._cache:
            indptr, _, vals = self.csr()
            sq = np.add.reduceat(
                np.concatenate([vals * vals, [0.0]]),
                indptr[:-1],
            )
            sq[indptr[:-1] == indptr[1:]] = 0.0
            self._cache["sq"] = sq
        return self._cache["sq"]


@dataclass(frozen=True)
class FoldSplit:
    """One cross-validation fold: disjoint test ids and pool ids."""

    fold_index: int
    test_ids: tuple[int, ...]
    pool_ids: tuple[int, ...]


_LABEL_TOKENS = {"+1": 1, "1": 1, "-1": -1}
_ENTRY_RE = re.compile(r"^(\d+):([^\s]+)$")


def _parse_line(line: str, lineno: int) -> tuple[int, SparseVector]:
    body = line.split("#", 1)[0].strip()
    tokens = body.split()
    label_token = tokens[0]
    if label_token not in _LABEL_TOKENS:
        raise DatasetFormatError(f"line {lineno}: bad label {label_token!r} (expected +1, 1 or -1)")
    label = _LABEL_TOKENS[label_token]
    entries = []
    prev = 0
    for token in tokens[1:]:
        m = _ENTRY_RE.match(token)
        if m is None:
            raise DatasetFormatError(f"line {lineno}: bad feature entry {token!r}")
        fid = int(m.group(1))
        if fid < 1:
            raise DatasetFormatError(f"line {lineno}: feature id must be >= 1, got {fid}")
        if fid <= prev:
            raise DatasetFormatError(
                f"line {lineno}: feature ids must be strictly increasing ({fid} after {prev})"
            )
        try:
            value = float(m.group(2))
        except ValueError:
            raise DatasetFormatError(f"line {lineno}: bad feature value {m.group(2)!r}") from None
        if not np.isfinite(value):
            raise DatasetFormatError(f"line {lineno}: non-finite feature value {m.group(2)!r}")
        if value != 0.0:
            entries.append((fid, value))
        prev = fid
    return label, SparseVector(entries=tuple(entries))


def load_sparse_text(path: str | Path) -> Dataset:
    """Load a dataset from the sparse text format.

    Raises :class:`DatasetFormatError` naming the offending line on any
    grammar violation, and on files with no data lines.
    """
    examples = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            stripped = raw.strip()
            if not stripped or stripped.startswith("#"):
                continue
            label, vec = _parse_line(raw, lineno)
            examples.append(Example(features=vec, label=label, id=len(examples)))
    if not examples:
        raise DatasetFormatError(f"{path}: no data lines")
    return Dataset.from_examples(examples)


def save_sparse_text(dataset: Dataset, path: str | Path) -> None:
    """Write a dataset in the sparse text format.

    Values are written with shortest round-trip formatting, so loading
    the file back yields an equal :class:`Dataset`.
    """
    with open(path, "w", encoding="utf-8") as fh:
        for ex in dataset.examples:
            label = "+1" if ex.label == 1 else "-1"
            parts = [label]
            parts.extend(f"{fid}:{value!r}" for fid, value in ex.features.entries)
            fh.write(" ".join(parts) + "\n")


def kfold_split(dataset: Dataset, k: int, seed: int) -> list[FoldSplit]:
    """Split ids into ``k`` folds; test sizes differ by at most one.

    Deterministic for a fixed seed.  Ids are shuffled once and dealt into
    contiguous test blocks; each fold's pool is everything else.
    """
    n = len(dataset)
    if not 2 <= k <= n:
        raise ValueError(f"k must be in [2, {n}], got {k}")
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    base, extra = divmod(n, k)
    folds = []
    start = 0
    for fold_index in range(k):
        size = base + (1 if fold_index < extra else 0)
        test = np.sort(order[start : start + size])
        mask = np.ones(n, dtype=bool)
        mask[test] = False
        pool = np.nonzero(mask)[0]
        folds.append(
            FoldSplit(
                fold_index=fold_index,
                test_ids=tuple(int(i) for i in test),
                pool_ids=tuple(int(i) for i in pool),
            )
        )
        start += size
    return folds


# Fraction of the minority-class size that each class contributes to the
# boundary band at overlap 1.0, and the exponential depth scale of band
# crossings relative to the inter-class margin.
_BAND_FRACTION = 0.5
_BAND_DEPTH = 1.5


def generate_synthetic(
    n: int,
    positive_fraction: float,
    num_clusters: int = 3,
    overlap: float = 0.5,
    seed: int = 0,
    dim: int = 8,
    duplicate_fraction: float = 0.3,
) -> Dataset:
    """Generate an imbalanced Gaussian-cluster dataset.

    Each class gets ``num_clusters`` cluster centers placed on its side
    of a random separating hyperplane.  With ``overlap == 0`` every point
    keeps a margin of at least 0.1 on its own side, so a zero-error
    linear separator exists.  Larger ``overlap`` moves a growing share of
    each class into a graded boundary band: band points take their
    lateral coordinates from a randomly chosen cluster of either class,
    while their along-normal depth is drawn from an exponential tail that
    starts on the correct side and crosses progressively further into
    the opposite class.  Shallow band points are recoverable by shifting
    the separator (which is what asymmetric class costs do); deep ones
    are not, so the two classes trade precision against recall.  A
    ``duplicate_fraction`` share of each cluster is near-copies of
    earlier members, giving the pool the redundancy that makes random
    querying wasteful.

    Exactly ``floor(positive_fraction * n)`` examples are positive.
    Deterministic: a pure function of its arguments.
    """
    if n < 10:
        raise ValueError(f"n must be >= 10, got {n}")
    if not 0.0 < positive_fraction < 1.0:
        raise ValueError(f"positive_fraction must be in (0, 1), got {positive_fraction}")
    if positive_fraction * n < 1.0:
        raise ValueError("positive_fraction * n must be >= 1")
    if overlap < 0.0:
        raise ValueError(f"overlap must be >= 0, got {overlap}")
    if num_clusters < 1:
        raise ValueError(f"num_clusters must be >= 1, got {num_clusters}")
    dim = int(min(max(dim, 2), 20))

    rng = np.random.default_rng(derive_seed(seed, "synthetic", n, num_clusters, dim))
    normal = rng.standard_normal(dim)
    normal /= np.linalg.norm(normal)

    def clipped_noise(size: int, scale: float, bound: float) -> np.ndarray:
        # Member noise with its along-normal component clipped so points
        # stay on their center's side when overlap == 0.
        noise = rng.standard_normal((size, dim)) * scale
        par = noise @ normal
        return noise + (np.clip(par, -bound, bound) - par)[:, None] * normal[None, :]

    # Cluster centers for both classes first, so band points can borrow
    # lateral coordinates from clusters of either class.
    centers = {1: [], -1: []}
    for label in (1, -1):
        for _ in range(num_clusters):
            center = rng.standard_normal(dim) * 2.0
            gap = 1.0 + rng.uniform(0.0, 2.0)
            center += (label * gap - center @ normal) * normal
            centers[label].append(center)
    all_centers = centers[1] + centers[-1]

    n_pos = int(np.floor(positive_fraction * n))
    n_neg = n - n_pos
    rows = np.zeros((n, dim), dtype=np.float64)
    labels = np.zeros(n, dtype=np.int64)

    row = 0
    for label, count in ((1, n_pos), (-1, n_neg)):
        counts = np.full(num_clusters, count // num_clusters, dtype=np.int64)
        counts[: count % num_clusters] += 1
        for c in range(num_clusters):
            size = int(counts[c])
            if size == 0:
                continue
            members = centers[label][c][None, :] + clipped_noise(size, 0.6, 0.88)
            if duplicate_fraction > 0.0 and size >= 4:
                n_dup = int(np.floor(size * duplicate_fraction))
                if n_dup >= 1:
                    src = rng.integers(0, size - n_dup, size=n_dup)
                    members[size - n_dup :] = members[src] + clipped_noise(n_dup, 0.01, 0.01)
            rows[row : row + size] = members
            labels[row : row + size] = label
            row += size

    # Move the same absolute number of points from each class into the
    # boundary band.  Tying the count to the minority class keeps the
    # small positive clusters from being swamped.  Band depth along the
    # separating normal is exponentially graded: most band points sit
    # just inside their own margin, a thinning tail crosses deeper.
    ov = min(overlap, 1.0)
    n_band = int(np.floor(_BAND_FRACTION * ov * min(n_pos, n_neg)))
    if n_band >= 1:
        for label in (1, -1):
            side = np.flatnonzero(labels == label)
            idx = side[rng.choice(side.size, size=n_band, replace=False)]
            hosts = rng.integers(0, len(all_centers), size=n_band)
            points = np.stack([all_centers[h] for h in hosts]) + clipped_noise(n_band, 0.6, 0.88)
            depth = label * (0.9 - _BAND_DEPTH * ov * rng.exponential(1.0, size=n_band))
            points += (depth - points @ normal)[:, None] * normal[None, :]
            rows[idx] = points

    order = rng.permutation(n)
    rows = rows[order]
    labels = labels[order]

    examples = []
    for i in range(n):
        entries = tuple(
            (j + 1, float(rows[i, j])) for j in range(dim) if rows[i, j] != 0.0
        )
        examples.append(Example(features=SparseVector(entries=entries), label=int(labels[i]), id=i))
    return Dataset.from_examples(examples)
