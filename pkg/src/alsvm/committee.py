"""Committees of cost-sensitive SVMs for query-by-committee selection.

Two constructions are provided.  Bagging trains each member on a
bootstrap resample of the labeled set and weights members uniformly.
Boosting reweights examples adaptively: each round draws a
weight-proportional resample, trains a member, measures its weighted
error on the full labeled set, and upweights the examples it got wrong;
member weights are ``ln(1/beta_t)`` with ``beta_t = eps_t/(1-eps_t)``.

Every member is trained with the same asymmetric-cost configuration, so
the positive-amplification ratio applies to the whole committee.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dataset import Dataset, SparseVector
from .seeding import derive_seed
from .svm import SvmModel, TrainConfig, decision_values, train

__all__ = [
    "Committee",
    "BoostRound",
    "build_bagged_committee",
    "build_boosted_committee",
    "vote_entropy",
    "weighted_vote_margin",
]

_ZERO_ERROR_BETA = 1e-10
_MAX_REDRAWS = 10


@dataclass(frozen=True)
class BoostRound:
    """Per-round boosting diagnostics."""

    weighted_error: float
    beta: float
    weight_sum_after: float


@dataclass(frozen=True)
class Committee:
    """An ensemble of SVMs with positive member weights.

    ``kind`` is ``"bagged"`` (uniform weights) or ``"boosted"``
    (log-odds weights).  The committee's combined prediction is the sign
    of the weighted vote, with exact ties going negative.
    """

    members: tuple[SvmModel, ...]
    member_weights: tuple[float, ...]
    kind: str
    boost_rounds: tuple[BoostRound, ...] = field(default=())

    def __post_init__(self) -> None:
        if len(self.members) < 1 or len(self.members) != len(self.member_weights):
            raise ValueError("committee needs >= 1 member with one weight each")
        if any(w <= 0 for w in self.member_weights):
            raise ValueError("member weights must be positive")
        if self.kind not in ("bagged", "boosted"):
            raise ValueError(f"kind must be 'bagged' or 'boosted', got {self.kind!r}")

    def votes(self, dataset: Dataset, ids) -> np.ndarray:
        """Hard ±1 votes, shape (members, len(ids))."""
        out = np.empty((len(self.members), len(ids)), dtype=np.float64)
        for t, member in enumerate(self.members):
            out[t] = np.where(decision_values(member, dataset, ids) > 0.0, 1.0, -1.0)
        return out

    def member_decision_values(self, dataset: Dataset, ids) -> np.ndarray:
        """Raw decision values, shape (members, len(ids))."""
        out = np.empty((len(self.members), len(ids)), dtype=np.float64)
        for t, member in enumerate(self.members):
            out[t] = decision_values(member, dataset, ids)
        return out

    def weighted_vote_values(self, dataset: Dataset, ids) -> np.ndarray:
        """Weighted vote sums ``sum_t weight_t * vote_t`` per example."""
        votes = self.votes(dataset, ids)
        weights = np.asarray(self.member_weights, dtype=np.float64)
        return weights @ votes

    def predict(self, x: SparseVector) -> int:
        """Weighted-vote prediction for a single vector; ties go negative."""
        s = sum(
            w * (1.0 if m.decision_value(x) > 0.0 else -1.0)
            for m, w in zip(self.members, self.member_weights)
        )
        return 1 if s > 0.0 else -1


def _resample_single_class(labels: np.ndarray) -> bool:
    return bool(np.all(labels == labels[0]))


def build_bagged_committee(
    dataset: Dataset,
    labeled_ids,
    k: int,
    config: TrainConfig = TrainConfig(),
    seed: int = 0,
) -> Committee:
    """Train ``k`` members on bootstrap resamples of the labeled set.

    Each bag draws ``len(labeled_ids)`` examples with replacement.  Bags
    that come up single-class are redrawn up to 10 times and then
    accepted as-is (the base learner handles the degenerate case).
    Deterministic per seed.
    """
    ids = np.asarray(sorted(labeled_ids), dtype=np.int64)
    if ids.size == 0:
        raise ValueError("labeled set is empty")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    members = []
    for t in range(k):
        rng = np.random.default_rng(derive_seed(seed, "bag-draw", t))
        for _ in range(_MAX_REDRAWS + 1):
            bag = ids[rng.integers(0, ids.size, size=ids.size)]
            if not _resample_single_class(dataset.labels(bag)):
                break
        members.append(train(dataset, bag, config, seed=derive_seed(seed, "member", t)))
    return Committee(members=tuple(members), member_weights=(1.0,) * k, kind="bagged")


def build_boosted_committee(
    dataset: Dataset,
    labeled_ids,
    k: int,
    config: TrainConfig = TrainConfig(),
    seed: int = 0,
) -> Committee:
    """Adaptive boosting with resampling, up to ``k`` rounds.

    Rounds stop early when a member's weighted error on the labeled set
    reaches 0.5 (member discarded; earlier members kept) or hits zero
    (member kept with a floor beta).  If the very first member is
    discarded, the fallback is a single member trained on the full
    labeled set with weight 1.
    """
    ids = np.asarray(sorted(labeled_ids), dtype=np.int64)
    if ids.size == 0:
        raise ValueError("labeled set is empty")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    y = dataset.labels(ids)
    weights = np.full(ids.size, 1.0 / ids.size)
    members: list[SvmModel] = []
    member_weights: list[float] = []
    rounds: list[BoostRound] = []
    for t in range(k):
        rng = np.random.default_rng(derive_seed(seed, "boost-draw", t))
        sample = ids[rng.choice(ids.size, size=ids.size, replace=True, p=weights)]
        member = train(dataset, sample, config, seed=derive_seed(seed, "member", t))
        predictions = np.where(decision_values(member, dataset, ids) > 0.0, 1.0, -1.0)
        correct = predictions == y
        eps = float(weights[~correct].sum())
        if eps >= 0.5:
            break
        if eps == 0.0:
            beta = _ZERO_ERROR_BETA
            members.append(member)
            member_weights.append(math.log(1.0 / beta))
            rounds.append(BoostRound(weighted_error=eps, beta=beta, weight_sum_after=float(weights.sum())))
            break
        beta = eps / (1.0 - eps)
        members.append(member)
        member_weights.append(math.log(1.0 / beta))
        weights = np.where(correct, weights * beta, weights)
        weights = weights / weights.sum()
        rounds.append(BoostRound(weighted_error=eps, beta=beta, weight_sum_after=float(weights.sum())))
    if not members:
        fallback = train(dataset, ids, config, seed=derive_seed(seed, "member", 0))
        return Committee(
            members=(fallback,),
            member_weights=(1.0,),
            kind="boosted",
            boost_rounds=(),
        )
    return Committee(
        members=tuple(members),
        member_weights=tuple(member_weights),
        kind="boosted",
        boost_rounds=tuple(rounds),
    )


def vote_entropy(committee: Committee, x: SparseVector) -> float:
    """Binary entropy (bits) of the committee's unweighted hard votes."""
    votes = [m.predict(x) for m in committee.members]
    v = votes.count(1) / len(votes)
    return binary_entropy(v)


def binary_entropy(v: float) -> float:
    """``-v log2 v - (1-v) log2 (1-v)`` with the 0 log 0 := 0 convention."""
    if v <= 0.0 or v >= 1.0:
        return 0.0
    return -v * math.log2(v) - (1.0 - v) * math.log2(1.0 - v)


def weighted_vote_margin(committee: Committee, x: SparseVector) -> float:
    """``|sum_t weight_t vote_t| / sum_t weight_t``; 1 means unanimity."""
    total = sum(committee.member_weights)
    s = sum(
        w * (1.0 if m.decision_value(x) > 0.0 else -1.0)
        for m, w in zip(committee.members, committee.member_weights)
    )
    return abs(s) / total
