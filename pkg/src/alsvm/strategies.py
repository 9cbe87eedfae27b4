"""The five selection strategies for pool-based active learning.

Each strategy picks the next batch of query ids from the unlabeled pool:

- ``closest-pa`` and ``closest-nopa``: smallest ``|w . x + b|`` under a
  single SVM (asymmetric costs for the former, symmetric for the latter).
- ``random-pa``: uniform sampling without replacement.
- ``qbag-pa``: highest vote entropy under a bagged committee.
- ``qboost-pa``: lowest weighted vote margin under a boosted committee.

All selections are deterministic given the round seed; ties are broken
by a seeded hash of the ids so reruns are bit-for-bit identical.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .committee import Committee, build_bagged_committee, build_boosted_committee
from .dataset import Dataset
from .seeding import derive_seed, mix_ids, rng_for
from .svm import SvmModel, TrainConfig, decision_values, train

__all__ = [
    "StrategyId",
    "SelectionContext",
    "FittedLearner",
    "fit_strategy",
    "select_closest",
    "select_random",
    "select_qbc",
    "select_from_fit",
    "select_batch",
]


class StrategyId(str, Enum):
    """Closed set of strategy names; values double as the CLI spelling."""

    CLOSEST_PA = "closest-pa"
    CLOSEST_NOPA = "closest-nopa"
    RANDOM_PA = "random-pa"
    QBAG_PA = "qbag-pa"
    QBOOST_PA = "qboost-pa"

    @classmethod
    def from_name(cls, name: str) -> "StrategyId":
        for member in cls:
            if member.value == name:
                return member
        valid = ", ".join(m.value for m in cls)
        raise ValueError(f"unknown strategy {name!r}; valid names: {valid}")

    @property
    def uses_pa(self) -> bool:
        return self is not StrategyId.CLOSEST_NOPA

    @property
    def uses_committee(self) -> bool:
        return self in (StrategyId.QBAG_PA, StrategyId.QBOOST_PA)


@dataclass(frozen=True)
class SelectionContext:
    """Everything a strategy needs to pick one batch.

    ``round_seed`` feeds every stochastic act this round (random draws,
    bag resamples, tie-break hashes), so a round is replayable from the
    context alone.
    """

    labeled_ids: tuple[int, ...]
    unlabeled_ids: tuple[int, ...]
    pa: float
    batch_size: int
    committee_size: int = 5
    round_seed: int = 0

    def __post_init__(self) -> None:
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.committee_size < 1:
            raise ValueError(f"committee_size must be >= 1, got {self.committee_size}")
        if not (self.pa > 0):
            raise ValueError(f"pa must be positive, got {self.pa}")


@dataclass(frozen=True)
class FittedLearner:
    """What a strategy trained this round: a single model or a committee."""

    strategy: StrategyId
    model: SvmModel | None = None
    committee: Committee | None = None

    def __post_init__(self) -> None:
        if (self.model is None) == (self.committee is None):
            raise ValueError("exactly one of model/committee must be set")

    def predictions(self, dataset: Dataset, ids) -> np.ndarray:
        """Hard ±1 predictions; committee = weighted vote, ties negative."""
        if self.committee is not None:
            scores = self.committee.weighted_vote_values(dataset, ids)
        else:
            scores = decision_values(self.model, dataset, ids)
        return np.where(scores > 0.0, 1, -1).astype(np.int64)


def _sorted_ids(ids) -> np.ndarray:
    return np.asarray(sorted(ids), dtype=np.int64)


def _require_unlabeled(ctx: SelectionContext) -> np.ndarray:
    ids = _sorted_ids(ctx.unlabeled_ids)
    if ids.size == 0:
        raise ValueError("unlabeled pool is empty")
    return ids


def select_closest(model: SvmModel, dataset: Dataset, ctx: SelectionContext) -> list[int]:
    """Ids with the smallest ``|decision_value|``, batch-size many.

    Ties go to the smaller seeded id-hash, so equal margins still give a
    deterministic, seed-dependent batch.
    """
    ids = _require_unlabeled(ctx)
    scores = np.abs(decision_values(model, dataset, ids))
    tie = mix_ids(ctx.round_seed, ids)
    order = np.lexsort((tie, scores))
    m = min(ctx.batch_size, ids.size)
    return [int(i) for i in ids[order[:m]]]


def select_random(ctx: SelectionContext) -> list[int]:
    """Uniform sample without replacement, deterministic per round seed."""
    ids = _require_unlabeled(ctx)
    rng = rng_for(ctx.round_seed, "select-random")
    m = min(ctx.batch_size, ids.size)
    pick = rng.choice(ids.size, size=m, replace=False)
    return [int(i) for i in ids[pick]]


def _entropy_of_fraction(v: np.ndarray) -> np.ndarray:
    out = np.zeros_like(v)
    inner = (v > 0.0) & (v < 1.0)
    vi = v[inner]
    out[inner] = -vi * np.log2(vi) - (1.0 - vi) * np.log2(1.0 - vi)
    return out


def select_qbc(committee: Committee, dataset: Dataset, ctx: SelectionContext) -> list[int]:
    """Most-disagreed-upon ids under the committee, batch-size many.

    Bagged committees rank by descending vote entropy; boosted ones by
    ascending weighted vote margin.  Ties go first to the smaller
    absolute mean member decision value, then to the seeded id-hash.
    """
    ids = _require_unlabeled(ctx)
    votes = committee.votes(dataset, ids)
    values = committee.member_decision_values(dataset, ids)
    if committee.kind == "bagged":
        positive_fraction = np.mean(votes > 0.0, axis=0)
        primary = -_entropy_of_fraction(positive_fraction)
    else:
        weights = np.asarray(committee.member_weights, dtype=np.float64)
        primary = np.abs(weights @ votes) / weights.sum()
    secondary = np.abs(values.mean(axis=0))
    tie = mix_ids(ctx.round_seed, ids)
    order = np.lexsort((tie, secondary, primary))
    m = min(ctx.batch_size, ids.size)
    return [int(i) for i in ids[order[:m]]]


def fit_strategy(
    strategy: StrategyId,
    dataset: Dataset,
    ctx: SelectionContext,
    base_config: TrainConfig = TrainConfig(),
) -> FittedLearner:
    """Train whatever the strategy needs on the current labeled set.

    PA comes from the context for the PA strategies and is forced to 1
    for ``closest-nopa``.  Every strategy trains something: the random
    learner's model is used for evaluation even though selection ignores
    it.
    """
    pa = ctx.pa if strategy.uses_pa else 1.0
    config = replace(base_config, pa=pa)
    labeled = _sorted_ids(ctx.labeled_ids)
    if strategy is StrategyId.QBAG_PA:
        committee = build_bagged_committee(
            dataset, labeled, ctx.committee_size, config,
            seed=derive_seed(ctx.round_seed, "committee"),
        )
        return FittedLearner(strategy=strategy, committee=committee)
    if strategy is StrategyId.QBOOST_PA:
        committee = build_boosted_committee(
            dataset, labeled, ctx.committee_size, config,
            seed=derive_seed(ctx.round_seed, "committee"),
        )
        return FittedLearner(strategy=strategy, committee=committee)
    model = train(dataset, labeled, config, seed=derive_seed(ctx.round_seed, "train"))
    return FittedLearner(strategy=strategy, model=model)


def select_from_fit(fit: FittedLearner, dataset: Dataset, ctx: SelectionContext) -> list[int]:
    """Pick the batch using an already-fitted learner."""
    if fit.strategy is StrategyId.RANDOM_PA:
        return select_random(ctx)
    if fit.committee is not None:
        return select_qbc(fit.committee, dataset, ctx)
    return select_closest(fit.model, dataset, ctx)


def select_batch(
    strategy: StrategyId,
    dataset: Dataset,
    ctx: SelectionContext,
    base_config: TrainConfig = TrainConfig(),
) -> list[int]:
    """Train per the strategy and return the next query batch."""
    fit = fit_strategy(strategy, dataset, ctx, base_config)
    return select_from_fit(fit, dataset, ctx)
