"""Shared fixtures: tiny datasets and the reference utilization study."""

from __future__ import annotations

import numpy as np

from alsvm import Dataset, Example, EvalPoint, LearningCurve, SparseVector, StrategyId

# Ten-fold utilization study used as a regression fixture: per-fold pool
# sizes, per-strategy label counts at which each learner first reached
# the fold's target F, and the target F itself (percent).
STUDY_TOTALS = (5020, 5260, 5020, 4820, 5100, 4820, 5160, 5180, 5180, 5020)
STUDY_COUNTS = {
    "random-pa": (3660, 2020, 2920, 2360, 4180, 860, 3240, 3400, 5000, 3400),
    "qbag-pa": (1440, 1500, 2320, 3420, 1460, 1920, 1740, 2700, 2080, 2040),
    "qboost-pa": (1920, 940, 1420, 2460, 1220, 3700, 1360, 2060, 1600, 2840),
    "closest-pa": (1100, 660, 2920, 2640, 440, 400, 1760, 2840, 900, 2420),
}
STUDY_TARGET_F = (56.23, 55.98, 58.43, 52.88, 46.07, 55.74, 60.80, 59.83, 67.90, 55.59)


def flat_point(num_labeled: int, f: float) -> EvalPoint:
    """A curve point carrying only an F value (counts unused)."""
    return EvalPoint(num_labeled=num_labeled, tp=0, fp=0, fn=0,
                     precision=f, recall=f, f1=f)


def curve_from_f(strategy: StrategyId, unit: str, pairs, pa: float = 1.0) -> LearningCurve:
    """Build a curve from (num_labeled, f) pairs."""
    return LearningCurve(
        strategy=strategy,
        unit=unit,
        points=tuple(flat_point(n, f) for n, f in pairs),
        pa_used=pa,
    )


def study_curves() -> list[LearningCurve]:
    """Synthesize learning curves that reproduce the reference study.

    Each curve starts below target at 100 labels, first reaches the
    fold's target F exactly at the recorded count, and stays there to
    the end of the pool; the baseline's last-window mean then equals the
    target, and every first crossing lands on the recorded count.
    """
    curves = []
    for strategy_name, counts in STUDY_COUNTS.items():
        strategy = StrategyId.from_name(strategy_name)
        for fold, (total, count, pct) in enumerate(zip(STUDY_TOTALS, counts, STUDY_TARGET_F)):
            f = pct / 100.0
            pairs = [(100, 0.0), (count, f)]
            if count != total:
                pairs.append((total, f))
            curves.append(curve_from_f(strategy, f"fold{fold}", pairs))
    return curves


def write_study_csvs(directory) -> None:
    """Write the study curves as one CSV per strategy into `directory`."""
    from alsvm import curve_to_csv

    directory.mkdir(parents=True, exist_ok=True)
    by_strategy: dict = {}
    for curve in study_curves():
        by_strategy.setdefault(curve.strategy, []).append(curve)
    for strategy, curves in by_strategy.items():
        chunks = [curve_to_csv(c) for c in curves]
        body = chunks[0] + "".join(c.split("\n", 1)[1] for c in chunks[1:])
        (directory / f"{strategy.value}.csv").write_text(body)


def dense_dataset(rows: np.ndarray, labels) -> Dataset:
    """Dataset from a dense feature matrix, ids 0..n-1."""
    examples = []
    for i, (row, label) in enumerate(zip(np.atleast_2d(rows), labels)):
        entries = tuple(
            (j + 1, float(v)) for j, v in enumerate(np.atleast_1d(row)) if v != 0.0
        )
        examples.append(Example(features=SparseVector(entries=entries), label=int(label), id=i))
    return Dataset.from_examples(examples)


def line_dataset(values, labels) -> Dataset:
    """One-feature dataset at the given coordinates."""
    return dense_dataset(np.asarray(values, dtype=np.float64)[:, None], labels)
