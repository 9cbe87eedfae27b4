"""Active-learning simulation driver and evaluation metrics.

``run_simulation`` replays the full protocol against a pool with
held-out oracle labels: draw a seeded initial sample, fix the
positive-amplification ratio from its class counts, then loop
train / evaluate / select until the pool or the label budget runs out.
The output is a ``LearningCurve`` of per-round precision/recall/F.

The rest of the module computes the comparison metrics: the target F
measure (baseline F averaged over the last 100 training examples), data
utilization counts and ratios against a baseline learner, paired
t-tests, plateau detection, and macro-averaging across categories.
CSV readers and writers for curves and reports live here too.
"""

from __future__ import annotations

import csv
import io
import math
import os
import re
import tempfile
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy import stats

from .committee import Committee
from .dataset import Dataset
from .prevalence import SampleSizeSpec, corrected_sample_size, estimate_pa, z_for_confidence
from .seeding import derive_seed, rng_for
from .strategies import FittedLearner, SelectionContext, StrategyId, fit_strategy, select_from_fit
from .svm import SvmModel, TrainConfig, decision_values

__all__ = [
    "ALConfig",
    "EvalPoint",
    "LearningCurve",
    "TTestResult",
    "StrategyCell",
    "UtilizationRow",
    "UtilizationReport",
    "evaluate",
    "run_simulation",
    "target_f",
    "data_utilization",
    "paired_t_test",
    "detect_plateau",
    "plateau_mean_f",
    "macro_average",
    "build_utilization_report",
    "curve_to_csv",
    "write_curve_csv",
    "read_curves_csv",
    "utilization_to_csv",
    "ttest_rows",
    "ttests_to_csv",
    "plateaus_to_csv",
    "atomic_write_text",
]

DEFAULT_BATCH_SIZE = 20
DEFAULT_INITIAL_SIZE = 100
DEFAULT_COMMITTEE_SIZE = 5
DEFAULT_TARGET_WINDOW = 100
DEFAULT_PLATEAU_WINDOW = 5
DEFAULT_PLATEAU_DELTA = 0.005
DEFAULT_PLATEAU_PATIENCE = 3

# Planning defaults used when initial_size="auto": 95% confidence and a
# 0.05 error bound at worst-case prevalence 0.5.
AUTO_CONFIDENCE = 0.95
AUTO_ERROR = 0.05

CURVE_HEADER = ["strategy", "unit", "num_labeled", "tp", "fp", "fn",
                "precision", "recall", "f1", "pa"]


@dataclass(frozen=True)
class ALConfig:
    """Configuration for one simulated active-learning run."""

    strategy: StrategyId
    batch_size: int = DEFAULT_BATCH_SIZE
    initial_size: int | str = DEFAULT_INITIAL_SIZE
    committee_size: int = DEFAULT_COMMITTEE_SIZE
    c_negative: float = 1.0
    master_seed: int = 0
    budget: int | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.strategy, StrategyId):
            raise ValueError(f"strategy must be a StrategyId, got {self.strategy!r}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.committee_size < 1:
            raise ValueError(f"committee_size must be >= 1, got {self.committee_size}")
        if not (self.c_negative > 0):
            raise ValueError(f"c_negative must be positive, got {self.c_negative}")
        if isinstance(self.initial_size, str):
            if self.initial_size != "auto":
                raise ValueError(f"initial_size must be a positive int or 'auto', got {self.initial_size!r}")
        elif self.initial_size < 1:
            raise ValueError(f"initial_size must be >= 1, got {self.initial_size}")
        if self.budget is not None and self.budget < 1:
            raise ValueError(f"budget must be >= 1, got {self.budget}")


@dataclass(frozen=True)
class EvalPoint:
    """One learning-curve point: counts and derived P/R/F at a label count.

    Counts are integers for real evaluations; macro-averaged curves
    carry fractional mean counts, with P/R/F averaged independently.
    """

    num_labeled: int
    tp: float
    fp: float
    fn: float
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, num_labeled: int, tp: int, fp: int, fn: int) -> "EvalPoint":
        """Derive P/R/F with the empty-denominator conventions.

        An empty prediction set gives precision 1.0; no actual positives
        give recall 1.0; F is 0 when precision + recall is 0.
        """
        if min(tp, fp, fn) < 0:
            raise ValueError("counts must be nonnegative")
        precision = tp / (tp + fp) if tp + fp > 0 else 1.0
        recall = tp / (tp + fn) if tp + fn > 0 else 1.0
        f1 = 0.0 if precision + recall == 0 else 2 * precision * recall / (precision + recall)
        return cls(num_labeled=num_labeled, tp=tp, fp=fp, fn=fn,
                   precision=precision, recall=recall, f1=f1)


@dataclass(frozen=True)
class LearningCurve:
    """Evaluation points ordered by labeled-set size for one run.

    ``unit`` names the fold or category the run belongs to;
    ``pa_used`` is the cost ratio held fixed for the whole run.
    ``train_seconds`` is bookkeeping (total fitting wall time) and is
    not serialized.
    """

    strategy: StrategyId
    unit: str
    points: tuple[EvalPoint, ...]
    pa_used: float
    train_seconds: float = field(default=0.0, compare=False)

    def __post_init__(self) -> None:
        if not self.points:
            raise ValueError("a learning curve needs at least one point")
        sizes = [p.num_labeled for p in self.points]
        if any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ValueError("num_labeled must be strictly increasing")

    @property
    def max_num_labeled(self) -> int:
        return self.points[-1].num_labeled

    def f_values(self) -> np.ndarray:
        return np.array([p.f1 for p in self.points], dtype=np.float64)


def _hard_predictions(predictor, dataset: Dataset, ids: np.ndarray) -> np.ndarray:
    if isinstance(predictor, FittedLearner):
        return predictor.predictions(dataset, ids)
    if isinstance(predictor, Committee):
        scores = predictor.weighted_vote_values(dataset, ids)
    elif isinstance(predictor, SvmModel):
        scores = decision_values(predictor, dataset, ids)
    else:
        raise TypeError(f"cannot evaluate {type(predictor).__name__}")
    return np.where(scores > 0.0, 1, -1).astype(np.int64)


def evaluate(predictor, dataset: Dataset, test_ids, num_labeled: int = 0) -> EvalPoint:
    """Score hard predictions on the test ids.

    ``predictor`` is a model, a committee (weighted vote, ties
    negative), or a ``FittedLearner`` wrapping either.
    """
    ids = np.asarray(sorted(test_ids), dtype=np.int64)
    if ids.size == 0:
        raise ValueError("test set is empty")
    preds = _hard_predictions(predictor, dataset, ids)
    y = dataset.labels(ids)
    tp = int(np.sum((preds == 1) & (y == 1)))
    fp = int(np.sum((preds == 1) & (y == -1)))
    fn = int(np.sum((preds == -1) & (y == 1)))
    return EvalPoint.from_counts(num_labeled, tp, fp, fn)


def resolve_initial_size(initial_size: int | str, pool_size: int) -> int:
    """Turn ``"auto"`` into a corrected sample size for the pool."""
    if initial_size == "auto":
        spec = SampleSizeSpec(z=z_for_confidence(AUTO_CONFIDENCE), e=AUTO_ERROR,
                              p=0.5, population=pool_size)
        return corrected_sample_size(spec)
    return int(initial_size)


def run_simulation(
    dataset: Dataset,
    pool_ids,
    test_ids,
    config: ALConfig,
    unit: str = "pool",
) -> LearningCurve:
    """Simulate pool-based active learning with held-out oracle labels.

    The initial sample and the cost ratio derived from it depend only on
    the master seed, not on the strategy, so runs of different
    strategies from one seed are paired: same starting labeled set, same
    PA.  Everything downstream is deterministic as well.
    """
    pool = np.asarray(sorted(pool_ids), dtype=np.int64)
    test = np.asarray(sorted(test_ids), dtype=np.int64)
    if pool.size == 0:
        raise ValueError("pool is empty")
    if test.size == 0:
        raise ValueError("test set is empty")
    if np.intersect1d(pool, test).size:
        raise ValueError("pool and test sets overlap")

    initial_size = resolve_initial_size(config.initial_size, pool.size)
    if initial_size > pool.size:
        raise ValueError(f"initial_size {initial_size} exceeds pool size {pool.size}")
    budget = pool.size if config.budget is None else min(config.budget, pool.size)
    if budget < initial_size:
        raise ValueError(f"budget {budget} is below initial_size {initial_size}")

    rng = rng_for(config.master_seed, "init-sample")
    chosen = rng.choice(pool.size, size=initial_size, replace=False)
    labeled = np.sort(pool[chosen])
    unlabeled = np.setdiff1d(pool, labeled)

    pa = estimate_pa(dataset.labels(labeled)).pa if config.strategy.uses_pa else 1.0
    base_config = TrainConfig(c_negative=config.c_negative, pa=1.0)

    points: list[EvalPoint] = []
    train_seconds = 0.0
    round_index = 0
    while True:
        ctx = SelectionContext(
            labeled_ids=tuple(int(i) for i in labeled),
            unlabeled_ids=tuple(int(i) for i in unlabeled),
            pa=pa,
            batch_size=config.batch_size,
            committee_size=config.committee_size,
            round_seed=derive_seed(config.master_seed, "round", round_index),
        )
        started = time.perf_counter()
        fit = fit_strategy(config.strategy, dataset, ctx, base_config)
        train_seconds += time.perf_counter() - started
        points.append(evaluate(fit, dataset, test, num_labeled=labeled.size))
        allowed = min(config.batch_size, unlabeled.size, budget - labeled.size)
        if allowed <= 0:
            break
        batch = np.asarray(
            select_from_fit(fit, dataset, replace(ctx, batch_size=int(allowed))),
            dtype=np.int64,
        )
        labeled = np.sort(np.concatenate([labeled, batch]))
        unlabeled = np.setdiff1d(unlabeled, batch)
        round_index += 1

    return LearningCurve(
        strategy=config.strategy,
        unit=unit,
        points=tuple(points),
        pa_used=pa,
        train_seconds=train_seconds,
    )


def target_f(baseline_curve: LearningCurve, window: int = DEFAULT_TARGET_WINDOW) -> float:
    """Mean F over the points within the last ``window`` training examples."""
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    cutoff = baseline_curve.max_num_labeled - window
    tail = [p.f1 for p in baseline_curve.points if p.num_labeled > cutoff]
    return float(np.mean(tail))


def data_utilization(curve: LearningCurve, target: float) -> tuple[int, bool]:
    """Labels needed to first reach ``target`` F.

    Returns the ``num_labeled`` of the first point whose F meets the
    target (later dips do not matter).  If the curve never reaches it,
    returns the final ``num_labeled`` and ``False``.
    """
    for p in curve.points:
        if p.f1 >= target:
            return p.num_labeled, True
    return curve.max_num_labeled, False


@dataclass(frozen=True)
class TTestResult:
    t: float
    p_value: float
    significant: bool


def paired_t_test(pairs: Sequence[tuple[float, float]], alpha: float = 0.05) -> TTestResult:
    """Two-sided paired t-test on differences ``a_i - b_i``.

    Uses the sample standard deviation (n-1 denominator).  Degenerate
    zero-variance differences are significant exactly when their common
    value is nonzero.
    """
    if len(pairs) < 2:
        raise ValueError(f"need at least 2 pairs, got {len(pairs)}")
    d = np.array([a - b for a, b in pairs], dtype=np.float64)
    n = d.size
    mean = float(d.mean())
    sd = float(d.std(ddof=1))
    if sd == 0.0:
        if mean == 0.0:
            return TTestResult(t=0.0, p_value=1.0, significant=False)
        return TTestResult(t=math.copysign(math.inf, mean), p_value=0.0, significant=True)
    t = mean / (sd / math.sqrt(n))
    p = 2.0 * float(stats.t.sf(abs(t), df=n - 1))
    return TTestResult(t=t, p_value=p, significant=p < alpha)


def detect_plateau(
    curve: LearningCurve,
    window: int = DEFAULT_PLATEAU_WINDOW,
    delta: float = DEFAULT_PLATEAU_DELTA,
    patience: int = DEFAULT_PLATEAU_PATIENCE,
) -> int | None:
    """First ``num_labeled`` at which F has stopped improving.

    Slides a ``window``-point mean along the curve; a step whose
    windowed mean improves by less than ``delta`` over the previous
    step counts toward ``patience``.  Returns the ``num_labeled`` at
    which ``patience`` consecutive such steps have accumulated, or None.
    """
    if window < 2:
        raise ValueError(f"window must be >= 2, got {window}")
    if patience < 1:
        raise ValueError(f"patience must be >= 1, got {patience}")
    f = curve.f_values()
    if f.size < window + 1:
        return None
    kernel = np.full(window, 1.0 / window)
    means = np.convolve(f, kernel, mode="valid")
    streak = 0
    for j in range(1, means.size):
        if means[j] - means[j - 1] < delta:
            streak += 1
            if streak >= patience:
                return curve.points[j + window - 1].num_labeled
        else:
            streak = 0
    return None


def plateau_mean_f(
    curve: LearningCurve,
    window: int = DEFAULT_PLATEAU_WINDOW,
    delta: float = DEFAULT_PLATEAU_DELTA,
    patience: int = DEFAULT_PLATEAU_PATIENCE,
) -> float:
    """Mean F over the plateau region.

    The region starts at the detected plateau point; if no plateau is
    detected, the final ``window`` points stand in for it.
    """
    start = detect_plateau(curve, window, delta, patience)
    if start is None:
        tail = curve.points[-window:]
    else:
        tail = [p for p in curve.points if p.num_labeled >= start]
    return float(np.mean([p.f1 for p in tail]))


def macro_average(curves: Sequence[LearningCurve]) -> LearningCurve:
    """Pointwise mean of per-category curves on an identical label grid.

    Precision, recall, and F are averaged independently (macro
    averaging); the counts carried along are plain means, for reference
    only.
    """
    if not curves:
        raise ValueError("no curves to average")
    grids = {tuple(p.num_labeled for p in c.points) for c in curves}
    if len(grids) != 1:
        raise ValueError("curves are not aligned on the same num_labeled grid")
    points = []
    for i, nl in enumerate(grids.pop()):
        group = [c.points[i] for c in curves]
        points.append(EvalPoint(
            num_labeled=nl,
            tp=float(np.mean([p.tp for p in group])),
            fp=float(np.mean([p.fp for p in group])),
            fn=float(np.mean([p.fn for p in group])),
            precision=float(np.mean([p.precision for p in group])),
            recall=float(np.mean([p.recall for p in group])),
            f1=float(np.mean([p.f1 for p in group])),
        ))
    return LearningCurve(
        strategy=curves[0].strategy,
        unit="macro",
        points=tuple(points),
        pa_used=float(np.mean([c.pa_used for c in curves])),
    )


@dataclass(frozen=True)
class StrategyCell:
    """One learner's numbers for one unit of a utilization report."""

    count: float
    ratio: float
    reached: bool


@dataclass(frozen=True)
class UtilizationRow:
    unit: str
    total_size: float
    baseline_count: float
    baseline_reached: bool
    target_f: float
    cells: tuple[tuple[str, StrategyCell], ...]

    def cell(self, learner: str) -> StrategyCell:
        for name, c in self.cells:
            if name == learner:
                return c
        raise KeyError(learner)


@dataclass(frozen=True)
class UtilizationReport:
    """Per-unit data-utilization counts and ratios against a baseline.

    The averages row uses the arithmetic mean of per-unit ratios, not
    the ratio of mean counts.
    """

    baseline: str
    learners: tuple[str, ...]
    rows: tuple[UtilizationRow, ...]

    def mean_total(self) -> float:
        return float(np.mean([r.total_size for r in self.rows]))

    def mean_baseline_count(self) -> float:
        return float(np.mean([r.baseline_count for r in self.rows]))

    def mean_target_f(self) -> float:
        return float(np.mean([r.target_f for r in self.rows]))

    def mean_count(self, learner: str) -> float:
        return float(np.mean([r.cell(learner).count for r in self.rows]))

    def mean_ratio(self, learner: str) -> float:
        return float(np.mean([r.cell(learner).ratio for r in self.rows]))

    def reached_count(self, learner: str) -> int:
        return sum(1 for r in self.rows if r.cell(learner).reached)


def _natural_key(text: str) -> tuple:
    return tuple(int(tok) if tok.isdigit() else tok
                 for tok in re.split(r"(\d+)", text) if tok != "")


def build_utilization_report(
    curves: Sequence[LearningCurve],
    baseline: str,
    window: int = DEFAULT_TARGET_WINDOW,
) -> UtilizationReport:
    """Compute the utilization table from a pile of learning curves.

    ``baseline`` names the strategy whose tail F sets the per-unit
    target.  Every strategy present must cover exactly the baseline's
    units.  With no other strategy present, the baseline is compared
    against itself (all ratios 1).
    """
    by_key: dict[tuple[str, str], LearningCurve] = {}
    for c in curves:
        key = (c.strategy.value, c.unit)
        if key in by_key:
            raise ValueError(f"duplicate curve for strategy {key[0]!r} unit {key[1]!r}")
        by_key[key] = c
    strategies = sorted({s for s, _ in by_key})
    if baseline not in strategies:
        raise ValueError(f"no curves found for baseline strategy {baseline!r}")
    units = sorted((u for s, u in by_key if s == baseline), key=_natural_key)
    for s in strategies:
        covered = {u for s2, u in by_key if s2 == s}
        if covered != set(units):
            raise ValueError(f"strategy {s!r} does not cover the baseline units")
    learners = tuple(s for s in strategies if s != baseline) or (baseline,)

    rows = []
    for unit in units:
        baseline_curve = by_key[(baseline, unit)]
        target = target_f(baseline_curve, window)
        b_count, b_reached = data_utilization(baseline_curve, target)
        cells = []
        for learner in learners:
            count, reached = data_utilization(by_key[(learner, unit)], target)
            cells.append((learner, StrategyCell(
                count=count, ratio=count / b_count, reached=reached,
            )))
        rows.append(UtilizationRow(
            unit=unit,
            total_size=baseline_curve.max_num_labeled,
            baseline_count=b_count,
            baseline_reached=b_reached,
            target_f=target,
            cells=tuple(cells),
        ))
    return UtilizationReport(baseline=baseline, learners=learners, rows=tuple(rows))


def ttest_rows(report: UtilizationReport, alpha: float = 0.05) -> list[dict]:
    """Paired t-tests of each learner against the baseline.

    Two variants per learner: raw per-unit counts, and per-unit ratios
    against the constant 1.  Needs at least two units.
    """
    out = []
    baseline_counts = [r.baseline_count for r in report.rows]
    for learner in report.learners:
        counts = [r.cell(learner).count for r in report.rows]
        ratios = [r.cell(learner).ratio for r in report.rows]
        for variant, pairs in (
            ("counts", list(zip(counts, baseline_counts))),
            ("ratios", [(x, 1.0) for x in ratios]),
        ):
            res = paired_t_test(pairs, alpha)
            out.append({
                "learner": learner,
                "baseline": report.baseline,
                "variant": variant,
                "n": len(pairs),
                "t": res.t,
                "p_value": res.p_value,
                "significant": res.significant,
            })
    return out


def atomic_write_text(path: str | Path, text: str) -> None:
    """Write a file via a temp sibling and rename, so readers never see
    a partial file and concurrent writers cannot interleave."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _format_count(value: float) -> str:
    if float(value) == int(value):
        return str(int(value))
    return f"{value:.6f}"


def curve_to_csv(curve: LearningCurve) -> str:
    """Serialize one curve; floats use fixed 6-decimal formatting."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CURVE_HEADER)
    for p in curve.points:
        writer.writerow([
            curve.strategy.value,
            curve.unit,
            p.num_labeled,
            _format_count(p.tp),
            _format_count(p.fp),
            _format_count(p.fn),
            f"{p.precision:.6f}",
            f"{p.recall:.6f}",
            f"{p.f1:.6f}",
            f"{curve.pa_used:.6f}",
        ])
    return buf.getvalue()


def write_curve_csv(curve: LearningCurve, path: str | Path) -> None:
    atomic_write_text(path, curve_to_csv(curve))


def read_curves_csv(path: str | Path) -> list[LearningCurve]:
    """Read curves back from CSV; rows group by (strategy, unit)."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty curve file") from None
        if header != CURVE_HEADER:
            raise ValueError(f"{path}: unexpected header {header!r}")
        groups: dict[tuple[str, str], list] = {}
        pas: dict[tuple[str, str], float] = {}
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(CURVE_HEADER):
                raise ValueError(f"{path}:{lineno}: expected {len(CURVE_HEADER)} fields")
            try:
                key = (row[0], row[1])
                point = EvalPoint(
                    num_labeled=int(row[2]),
                    tp=float(row[3]), fp=float(row[4]), fn=float(row[5]),
                    precision=float(row[6]), recall=float(row[7]), f1=float(row[8]),
                )
                pas[key] = float(row[9])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            groups.setdefault(key, []).append(point)
    return [
        LearningCurve(strategy=StrategyId.from_name(strategy), unit=unit,
                      points=tuple(points), pa_used=pas[(strategy, unit)])
        for (strategy, unit), points in groups.items()
    ]


def utilization_to_csv(report: UtilizationReport) -> str:
    """Serialize the report with a final ``average`` row.

    Columns: unit, total_size, baseline_count, then a count/ratio pair
    per learner, then target_f and per-learner reached flags.  The
    average row carries mean counts, mean-of-ratios, and reached
    fractions.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["unit", "total_size", "baseline_count"]
    for learner in report.learners:
        header += [f"{learner}_count", f"{learner}_ratio"]
    header += ["target_f", "reached_flags"]
    writer.writerow(header)
    for r in report.rows:
        row = [r.unit, _format_count(r.total_size), _format_count(r.baseline_count)]
        for learner in report.learners:
            cell = r.cell(learner)
            row += [_format_count(cell.count), f"{cell.ratio:.6f}"]
        flags = [f"{report.baseline}={str(r.baseline_reached).lower()}"]
        flags += [
            f"{learner}={str(r.cell(learner).reached).lower()}"
            for learner in report.learners if learner != report.baseline
        ]
        row += [f"{r.target_f:.6f}", ";".join(flags)]
        writer.writerow(row)
    n = len(report.rows)
    avg = ["average", _format_count(report.mean_total()), _format_count(report.mean_baseline_count())]
    for learner in report.learners:
        avg += [_format_count(report.mean_count(learner)), f"{report.mean_ratio(learner):.6f}"]
    reached = [f"{report.baseline}={sum(1 for r in report.rows if r.baseline_reached)}/{n}"]
    reached += [
        f"{learner}={report.reached_count(learner)}/{n}"
        for learner in report.learners if learner != report.baseline
    ]
    avg += [f"{report.mean_target_f():.6f}", ";".join(reached)]
    writer.writerow(avg)
    return buf.getvalue()


def ttests_to_csv(rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["learner", "baseline", "variant", "n", "t", "p_value", "significant"])
    for row in rows:
        t = row["t"]
        writer.writerow([
            row["learner"], row["baseline"], row["variant"], row["n"],
            "inf" if math.isinf(t) else f"{t:.6f}",
            f"{row['p_value']:.6f}",
            str(row["significant"]).lower(),
        ])
    return buf.getvalue()


def plateaus_to_csv(
    curves: Sequence[LearningCurve],
    window: int = DEFAULT_PLATEAU_WINDOW,
    delta: float = DEFAULT_PLATEAU_DELTA,
    patience: int = DEFAULT_PLATEAU_PATIENCE,
) -> str:
    """Plateau markers per curve: start point (empty if none) and mean F."""
    ordered = sorted(curves, key=lambda c: (c.strategy.value, _natural_key(c.unit)))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["strategy", "unit", "plateau_num_labeled", "plateau_mean_f"])
    for c in ordered:
        start = detect_plateau(c, window, delta, patience)
        writer.writerow([
            c.strategy.value,
            c.unit,
            "" if start is None else start,
            f"{plateau_mean_f(c, window, delta, patience):.6f}",
        ])
    return buf.getvalue()
