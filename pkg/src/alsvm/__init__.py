"""Cost-sensitive pool-based active learning with linear SVMs.

The package simulates active learning for imbalanced binary
classification: an asymmetric-cost SVM trained by dual coordinate
descent, five selection strategies (closest-to-hyperplane with and
without cost amplification, random, and query-by-committee via bagging
or boosting), and the evaluation protocol built around learning curves,
target-F data utilization, and paired t-tests.
"""

from .committee import (
    BoostRound,
    Committee,
    binary_entropy,
    build_bagged_committee,
    build_boosted_committee,
    vote_entropy,
    weighted_vote_margin,
)
from .dataset import (
    Dataset,
    DatasetFormatError,
    Example,
    FoldSplit,
    SparseVector,
    generate_synthetic,
    kfold_split,
    load_sparse_text,
    save_sparse_text,
)
from .harness import (
    ALConfig,
    EvalPoint,
    LearningCurve,
    StrategyCell,
    TTestResult,
    UtilizationReport,
    UtilizationRow,
    atomic_write_text,
    build_utilization_report,
    curve_to_csv,
    data_utilization,
    detect_plateau,
    evaluate,
    macro_average,
    paired_t_test,
    plateau_mean_f,
    plateaus_to_csv,
    read_curves_csv,
    resolve_initial_size,
    run_simulation,
    target_f,
    ttest_rows,
    ttests_to_csv,
    utilization_to_csv,
    write_curve_csv,
)
from .prevalence import (
    PaEstimate,
    SampleSizeSpec,
    check_normal_approx,
    corrected_sample_size,
    estimate_pa,
    sampling_error,
    uncorrected_sample_size,
    z_for_confidence,
)
from .seeding import derive_seed, mix_ids, rng_for
from .strategies import (
    FittedLearner,
    SelectionContext,
    StrategyId,
    fit_strategy,
    select_batch,
    select_closest,
    select_from_fit,
    select_qbc,
    select_random,
)
from .svm import SvmModel, TrainConfig, TrainDiagnostics, decision_values, format_model_dump, train

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ALConfig",
    "atomic_write_text",
    "binary_entropy",
    "BoostRound",
    "build_bagged_committee",
    "build_boosted_committee",
    "build_utilization_report",
    "check_normal_approx",
    "Committee",
    "corrected_sample_size",
    "curve_to_csv",
    "data_utilization",
    "Dataset",
    "DatasetFormatError",
    "decision_values",
    "derive_seed",
    "detect_plateau",
    "estimate_pa",
    "EvalPoint",
    "evaluate",
    "Example",
    "fit_strategy",
    "FittedLearner",
    "FoldSplit",
    "format_model_dump",
    "generate_synthetic",
    "kfold_split",
    "LearningCurve",
    "load_sparse_text",
    "macro_average",
    "mix_ids",
    "PaEstimate",
    "paired_t_test",
    "plateau_mean_f",
    "plateaus_to_csv",
    "read_curves_csv",
    "resolve_initial_size",
    "rng_for",
    "run_simulation",
    "SampleSizeSpec",
    "sampling_error",
    "save_sparse_text",
    "select_batch",
    "select_closest",
    "select_from_fit",
    "select_qbc",
    "select_random",
    "SelectionContext",
    "SparseVector",
    "StrategyCell",
    "StrategyId",
    "SvmModel",
    "target_f",
    "train",
    "TrainConfig",
    "TrainDiagnostics",
    "ttest_rows",
    "TTestResult",
    "ttests_to_csv",
    "uncorrected_sample_size",
    "utilization_to_csv",
    "UtilizationReport",
    "UtilizationRow",
    "vote_entropy",
    "weighted_vote_margin",
    "write_curve_csv",
    "z_for_confidence",
]
