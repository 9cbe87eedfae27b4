"""Command-line front end.

Subcommands:

- ``samplesize``: two-step sample-size planning (uncorrected estimate,
  finite-population correction, achieved error echo).
- ``gen-synth``: write a synthetic imbalanced dataset in sparse text.
- ``simulate``: run active-learning simulations over folds or a fixed
  train/test split; one learning-curve CSV per strategy and fold.
- ``report``: turn a directory of curve CSVs into a data-utilization
  table, paired t-tests, and plateau markers.

Exit codes: 0 success, 2 usage error, 1 runtime error.  The environment
variable ``ALSVM_MASTER_SEED`` overrides ``--seed`` for ``simulate``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .dataset import (
    Dataset,
    DatasetFormatError,
    Example,
    generate_synthetic,
    kfold_split,
    load_sparse_text,
    save_sparse_text,
)
from .harness import (
    ALConfig,
    atomic_write_text,
    build_utilization_report,
    plateaus_to_csv,
    read_curves_csv,
    run_simulation,
    ttest_rows,
    ttests_to_csv,
    utilization_to_csv,
    write_curve_csv,
    CURVE_HEADER,
)
from .prevalence import (
    SampleSizeSpec,
    check_normal_approx,
    corrected_sample_size,
    sampling_error,
    uncorrected_sample_size,
    z_for_confidence,
)
from .seeding import derive_seed
from .strategies import StrategyId

SEED_ENV_VAR = "ALSVM_MASTER_SEED"
_VALID_STRATEGY_NAMES = ", ".join(s.value for s in StrategyId)


def _strategy_arg(name: str) -> StrategyId:
    try:
        return StrategyId.from_name(name)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _init_size_arg(text: str):
    if text == "auto":
        return "auto"
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer or 'auto', got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"initial size must be >= 1, got {value}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alsvm",
        description="Cost-sensitive active learning with linear SVMs.",
    )
    parser.add_argument("--version", action="version", version=f"alsvm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("samplesize", help="sample-size planning with finite population correction")
    p.add_argument("--population", type=_positive_int, default=10**9,
                   help="population size N (default: effectively infinite)")
    p.add_argument("--confidence", type=float, default=0.95,
                   help="confidence level in (0,1), default 0.95")
    p.add_argument("--z", type=float, default=None,
                   help="z-score; overrides --confidence")
    p.add_argument("--error", type=float, default=None,
                   help="tolerable sampling error e in (0,1)")
    p.add_argument("--prevalence", type=float, default=0.5,
                   help="estimated positive proportion p, default 0.5 (worst case)")
    p.add_argument("--sample-size", type=_positive_int, default=None,
                   help="report the sampling error achieved by this n instead")
    p.set_defaults(func=cmd_samplesize)

    p = sub.add_parser("gen-synth", help="generate a synthetic imbalanced dataset")
    p.add_argument("--n", type=_positive_int, required=True, help="number of examples")
    p.add_argument("--positive-fraction", type=float, required=True,
                   help="fraction of positive examples in [0,1]")
    p.add_argument("--clusters", type=_positive_int, default=3,
                   help="redundant clusters per class, default 3")
    p.add_argument("--overlap", type=float, default=0.5,
                   help="class overlap >= 0; 0 is separable, default 0.5")
    p.add_argument("--dim", type=int, default=8, help="feature dimensionality, default 8")
    p.add_argument("--duplicate-fraction", type=float, default=0.3,
                   help="fraction of near-duplicate examples, default 0.3")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    p.add_argument("--out", required=True, help="output dataset path")
    p.set_defaults(func=cmd_gen_synth)

    p = sub.add_parser("simulate", help="run active-learning simulations")
    p.add_argument("--data", help="sparse-text dataset (the pool, or the folded corpus)")
    p.add_argument("--test", help="held-out test dataset (instead of --folds)")
    p.add_argument("--folds", type=int, default=None,
                   help="number of cross-validation folds over --data")
    p.add_argument("--strategy", action="append", type=_strategy_arg, default=None,
                   metavar="NAME", help=f"one of: {_VALID_STRATEGY_NAMES}; repeatable")
    p.add_argument("--batch", type=_positive_int, default=20, help="batch size, default 20")
    p.add_argument("--init", type=_init_size_arg, default=100,
                   help="initial sample size or 'auto', default 100")
    p.add_argument("--committee", type=_positive_int, default=5,
                   help="committee size for the QBC strategies, default 5")
    p.add_argument("--c-negative", type=float, default=1.0,
                   help="negative-class cost factor, default 1.0")
    p.add_argument("--budget", type=_positive_int, default=None,
                   help="stop once this many labels are spent")
    p.add_argument("--seed", type=int, default=0,
                   help=f"master seed (env {SEED_ENV_VAR} overrides)")
    p.add_argument("--workers", type=_positive_int, default=None,
                   help="worker threads for fold/strategy fan-out")
    p.add_argument("--out", default="alsvm-out", help="output directory")
    p.add_argument("--from-manifest", default=None,
                   help="re-run a previous simulation from its manifest")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("report", help="summarize curve CSVs against a baseline")
    p.add_argument("--curves", required=True, help="directory of learning-curve CSVs")
    p.add_argument("--baseline", type=_strategy_arg, default=StrategyId.RANDOM_PA,
                   metavar="NAME", help="baseline strategy, default random-pa")
    p.add_argument("--window", type=_positive_int, default=100,
                   help="target-F window in training examples, default 100")
    p.add_argument("--plateau-window", type=_positive_int, default=5)
    p.add_argument("--plateau-delta", type=float, default=0.005)
    p.add_argument("--plateau-patience", type=_positive_int, default=3)
    p.add_argument("--out", default=None, help="output directory, default: the curves directory")
    p.set_defaults(func=cmd_report)
    return parser


def cmd_samplesize(args: argparse.Namespace) -> int:
    z = args.z if args.z is not None else z_for_confidence(args.confidence)
    p, population = args.prevalence, args.population
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"prevalence must be in [0,1], got {p}")
    if args.error is None and args.sample_size is None:
        print("error: one of --error or --sample-size is required", file=sys.stderr)
        return 2
    if args.error is not None and not (0.0 < args.error < 1.0):
        print(f"error: --error must be in (0,1), got {args.error}", file=sys.stderr)
        return 2
    print(f"z {z:.6f}")
    n_for_warning = None
    if args.error is not None:
        n0 = uncorrected_sample_size(z, p, args.error)
        n = corrected_sample_size(SampleSizeSpec(z=z, e=args.error, p=p, population=population))
        print(f"n0 {n0:.6f}")
        print(f"n {n}")
        print(f"achieved_error {sampling_error(n, z, p, population):.6f}")
        n_for_warning = n
    if args.sample_size is not None:
        print(f"sampling_error {sampling_error(args.sample_size, z, p, population):.6f}")
        n_for_warning = args.sample_size
    expected_pos = n_for_warning * p
    expected_neg = n_for_warning * (1.0 - p)
    if not check_normal_approx(expected_pos, expected_neg):
        print(
            f"warning: expected positives {expected_pos:.1f} / negatives {expected_neg:.1f}; "
            "the normal approximation wants at least 5 of each",
            file=sys.stderr,
        )
    return 0


def cmd_gen_synth(args: argparse.Namespace) -> int:
    dataset = generate_synthetic(
        n=args.n,
        positive_fraction=args.positive_fraction,
        num_clusters=args.clusters,
        overlap=args.overlap,
        seed=args.seed,
        dim=args.dim,
        duplicate_fraction=args.duplicate_fraction,
    )
    out = Path(args.out)
    fd, tmp = tempfile.mkstemp(dir=out.parent if str(out.parent) else ".",
                               prefix=out.name + ".", suffix=".tmp")
    os.close(fd)
    try:
        save_sparse_text(dataset, tmp)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    print(f"positives {dataset.positive_count}")
    print(f"negatives {dataset.negative_count}")
    print(f"prevalence {dataset.positive_fraction:.6f}")
    print(f"wrote {out}")
    return 0


def _concat_datasets(pool: Dataset, test: Dataset) -> tuple[Dataset, list[int], list[int]]:
    """Merge two datasets into one id space; returns (merged, pool ids, test ids)."""
    merged = list(pool.examples)
    offset = len(merged)
    for ex in test.examples:
        merged.append(Example(id=offset + ex.id, label=ex.label, features=ex.features))
    combined = Dataset.from_examples(merged)
    return combined, list(range(offset)), list(range(offset, len(merged)))


def _simulation_tasks(args, master_seed: int):
    """Yield (strategy, unit, dataset, pool_ids, test_ids, fold_seed)."""
    strategies = args.strategy or []
    if not strategies:
        raise ValueError("at least one --strategy is required")
    if args.data is None:
        raise ValueError("--data is required")
    if (args.folds is None) == (args.test is None):
        raise ValueError("exactly one of --folds or --test is required")
    data = load_sparse_text(args.data)
    tasks = []
    if args.folds is not None:
        splits = kfold_split(data, args.folds, seed=derive_seed(master_seed, "fold-split"))
        for split in splits:
            fold_seed = derive_seed(master_seed, "fold", split.fold_index)
            for strategy in strategies:
                tasks.append((strategy, f"fold{split.fold_index}", data,
                              split.pool_ids, split.test_ids, fold_seed))
    else:
        test = load_sparse_text(args.test)
        combined, pool_ids, test_ids = _concat_datasets(data, test)
        fold_seed = derive_seed(master_seed, "fold", 0)
        for strategy in strategies:
            tasks.append((strategy, "train", combined, pool_ids, test_ids, fold_seed))
    return tasks


def _load_manifest_args(path: str, parser_defaults: argparse.Namespace) -> argparse.Namespace:
    manifest_path = Path(path)
    with open(manifest_path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    cfg = manifest["config"]
    args = parser_defaults
    args.data = manifest["data"]["path"]
    args.test = manifest["data"].get("test_path")
    for key in ("folds", "batch", "init", "committee", "budget", "seed"):
        setattr(args, key, cfg[key])
    args.c_negative = cfg["c_negative"]
    args.strategy = [StrategyId.from_name(s) for s in cfg["strategies"]]
    args.out = str(manifest_path.parent)
    for name, recorded in (("path", manifest["data"]["sha256"]),
                           ("test_path", manifest["data"].get("test_sha256"))):
        file_path = manifest["data"].get(name)
        if file_path is not None:
            actual = _sha256_file(Path(file_path))
            if actual != recorded:
                raise ValueError(
                    f"dataset {file_path} does not match the manifest fingerprint"
                )
    return args


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.from_manifest is not None:
        args = _load_manifest_args(args.from_manifest, args)
    master_seed = args.seed
    env_seed = os.environ.get(SEED_ENV_VAR)
    if env_seed is not None:
        master_seed = int(env_seed)

    tasks = _simulation_tasks(args, master_seed)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    artifacts = sorted(f"{strategy.value}_{unit}.csv" for strategy, unit, *_ in tasks)
    manifest = {
        "version": f"alsvm {__version__}",
        "command": "simulate",
        "config": {
            "strategies": [s.value for s in (args.strategy or [])],
            "folds": args.folds,
            "batch": args.batch,
            "init": args.init,
            "committee": args.committee,
            "c_negative": args.c_negative,
            "budget": args.budget,
            "seed": master_seed,
        },
        "data": {
            "path": args.data,
            "sha256": _sha256_file(Path(args.data)),
            "test_path": args.test,
            "test_sha256": _sha256_file(Path(args.test)) if args.test else None,
        },
        "artifacts": artifacts,
    }
    atomic_write_text(out_dir / "manifest.json",
                      json.dumps(manifest, indent=2, sort_keys=True) + "\n")

    def run_one(task):
        strategy, unit, dataset, pool_ids, test_ids, fold_seed = task
        config = ALConfig(
            strategy=strategy,
            batch_size=args.batch,
            initial_size=args.init,
            committee_size=args.committee,
            c_negative=args.c_negative,
            master_seed=fold_seed,
            budget=args.budget,
        )
        curve = run_simulation(dataset, pool_ids, test_ids, config, unit=unit)
        path = out_dir / f"{strategy.value}_{unit}.csv"
        write_curve_csv(curve, path)
        return path

    workers = args.workers or min(8, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        paths = list(pool.map(run_one, tasks))
    for path in sorted(paths):
        print(f"wrote {path}")
    print(f"wrote {out_dir / 'manifest.json'}")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    curves_dir = Path(args.curves)
    if not curves_dir.is_dir():
        raise ValueError(f"{curves_dir} is not a directory")
    curves = []
    for path in sorted(curves_dir.glob("*.csv")):
        with open(path, encoding="utf-8", newline="") as fh:
            first = fh.readline().strip()
        if first.split(",") != CURVE_HEADER:
            continue
        curves.extend(read_curves_csv(path))
    if not curves:
        raise ValueError(f"no learning-curve CSVs found in {curves_dir}")
    report = build_utilization_report(curves, args.baseline.value, window=args.window)

    out_dir = Path(args.out) if args.out is not None else curves_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    atomic_write_text(out_dir / "utilization.csv", utilization_to_csv(report))
    if len(report.rows) >= 2:
        rows = ttest_rows(report)
    else:
        rows = []
        print("warning: fewer than 2 units; skipping t-tests", file=sys.stderr)
    atomic_write_text(out_dir / "ttests.csv", ttests_to_csv(rows))
    atomic_write_text(
        out_dir / "plateaus.csv",
        plateaus_to_csv(curves, args.plateau_window, args.plateau_delta, args.plateau_patience),
    )
    for name in ("utilization.csv", "ttests.csv", "plateaus.csv"):
        print(f"wrote {out_dir / name}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, DatasetFormatError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
