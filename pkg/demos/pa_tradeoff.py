"""Show what amplifying the positive-class cost does to precision/recall.

Trains the same imbalanced synthetic problem at several values of
PA = C+/C-.  With PA = 1 the cheap way to reduce slack is to surrender
minority positives; raising PA makes false negatives expensive, pushing
the hyperplane outward: recall rises, precision gives way.
"""

import argparse

from alsvm import TrainConfig, evaluate, generate_synthetic, kfold_split, train


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=6, help="fixture seed")
    parser.add_argument("--overlap", type=float, default=0.5,
                        help="class overlap of the fixture (default: 0.5)")
    args = parser.parse_args()

    dataset = generate_synthetic(500, 0.1, overlap=args.overlap, seed=args.seed)
    split = kfold_split(dataset, 3, seed=11)[0]
    print(f"Fixture: {len(dataset)} examples, {dataset.positive_count} positive"
          f" ({100 * dataset.positive_fraction:.0f}%), overlap {args.overlap}")
    print(f"Training on {len(split.pool_ids)} examples,"
          f" evaluating on the held-out {len(split.test_ids)}.")
    print()

    print(f"{'PA':>6} {'precision':>10} {'recall':>8} {'F':>8}")
    for pa in (1.0, 3.0, 9.0, 27.0):
        config = TrainConfig(pa=pa, max_passes=4000)
        model = train(dataset, split.pool_ids, config, seed=3)
        point = evaluate(model, dataset, split.test_ids)
        print(f"{pa:>6.0f} {point.precision:>10.4f} {point.recall:>8.4f}"
              f" {point.f1:>8.4f}")
    print()
    print("Reading the table top to bottom: recall climbs toward 1 while")
    print("precision erodes.  For minority-positive problems the F measure")
    print("usually peaks at a moderate amplification, which is why the")
    print("ratio is estimated from data instead of guessed.")


if __name__ == "__main__":
    main()
