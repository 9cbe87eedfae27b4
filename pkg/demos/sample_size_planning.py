"""Plan the initial labeled sample and the cost ratio it implies.

Before any active selection happens, a fixed number of pool examples is
labeled at random.  That sample does double duty: it seeds the first
model, and its class prevalence sets the positive-amplification ratio
PA = C+/C- once and for all.  This script walks the arithmetic that
says how large the sample should be.
"""

import argparse

from alsvm import (
    SampleSizeSpec,
    check_normal_approx,
    corrected_sample_size,
    estimate_pa,
    generate_synthetic,
    rng_for,
    sampling_error,
    uncorrected_sample_size,
    z_for_confidence,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--population", type=int, default=5656,
                        help="pool size (default: 5656)")
    parser.add_argument("--prevalence", type=float, default=0.176,
                        help="assumed positive fraction (default: 0.176)")
    args = parser.parse_args()

    z = z_for_confidence(0.95)
    print("Step 1: how many labels for a 95% confidence, 5% error estimate?")
    n0 = uncorrected_sample_size(z, 0.5, 0.05)
    print(f"  With an infinite pool and worst-case prevalence 0.5: n0 = {n0:.2f}")

    spec = SampleSizeSpec(z=z, e=0.05, p=0.5, population=args.population)
    n = corrected_sample_size(spec)
    print(f"  Correcting for the finite pool of {args.population}: n = {n}")
    print("  Sampling without replacement from a finite pool shrinks the")
    print("  error, so the corrected requirement is smaller.")
    print()

    print("Step 2: what does a budget of only 100 labels buy?")
    e100 = sampling_error(100, z, args.prevalence, args.population)
    print(f"  At assumed prevalence {args.prevalence}, 100 labels pin the")
    print(f"  true proportion to within {e100:.4f} at 95% confidence.")
    expected_pos = 100 * args.prevalence
    if not check_normal_approx(expected_pos, 100 - expected_pos):
        print("  (warning: too few expected positives for the normal approximation)")
    print()

    print("Step 3: the PA estimate such a sample produces.")
    dataset = generate_synthetic(args.population, args.prevalence, seed=0)
    ids = rng_for(0, "demo-initial").choice(len(dataset), size=100, replace=False)
    estimate = estimate_pa(dataset.labels(sorted(ids)))
    print(f"  A seeded 100-example draw contains {estimate.positives} positives"
          f" and {estimate.negatives} negatives,")
    print(f"  giving PA = C+/C- = {estimate.pa:.3f}.  Misclassified positives")
    print("  will cost that many times more than misclassified negatives for")
    print("  the rest of the run.")


if __name__ == "__main__":
    main()
