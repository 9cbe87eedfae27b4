"""Sample sizing for proportion estimates, and cost-ratio estimation.

The initial labeled sample of an active-learning run doubles as an
unbiased estimate of the pool's positive prevalence.  This module
answers two questions about that sample:

* how big it must be so the estimated proportion lands within a chosen
  sampling error at a chosen confidence, accounting for the finite pool
  via the ``sqrt((N - n) / (N - 1))`` correction, and
* what asymmetric cost ratio (``pa`` = negatives over positives) the
  sample implies.  The ratio is estimated once, from the initial sample
  only, and held fixed for the whole run; later labeled sets are biased
  by the selection strategy and must not be used to re-estimate it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from scipy.stats import norm

__all__ = [
    "SampleSizeSpec",
    "PaEstimate",
    "z_for_confidence",
    "uncorrected_sample_size",
    "corrected_sample_size",
    "sampling_error",
    "estimate_pa",
    "check_normal_approx",
]

# Conventional two-sided z-scores; anything else falls through to the
# normal quantile.
_Z_TABLE = {0.90: 1.6449, 0.95: 1.9600, 0.99: 2.5758}


def z_for_confidence(confidence: float) -> float:
    """Two-sided standard-normal z-score for a confidence level in (0, 1)."""
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must be in (0, 1), got {confidence}")
    for level, z in _Z_TABLE.items():
        if math.isclose(confidence, level, rel_tol=0.0, abs_tol=1e-12):
            return z
    return float(norm.ppf(0.5 + confidence / 2.0))


@dataclass(frozen=True)
class SampleSizeSpec:
    """Inputs of a sample-size determination.

    ``z``: standard-normal score for the desired confidence.
    ``e``: acceptable sampling error (bound on |sample - population| proportion).
    ``p``: assumed population proportion; 0.5 never underestimates the size.
    ``population``: size N of the finite pool being sampled.
    """

    z: float
    e: float
    p: float = 0.5
    population: int = 10**9

    def __post_init__(self) -> None:
        if not (math.isfinite(self.z) and self.z > 0):
            raise ValueError(f"z must be finite and > 0, got {self.z}")
        if not 0.0 < self.e < 1.0:
            raise ValueError(f"e must be in (0, 1), got {self.e}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {self.p}")
        if self.population < 2:
            raise ValueError(f"population must be >= 2, got {self.population}")


def uncorrected_sample_size(z: float, p: float, e: float) -> float:
    """Infinite-population sample size ``z^2 p (1-p) / e^2`` (not rounded)."""
    if e == 0:
        raise ValueError("sampling error e must be nonzero")
    return z * z * p * (1.0 - p) / (e * e)


def corrected_sample_size(spec: SampleSizeSpec) -> int:
    """Finite-population-corrected sample size, rounded up.

    Applies ``n = n0 N / (N - 1 + n0)`` to the uncorrected estimate n0
    and returns the ceiling.  When n0 already reaches the population
    size, sampling everything is prescribed and N is returned.
    """
    n0 = uncorrected_sample_size(spec.z, spec.p, spec.e)
    big_n = spec.population
    if n0 >= big_n:
        return big_n
    n = n0 * big_n / (big_n - 1.0 + n0)
    return min(int(math.ceil(n - 1e-12)), big_n)


def sampling_error(n: int, z: float, p: float, population: int) -> float:
    """Achieved sampling error ``z sqrt(p(1-p)/n) sqrt((N-n)/(N-1))``."""
    if not 1 <= n <= population:
        raise ValueError(f"n must be in [1, {population}], got {n}")
    fpc = (population - n) / (population - 1.0)
    return z * math.sqrt(p * (1.0 - p) / n) * math.sqrt(fpc)


@dataclass(frozen=True)
class PaEstimate:
    """Cost ratio implied by a labeled sample's class counts."""

    sample_size: int
    positives: int
    negatives: int
    pa: float


def estimate_pa(labels: Iterable[int]) -> PaEstimate:
    """Estimate the positive-amplification ratio from sample labels.

    ``pa`` is negatives/positives when both classes are present; if either
    count is zero, add-one smoothing is applied to both counts so a
    degenerate sample still yields a finite, positive ratio.
    """
    positives = negatives = 0
    for label in labels:
        if label == 1:
            positives += 1
        elif label == -1:
            negatives += 1
        else:
            raise ValueError(f"labels must be -1 or +1, got {label}")
    n = positives + negatives
    if n == 0:
        raise ValueError("sample is empty")
    if positives > 0 and negatives > 0:
        pa = negatives / positives
    else:
        pa = (negatives + 1) / (positives + 1)
    return PaEstimate(sample_size=n, positives=positives, negatives=negatives, pa=pa)


def check_normal_approx(positives: int, negatives: int) -> bool:
    """Rule of thumb for the normal approximation: at least 5 of each class."""
    return positives >= 5 and negatives >= 5
