"""Estimators and goodness-of-fit statistics for the experiment harness.

Total variation distance is the primary metric for the Poisson-limit checks
(it lives on a clean [0, 1] scale); the chi-square statistic is reserved for
uniformity probes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from scipy.stats import chi2

from .combinatorics import falling_factorial


@dataclass(frozen=True)
class SampleSummary:
    count: int
    histogram: dict[int, int]
    mean: float
    variance: float

    @classmethod
    def from_samples(cls, samples: Iterable[int]) -> "SampleSummary":
        hist: dict[int, int] = {}
        for s in samples:
            hist[s] = hist.get(s, 0) + 1
        count = sum(hist.values())
        if count == 0:
            raise ValueError("no samples")
        mean = sum(v * c for v, c in hist.items()) / count
        variance = sum((v - mean) ** 2 * c for v, c in hist.items()) / count
        return cls(count=count, histogram=hist, mean=mean, variance=variance)


def factorial_moment(samples: Iterable[int], t: int) -> float:
    """Empirical t-th factorial moment, averaged in exact integer arithmetic."""
    if t < 1:
        raise ValueError("t must be at least 1")
    samples = list(samples)
    if not samples:
        raise ValueError("no samples")
    total = sum(falling_factorial(s, t) for s in samples)
    return total / len(samples)


def poisson_pmf(k: int, lam: float) -> float:
    if lam == 0.0:
        return 1.0 if k == 0 else 0.0
    return math.exp(k * math.log(lam) - lam - math.lgamma(k + 1))


def poisson_tv_distance(summary: SampleSummary, lam: float) -> float:
    """Total variation distance between the sample histogram and Poisson(lam).

    The Poisson tail beyond the largest observed value counts in full, so the
    result is a true TV distance in [0, 1].
    """
    if lam < 0:
        raise ValueError("lam must be nonnegative")
    kmax = max(summary.histogram)
    head = 0.0
    cdf = 0.0
    for k in range(kmax + 1):
        p = poisson_pmf(k, lam)
        cdf += p
        emp = summary.histogram.get(k, 0) / summary.count
        head += abs(emp - p)
    tail = max(0.0, 1.0 - cdf)
    return 0.5 * (head + tail)


def chi_square_uniformity(observed: Mapping[int, int],
                          expected_uniform_over: int) -> tuple[float, int, float]:
    """Chi-square statistic of observed counts against the uniform null.

    Categories are labelled 0..k-1; labels absent from ``observed`` count as
    zero.  When the expected count per category falls below 5, consecutive
    labels are pooled into equal blocks of the smallest size that restores
    expectation >= 5 (any leftover labels join the last block).
    """
    k = expected_uniform_over
    if k < 2:
        raise ValueError("need at least 2 categories")
    if any(not 0 <= c < k for c in observed):
        raise ValueError(f"category labels must lie in 0..{k - 1}")
    total = sum(observed.values())
    if total == 0:
        raise ValueError("no observations")

    counts = [observed.get(c, 0) for c in range(k)]
    per_cat = total / k
    block = 1 if per_cat >= 5 else math.ceil(5 / per_cat)
    n_blocks = k // block
    if n_blocks < 2:
        raise ValueError("fewer than 2 categories remain after pooling")

    stat = 0.0
    for b in range(n_blocks):
        lo = b * block
        hi = (b + 1) * block if b < n_blocks - 1 else k
        obs = sum(counts[lo:hi])
        exp = (hi - lo) * per_cat
        stat += (obs - exp) ** 2 / exp
    dof = n_blocks - 1
    return stat, dof, float(chi2.sf(stat, dof))
