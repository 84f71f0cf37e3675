"""Scalar statistics and the eight-number distribution summary.

Every "distribution" feature emitted by the extractors is one of these eight
statistics computed over a sample: min, max, median, mean, population standard
deviation, skewness, excess kurtosis, and Shannon entropy (natural log) of the
relative frequencies of distinct values. Entropy is computed over distinct
values rather than a binned histogram: the inputs are overwhelmingly discrete
(counts, tag frequencies, repeated gaps), and this keeps the statistic
deterministic with no binning parameter.

Degenerate conventions keep feature vectors finite for sparse accounts:
an empty sample summarizes to all zeros, and a constant sample has zero
standard deviation, skewness, kurtosis, and entropy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError

# Suffixes used when an eight-statistic summary is expanded into named features.
STAT_SUFFIXES = ("min", "max", "median", "mean", "std", "skew", "kurt", "entropy")


@dataclass(frozen=True)
class DistributionSummary:
    """The eight summary statistics of a sample of reals."""

    minimum: float
    maximum: float
    median: float
    mean: float
    std_dev: float
    skewness: float
    kurtosis: float
    entropy: float

    def as_tuple(self) -> tuple[float, ...]:
        return (
            self.minimum,
            self.maximum,
            self.median,
            self.mean,
            self.std_dev,
            self.skewness,
            self.kurtosis,
            self.entropy,
        )


ZERO_SUMMARY = DistributionSummary(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)


def summarize(values: Sequence[float]) -> DistributionSummary:
    """Compute the eight-statistic summary of ``values``.

    Population moments (divide by n). Skewness is m3/m2^1.5 and kurtosis is
    the excess kurtosis m4/m2^2 - 3, so a normal sample is near zero. An empty
    sample yields the all-zero summary; a constant sample has zero spread and
    shape statistics.
    """
    arr = np.asarray(values, dtype=np.float64).ravel()
    if arr.size == 0:
        return ZERO_SUMMARY
    if not np.isfinite(arr).all():
        raise DomainError("summarize: input contains non-finite values")

    vmin = float(arr.min())
    vmax = float(arr.max())
    med = float(np.median(arr))
    mean = float(arr.mean())
    if vmin == vmax:
        return DistributionSummary(vmin, vmax, med, mean, 0.0, 0.0, 0.0, 0.0)

    centered = arr - mean
    m2 = float(np.mean(centered * centered))
    if m2 == 0.0:  # underflow guard; treat as constant
        return DistributionSummary(vmin, vmax, med, mean, 0.0, 0.0, 0.0, 0.0)
    std = math.sqrt(m2)
    z = centered / std
    skew = float(np.mean(z**3))
    kurt = float(np.mean(z**4)) - 3.0

    _, counts = np.unique(arr, return_counts=True)
    entropy = shannon_entropy(counts)
    return DistributionSummary(vmin, vmax, med, mean, std, skew, kurt, entropy)


def shannon_entropy(counts: Sequence[float]) -> float:
    """Shannon entropy (natural log) of the distribution given by ``counts``.

    Counts are normalized to probabilities; zero counts contribute nothing.
    All-zero or negative counts are a domain error.
    """
    arr = np.asarray(counts, dtype=np.float64).ravel()
    if arr.size == 0 or not np.isfinite(arr).all() or (arr < 0).any():
        raise DomainError("shannon_entropy: counts must be finite and non-negative")
    total = float(arr.sum())
    if total <= 0.0:
        raise DomainError("shannon_entropy: needs at least one positive count")
    p = arr[arr > 0] / total
    h = float(-np.sum(p * np.log(p)))
    return max(h, 0.0)


def signal_noise_ratio(series: Sequence[float]) -> float:
    """Mean divided by population standard deviation; 0 when the std is 0."""
    arr = np.asarray(series, dtype=np.float64).ravel()
    if arr.size == 0:
        raise DomainError("signal_noise_ratio: empty series")
    if not np.isfinite(arr).all():
        raise DomainError("signal_noise_ratio: non-finite values")
    std = float(arr.std())
    if std == 0.0:
        return 0.0
    return float(arr.mean()) / std


def relative_change(series: Sequence[float]) -> float:
    """(last - first) / max(|first|, 1) over a chronological series."""
    arr = np.asarray(series, dtype=np.float64).ravel()
    if arr.size == 0:
        raise DomainError("relative_change: empty series")
    if not np.isfinite(arr).all():
        raise DomainError("relative_change: non-finite values")
    first = float(arr[0])
    last = float(arr[-1])
    return (last - first) / max(abs(first), 1.0)
