"""Combining labeled datasets at a controlled source ratio."""

from __future__ import annotations

import math

import numpy as np

from ..errors import DataError, EmptyDatasetError, SamplingError
from .types import LabeledDataset


def _stratified_quotas(class_counts: dict[str, int], target: int) -> dict[str, int]:
    """Split ``target`` across classes proportionally (largest remainder)."""
    total = sum(class_counts.values())
    quotas = {}
    remainders = []
    assigned = 0
    for name in sorted(class_counts):
        exact = target * class_counts[name] / total
        quotas[name] = int(math.floor(exact))
        assigned += quotas[name]
        remainders.append((-(exact - quotas[name]), name))
    remainders.sort()
    for _, name in remainders[: target - assigned]:
        quotas[name] += 1
    return quotas


def _sample_entries(
    dataset: LabeledDataset, count: int, rng: np.random.Generator
) -> list:
    """Sample ``count`` entries without replacement, class-stratified.

    Selected entries keep their original order, so sampling a whole
    dataset reproduces it exactly.
    """
    if count == 0:
        return []
    quotas = _stratified_quotas(dataset.class_counts(), count)
    selected: list[int] = []
    for name in sorted(quotas):
        indices = [i for i, (_, label) in enumerate(dataset.entries) if label == name]
        take = quotas[name]
        if take > len(indices):
            raise SamplingError(
                "cannot draw %d %s entries from %d" % (take, name, len(indices))
            )
        chosen = rng.choice(len(indices), size=take, replace=False)
        selected.extend(indices[int(i)] for i in chosen)
    selected.sort()
    return [dataset.entries[i] for i in selected]


def mix_datasets(
    a: LabeledDataset,
    b: LabeledDataset,
    ratio_a: float,
    size: int,
    seed: int,
) -> LabeledDataset:
    """Draw ``size`` entries, a fraction ``ratio_a`` of them from ``a``.

    Sampling is without replacement and preserves each source's class
    balance as closely as integer counts allow.  Deterministic for a
    fixed seed.
    """
    if not a.entries or not b.entries:
        raise EmptyDatasetError("both datasets must be non-empty")
    if not 0.0 <= ratio_a <= 1.0:
        raise DataError("ratio_a must be in [0, 1], got %r" % ratio_a)
    if size <= 0:
        raise SamplingError("size must be positive")

    n_a = int(math.floor(ratio_a * size + 0.5))
    n_b = size - n_a
    if n_a > len(a.entries) or n_b > len(b.entries):
        raise SamplingError(
            "requested %d from a (have %d) and %d from b (have %d)"
            % (n_a, len(a.entries), n_b, len(b.entries))
        )

    rng = np.random.Generator(np.random.PCG64(seed))
    entries = _sample_entries(a, n_a, rng) + _sample_entries(b, n_b, rng)
    return LabeledDataset(
        entries=tuple(entries),
        source_tag="%s+%s" % (a.source_tag, b.source_tag),
    )
