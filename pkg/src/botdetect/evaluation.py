"""Model evaluation: AUC, cross-validation, agreement, thresholds,
per-decile accuracy, and streaming population estimates.

Scores live in [0, 1] with the convention that higher means more
bot-like; classification uses score >= threshold => bot, so everything
below the threshold is called human.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .corpus.types import LABEL_BOT, LABEL_HUMAN
from .errors import DomainError
from .features import FeatureClass, FeatureRegistry
from .forest import TrainParams, score_matrix, train

N_DECILES = 10
HISTOGRAM_BINS = 100


def labels_to_binary(labels: Sequence) -> np.ndarray:
    """Map human/bot labels (or 0/1) to an int8 vector with 1 = bot."""
    out = np.empty(len(labels), dtype=np.int8)
    for i, label in enumerate(labels):
        if label == LABEL_BOT or label == 1:
            out[i] = 1
        elif label == LABEL_HUMAN or label == 0:
            out[i] = 0
        else:
            raise DomainError("label must be human or bot, got %r" % (label,))
    return out


def auc(scores: Sequence[float], labels: Sequence) -> float:
    """Mann-Whitney AUC: P(bot score > human score), ties counting half."""
    y = labels_to_binary(labels)
    s = np.asarray(scores, dtype=np.float64)
    if s.shape[0] != y.shape[0]:
        raise DomainError("scores and labels differ in length")
    n_pos = int(y.sum())
    n_neg = int(y.shape[0] - n_pos)
    if n_pos == 0 or n_neg == 0:
        raise DomainError("auc needs both classes present")
    # Midranks handle ties exactly.
    uniq, inverse, counts = np.unique(s, return_inverse=True, return_counts=True)
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    midranks = starts + (counts + 1) / 2.0
    ranks = midranks[inverse]
    rank_sum_pos = ranks[y == 1].sum()
    return float((rank_sum_pos - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))


def stratified_folds(labels: Sequence, k: int, seed: int) -> list[np.ndarray]:
    """Deterministic stratified folds; each class dealt round-robin."""
    y = labels_to_binary(labels)
    if k < 2:
        raise DomainError("need at least 2 folds")
    for cls in (0, 1):
        if int((y == cls).sum()) < k:
            raise DomainError("need at least %d samples per class" % k)
    rng = np.random.Generator(np.random.PCG64(seed))
    folds: list[list[int]] = [[] for _ in range(k)]
    for cls in (0, 1):
        idx = np.flatnonzero(y == cls)
        idx = idx[rng.permutation(idx.shape[0])]
        for i, row in enumerate(idx):
            folds[i % k].append(int(row))
    return [np.asarray(sorted(f), dtype=np.int64) for f in folds]


@dataclass(frozen=True)
class CrossValidationResult:
    fold_aucs: list[float]
    mean_auc: float


def cross_validate(
    X: np.ndarray,
    labels: Sequence,
    k: int = 5,
    seed: int = 0,
    params: TrainParams = TrainParams(),
) -> CrossValidationResult:
    """Stratified k-fold CV; trains a forest per fold, AUC on the held-out fold."""
    y = labels_to_binary(labels)
    X = np.asarray(X, dtype=np.float64)
    folds = stratified_folds(y, k, seed)
    all_rows = np.arange(X.shape[0])
    fold_aucs = []
    for fold_index, test_rows in enumerate(folds):
        train_rows = np.setdiff1d(all_rows, test_rows)
        model = train(
            X[train_rows],
            y[train_rows],
            params=params,
            seed=seed * 100003 + fold_index,
        )
        fold_aucs.append(auc(score_matrix(model, X[test_rows]), y[test_rows]))
    return CrossValidationResult(
        fold_aucs=fold_aucs, mean_auc=float(np.mean(fold_aucs))
    )


def per_decile_accuracy(
    scores: Sequence[float], labels: Sequence, threshold: float = 0.5
) -> list[Optional[float]]:
    """Accuracy within each score decile; None where the decile is empty."""
    y = labels_to_binary(labels)
    s = np.asarray(scores, dtype=np.float64)
    if np.any((s < 0.0) | (s > 1.0)):
        raise DomainError("scores must lie in [0, 1]")
    bins = np.minimum((s * N_DECILES).astype(int), N_DECILES - 1)
    predictions = (s >= threshold).astype(np.int8)
    accuracies: list[Optional[float]] = []
    for b in range(N_DECILES):
        mask = bins == b
        if not mask.any():
            accuracies.append(None)
        else:
            accuracies.append(float((predictions[mask] == y[mask]).mean()))
    return accuracies


def weighted_overall_accuracy(
    accuracies: Sequence[Optional[float]], weights: Sequence[float]
) -> float:
    """Population-weighted accuracy; weights renormalized over non-empty bins.

    Weights are required; there is no sensible default for the deployed
    score distribution.
    """
    if len(accuracies) != N_DECILES or len(weights) != N_DECILES:
        raise DomainError("need %d accuracies and weights" % N_DECILES)
    pairs = [
        (a, w) for a, w in zip(accuracies, weights) if a is not None
    ]
    if not pairs:
        raise DomainError("all deciles empty")
    if any(w < 0 for _, w in pairs):
        raise DomainError("weights must be non-negative")
    total = sum(w for _, w in pairs)
    if total <= 0:
        raise DomainError("weights over non-empty deciles sum to zero")
    return float(sum(a * w for a, w in pairs) / total)


def pairwise_agreement(labels_a: Sequence, labels_b: Sequence) -> float:
    if len(labels_a) != len(labels_b) or not labels_a:
        raise DomainError("need two equal-length non-empty label lists")
    same = sum(1 for a, b in zip(labels_a, labels_b) if a == b)
    return same / len(labels_a)


def cohens_kappa(labels_a: Sequence, labels_b: Sequence) -> float:
    """Two-rater Cohen's kappa with marginal-product chance agreement."""
    if len(labels_a) != len(labels_b) or not labels_a:
        raise DomainError("need two equal-length non-empty label lists")
    n = len(labels_a)
    p_o = pairwise_agreement(labels_a, labels_b)
    categories = sorted(set(labels_a) | set(labels_b), key=str)
    p_e = 0.0
    for cat in categories:
        p_e += (
            sum(1 for x in labels_a if x == cat)
            * sum(1 for x in labels_b if x == cat)
            / (n * n)
        )
    if p_e >= 1.0:
        # Both raters used one category exclusively.
        if p_o == 1.0:
            return 1.0
        raise DomainError("kappa undefined: chance agreement is 1")
    return (p_o - p_e) / (1.0 - p_e)


@dataclass(frozen=True)
class ThresholdReport:
    threshold: float
    accuracy: float
    fp_rate: float
    fn_rate: float


def classification_rates(
    scores: Sequence[float], labels: Sequence, threshold: float
) -> ThresholdReport:
    """Accuracy and FP/FN rates for score >= threshold => bot."""
    y = labels_to_binary(labels)
    s = np.asarray(scores, dtype=np.float64)
    predictions = (s >= threshold).astype(np.int8)
    n_hum = int((y == 0).sum())
    n_bot = int((y == 1).sum())
    fp = int(((predictions == 1) & (y == 0)).sum())
    fn = int(((predictions == 0) & (y == 1)).sum())
    return ThresholdReport(
        threshold=float(threshold),
        accuracy=float((predictions == y).mean()),
        fp_rate=fp / n_hum if n_hum else 0.0,
        fn_rate=fn / n_bot if n_bot else 0.0,
    )


def infer_threshold(scores: Sequence[float], labels: Sequence) -> ThresholdReport:
    """Accuracy-maximizing threshold.

    Candidates are midpoints between adjacent distinct sorted scores plus
    the endpoints 0 and 1; ties resolve to the lowest threshold.
    """
    y = labels_to_binary(labels)
    if int(y.sum()) == 0 or int(y.sum()) == y.shape[0]:
        raise DomainError("threshold inference needs both classes")
    s = np.asarray(scores, dtype=np.float64)
    if s.shape[0] != y.shape[0]:
        raise DomainError("scores and labels differ in length")
    distinct = np.unique(s)
    candidates = [0.0]
    candidates.extend(((a + b) / 2.0 for a, b in zip(distinct, distinct[1:])))
    candidates.append(1.0)
    best: Optional[ThresholdReport] = None
    for t in candidates:
        report = classification_rates(s, y, t)
        if best is None or report.accuracy > best.accuracy:
            best = report
    return best


@dataclass(frozen=True)
class PopulationEstimate:
    bot_fraction: float
    total: int
    histogram: np.ndarray  # 100 counts over [0,1]

    def histogram_rows(self) -> list[tuple[float, float, int]]:
        edges = np.linspace(0.0, 1.0, HISTOGRAM_BINS + 1)
        return [
            (float(edges[i]), float(edges[i + 1]), int(self.histogram[i]))
            for i in range(HISTOGRAM_BINS)
        ]


def estimate_from_scores(
    scores: Iterable[float], threshold: float
) -> PopulationEstimate:
    """Streaming bot-population estimate; constant memory in corpus size."""
    if not 0.0 <= threshold <= 1.0:
        raise DomainError("threshold must lie in [0, 1]")
    histogram = np.zeros(HISTOGRAM_BINS, dtype=np.int64)
    total = 0
    bots = 0
    for value in scores:
        if not 0.0 <= value <= 1.0:
            raise DomainError("score %r outside [0, 1]" % value)
        histogram[min(int(value * HISTOGRAM_BINS), HISTOGRAM_BINS - 1)] += 1
        total += 1
        if value >= threshold:
            bots += 1
    if total == 0:
        raise DomainError("no scores in stream")
    return PopulationEstimate(
        bot_fraction=bots / total, total=total, histogram=histogram
    )


def estimate_population(
    model, bundles: Iterable, registry: FeatureRegistry, threshold: float
) -> PopulationEstimate:
    """Score a bundle stream one account at a time and estimate."""
    from .forest import score as score_one

    return estimate_from_scores(
        (score_one(model, registry.extract(bundle)) for bundle in bundles),
        threshold,
    )


def per_class_models(
    X: np.ndarray,
    labels: Sequence,
    registry: FeatureRegistry,
    k: int = 5,
    seed: int = 0,
    params: TrainParams = TrainParams(),
) -> dict[FeatureClass, float]:
    """Cross-validated AUC using each feature class alone."""
    results: dict[FeatureClass, float] = {}
    for cls in registry.classes:
        sub = X[:, registry.class_slice(cls)]
        results[cls] = cross_validate(sub, labels, k=k, seed=seed, params=params).mean_auc
    return results


def importance_ranking(
    X: np.ndarray,
    labels: Sequence,
    runs: int = 100,
    subsample: int = 10000,
    seed: int = 0,
    params: TrainParams = TrainParams(),
) -> np.ndarray:
    """Feature ranking from randomized importance runs.

    Each run trains on a stratified subsample (full data when smaller)
    and run importances are averaged before ranking.
    """
    from .forest import importances

    y = labels_to_binary(labels)
    X = np.asarray(X, dtype=np.float64)
    n, d = X.shape
    totals = np.zeros(d, dtype=np.float64)
    rng = np.random.Generator(np.random.PCG64(seed))
    for run in range(runs):
        if n > subsample:
            rows = []
            for cls in (0, 1):
                idx = np.flatnonzero(y == cls)
                take = max(int(round(subsample * idx.shape[0] / n)), 1)
                rows.extend(rng.choice(idx, size=min(take, idx.shape[0]), replace=False))
            rows = np.asarray(sorted(rows), dtype=np.int64)
        else:
            rows = np.arange(n, dtype=np.int64)
        model = train(
            X[rows], y[rows], params=params, seed=seed * 99991 + run
        )
        totals += importances(model).values
    if not np.any(totals > 0):
        raise DomainError("no informative splits across importance runs")
    return np.argsort(-totals, kind="stable")


def top_k_auc_curve(
    X: np.ndarray,
    labels: Sequence,
    ranking: Sequence[int],
    ks: Sequence[int],
    k_folds: int = 5,
    seed: int = 0,
    params: TrainParams = TrainParams(),
) -> dict[int, float]:
    """Cross-validated AUC retraining on the top-k ranked features."""
    X = np.asarray(X, dtype=np.float64)
    d = X.shape[1]
    ranking = np.asarray(ranking, dtype=np.int64)
    results: dict[int, float] = {}
    for k in ks:
        if not 1 <= k <= d:
            raise DomainError("k must be in [1, %d], got %d" % (d, k))
        cols = ranking[:k]
        results[int(k)] = cross_validate(
            X[:, cols], labels, k=k_folds, seed=seed, params=params
        ).mean_auc
    return results


@dataclass
class EvalReport:
    auc: float
    fold_aucs: list[float]
    per_decile_accuracy: list[Optional[float]]
    weighted_overall_accuracy: Optional[float]
    threshold: float
    fp_rate: float
    fn_rate: float
    population_bot_fraction: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "auc": self.auc,
            "fold_aucs": self.fold_aucs,
            "per_decile_accuracy": self.per_decile_accuracy,
            "weighted_overall_accuracy": self.weighted_overall_accuracy,
            "threshold": self.threshold,
            "fp_rate": self.fp_rate,
            "fn_rate": self.fn_rate,
            "population_bot_fraction": self.population_bot_fraction,
        }


@dataclass
class AgreementReport:
    pairwise_agreement: float
    cohens_kappa: float
    annotator_vs_model_agreement: Optional[float] = None
    annotator_vs_model_kappa: Optional[float] = None
    mean_annotation_seconds: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "pairwise_agreement": self.pairwise_agreement,
            "cohens_kappa": self.cohens_kappa,
            "annotator_vs_model_agreement": self.annotator_vs_model_agreement,
            "annotator_vs_model_kappa": self.annotator_vs_model_kappa,
            "mean_annotation_seconds": self.mean_annotation_seconds,
        }
