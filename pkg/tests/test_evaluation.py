import numpy as np
import pytest

from botdetect.errors import DomainError
from botdetect.evaluation import (
    auc,
    classification_rates,
    cohens_kappa,
    cross_validate,
    estimate_from_scores,
    infer_threshold,
    labels_to_binary,
    pairwise_agreement,
    per_class_models,
    per_decile_accuracy,
    stratified_folds,
    weighted_overall_accuracy,
)
from botdetect.features import FeatureClass
from botdetect.forest import TrainParams


def trapezoid_auc(scores, labels):
    """ROC integration by trapezoid rule, an independent AUC formulation."""
    y = np.asarray(labels)
    s = np.asarray(scores, dtype=np.float64)
    order = np.argsort(-s, kind="stable")
    y = y[order]
    s = s[order]
    n_pos = int(y.sum())
    n_neg = len(y) - n_pos
    tps = np.cumsum(y)
    fps = np.cumsum(1 - y)
    # collapse runs of equal scores so ties form one diagonal segment
    keep = np.flatnonzero(np.diff(s)) if len(s) > 1 else np.array([], dtype=int)
    idx = np.concatenate([keep, [len(s) - 1]])
    tpr = np.concatenate([[0.0], tps[idx] / n_pos])
    fpr = np.concatenate([[0.0], fps[idx] / n_neg])
    return float(np.trapezoid(tpr, fpr))


class TestAuc:
    def test_perfect_separation(self):
        assert auc([0.1, 0.2, 0.8, 0.9], [0, 0, 1, 1]) == 1.0
        assert auc([0.9, 0.8, 0.2, 0.1], [0, 0, 1, 1]) == 0.0

    def test_all_tied_scores(self):
        assert auc([0.5, 0.5, 0.5, 0.5], [0, 1, 0, 1]) == 0.5

    def test_pinned_mixed_case(self):
        # bot scores 0.8, 0.4; human scores 0.6, 0.4
        # pairs: (0.8>0.6)=1 (0.8>0.4)=1 (0.4<0.6)=0 (0.4=0.4)=0.5 -> 2.5/4
        assert auc([0.6, 0.4, 0.8, 0.4], [0, 0, 1, 1]) == 0.625

    def test_label_names_accepted(self):
        assert auc([0.1, 0.9], ["human", "bot"]) == 1.0

    def test_single_class_rejected(self):
        with pytest.raises(DomainError):
            auc([0.1, 0.9], [1, 1])

    def test_matches_trapezoid_formulation(self):
        rng = np.random.Generator(np.random.PCG64(42))
        for _ in range(20):
            n = int(rng.integers(10, 200))
            scores = np.round(rng.random(n), 2)  # repeated values force ties
            labels = rng.integers(0, 2, size=n)
            if labels.min() == labels.max():
                continue
            assert auc(scores, labels) == pytest.approx(
                trapezoid_auc(scores, labels), abs=1e-9
            )

    def test_labels_to_binary_rejects_unknown(self):
        with pytest.raises(DomainError):
            labels_to_binary(["human", "maybe"])


class TestStratifiedFolds:
    def test_partition_and_balance(self):
        labels = [1] * 25 + [0] * 50
        folds = stratified_folds(labels, 5, seed=3)
        assert len(folds) == 5
        all_rows = np.concatenate(folds)
        assert sorted(all_rows.tolist()) == list(range(75))
        y = np.asarray(labels)
        for fold in folds:
            assert y[fold].sum() == 5  # 25 bots dealt evenly

    def test_deterministic(self):
        labels = [0, 1] * 20
        a = stratified_folds(labels, 4, seed=9)
        b = stratified_folds(labels, 4, seed=9)
        assert all(np.array_equal(x, y) for x, y in zip(a, b))

    def test_too_few_per_class_rejected(self):
        with pytest.raises(DomainError):
            stratified_folds([0, 0, 0, 1], 2, seed=0)


class TestCrossValidate:
    def test_separable_data(self, small_matrix):
        X, y, labels = small_matrix
        result = cross_validate(X, labels, k=3, seed=1, params=TrainParams(n_trees=10))
        assert len(result.fold_aucs) == 3
        assert result.mean_auc == pytest.approx(np.mean(result.fold_aucs))
        assert result.mean_auc > 0.8

    def test_deterministic(self, small_matrix):
        X, y, labels = small_matrix
        params = TrainParams(n_trees=5)
        a = cross_validate(X, labels, k=3, seed=2, params=params)
        b = cross_validate(X, labels, k=3, seed=2, params=params)
        assert a == b


class TestAgreement:
    def test_pairwise(self):
        assert pairwise_agreement(["bot", "bot"], ["bot", "human"]) == 0.5

    def test_kappa_perfect(self):
        assert cohens_kappa(["bot", "human"], ["bot", "human"]) == 1.0

    def test_kappa_pinned_half(self):
        # po = 3/4, pe = (2*3 + 2*1)/16 = 1/2, kappa = (3/4 - 1/2)/(1/2) = 0.5
        a = ["bot", "bot", "human", "human"]
        b = ["bot", "bot", "human", "bot"]
        assert cohens_kappa(a, b) == pytest.approx(0.5)

    def test_kappa_zero_for_independent_marginals(self):
        a = ["bot", "bot", "human", "human"]
        b = ["bot", "human", "bot", "human"]
        assert cohens_kappa(a, b) == pytest.approx(0.0)

    def test_kappa_single_category_agreement(self):
        assert cohens_kappa(["bot", "bot"], ["bot", "bot"]) == 1.0

    def test_kappa_negative_for_systematic_disagreement(self):
        a = ["bot", "human", "bot", "human"]
        b = ["human", "bot", "human", "bot"]
        assert cohens_kappa(a, b) == pytest.approx(-1.0)

    def test_length_mismatch_rejected(self):
        with pytest.raises(DomainError):
            cohens_kappa(["bot"], ["bot", "human"])


class TestThreshold:
    def test_four_point_example(self):
        # humans at 0.1 and 0.3, bots at 0.5 and 0.9: best cut at 0.4
        report = infer_threshold([0.1, 0.3, 0.5, 0.9], [0, 0, 1, 1])
        assert report.threshold == 0.4
        assert report.accuracy == 1.0
        assert report.fp_rate == 0.0
        assert report.fn_rate == 0.0

    def test_tie_resolves_to_lowest(self):
        # any threshold in (0.2, 0.8) is perfect; midpoint candidates are
        # 0.5 only, so compare against 0 and 1 edge candidates
        report = infer_threshold([0.2, 0.8], [0, 1])
        assert report.threshold == 0.5

    def test_matches_grid_search(self):
        rng = np.random.Generator(np.random.PCG64(10))
        scores = rng.random(80)
        labels = (scores + rng.normal(0, 0.3, 80) > 0.5).astype(int)
        if labels.min() == labels.max():
            pytest.skip("degenerate draw")
        report = infer_threshold(scores, labels)
        grid = np.linspace(0.0, 1.0, 10001)
        best = max(
            float((np.where(scores >= t, 1, 0) == labels).mean()) for t in grid
        )
        assert report.accuracy == pytest.approx(best, abs=1e-12)

    def test_single_class_rejected(self):
        with pytest.raises(DomainError):
            infer_threshold([0.2, 0.8], [1, 1])

    def test_classification_rates_pinned(self):
        report = classification_rates([0.1, 0.6, 0.4, 0.9], [0, 0, 1, 1], 0.5)
        assert report.accuracy == 0.5
        assert report.fp_rate == 0.5  # human at 0.6 called bot
        assert report.fn_rate == 0.5  # bot at 0.4 called human


class TestDecileAccuracy:
    def test_per_decile_bins(self):
        scores = [0.05, 0.15, 0.95, 0.85]
        labels = [0, 1, 1, 0]
        acc = per_decile_accuracy(scores, labels, threshold=0.5)
        assert acc[0] == 1.0  # 0.05 predicted human, is human
        assert acc[1] == 0.0  # 0.15 predicted human, is bot
        assert acc[8] == 0.0
        assert acc[9] == 1.0
        assert acc[5] is None

    def test_score_one_lands_in_top_decile(self):
        acc = per_decile_accuracy([1.0, 0.0], [1, 0])
        assert acc[9] == 1.0
        assert acc[0] == 1.0

    def test_weighted_overall(self):
        accuracies = [1.0, None, 0.5] + [None] * 7
        weights = [1.0, 5.0, 3.0] + [0.0] * 7
        # (1*1 + 0.5*3) / 4
        assert weighted_overall_accuracy(accuracies, weights) == pytest.approx(0.625)

    def test_weighted_overall_validation(self):
        with pytest.raises(DomainError):
            weighted_overall_accuracy([1.0] * 10, [1.0] * 9)
        with pytest.raises(DomainError):
            weighted_overall_accuracy([None] * 10, [1.0] * 10)
        with pytest.raises(DomainError):
            weighted_overall_accuracy([1.0] * 10, [-1.0] + [1.0] * 9)


class TestPopulationEstimate:
    def test_fraction_and_histogram(self):
        scores = [0.05, 0.25, 0.55, 0.75, 0.95]
        estimate = estimate_from_scores(iter(scores), threshold=0.5)
        assert estimate.bot_fraction == 0.6
        assert estimate.total == 5
        assert estimate.histogram.sum() == 5
        assert estimate.histogram[5] == 1  # 0.05 in bin [0.05, 0.06)
        rows = estimate.histogram_rows()
        assert len(rows) == 100
        assert rows[5] == (0.05, 0.06, 1)

    def test_boundary_scores(self):
        estimate = estimate_from_scores([0.0, 1.0], threshold=1.0)
        assert estimate.bot_fraction == 0.5
        assert estimate.histogram[0] == 1
        assert estimate.histogram[99] == 1

    def test_out_of_range_rejected(self):
        with pytest.raises(DomainError):
            estimate_from_scores([1.5], threshold=0.5)
        with pytest.raises(DomainError):
            estimate_from_scores([], threshold=0.5)
        with pytest.raises(DomainError):
            estimate_from_scores([0.5], threshold=2.0)


class TestPerClassModels:
    def test_returns_auc_per_class(self, small_corpus, registry):
        bundles, labels, _ = small_corpus
        X = registry.extract_matrix(list(bundles))
        results = per_class_models(
            X, labels, registry, k=3, seed=0, params=TrainParams(n_trees=5)
        )
        assert set(results) == set(registry.classes)
        for cls, value in results.items():
            assert 0.0 <= value <= 1.0, cls
        # metadata-only features alone should already separate the synth corpus
        assert results[FeatureClass.USER_META] > 0.7
