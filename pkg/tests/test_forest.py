import json
import os
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from botdetect.errors import (
    CompatibilityError,
    DegenerateModelError,
    DomainError,
    TrainingError,
)
from botdetect.features import FeatureVector
from botdetect.forest import (
    ForestModel,
    TrainParams,
    compiled_available,
    get_backend,
    gini,
    importances,
    load_model,
    model_from_dict,
    model_to_dict,
    model_to_json,
    save_model,
    score,
    score_matrix,
    train,
)
from botdetect.forest.backend import best_split


def blobs(n_per=40, d=6, seed=0):
    rng = np.random.Generator(np.random.PCG64(seed))
    neg = rng.normal(0.0, 1.0, size=(n_per, d))
    pos = rng.normal(2.5, 1.0, size=(n_per, d))
    X = np.vstack([neg, pos])
    y = np.array([0] * n_per + [1] * n_per, dtype=np.int8)
    perm = rng.permutation(2 * n_per)
    return X[perm], y[perm]


def brute_force_split(X, y, idx, feats):
    """Exhaustive split search with exact rational scores.

    Mirrors the production tie-break: strict improvement over the
    parent, lowest feature index first, lowest threshold second.
    """
    labels = [int(y[i]) for i in idx]
    m = len(labels)
    p = sum(labels)
    q = m - p
    parent = Fraction(p * p + q * q, m)
    best = (-1, 0.0, parent)
    for feat in feats:
        values = sorted((float(X[i, feat]), int(y[i])) for i in idx)
        for cut in range(1, m):
            lo, hi = values[cut - 1][0], values[cut][0]
            if lo == hi:
                continue
            pl = sum(label for _, label in values[:cut])
            ql = cut - pl
            pr = p - pl
            qr = (m - cut) - (p - pl)
            s = Fraction(pl * pl + ql * ql, cut) + Fraction(pr * pr + qr * qr, m - cut)
            if s > best[2]:
                mid = (lo + hi) / 2.0
                if mid >= hi:
                    mid = lo
                best = (int(feat), mid, s)
    return best[0], best[1]


class TestGini:
    def test_pinned_values(self):
        assert gini(1, 1) == 0.5
        assert gini(0, 5) == 0.0
        assert gini(5, 0) == 0.0
        assert gini(1, 3) == 0.375
        assert gini(3, 1) == 0.375

    def test_empty_node_rejected(self):
        with pytest.raises(DomainError):
            gini(0, 0)


class TestBestSplit:
    def test_perfect_split_found(self):
        X = np.array([[0.0], [1.0], [2.0], [3.0]])
        y = np.array([0, 0, 1, 1], dtype=np.int8)
        feat, thr = best_split(X, y, np.arange(4), np.array([0]))
        assert feat == 0
        assert thr == 1.5

    def test_pure_node_returns_sentinel(self):
        X = np.array([[0.0], [1.0]])
        y = np.array([1, 1], dtype=np.int8)
        assert best_split(X, y, np.arange(2), np.array([0])) == (-1, 0.0)

    def test_constant_feature_returns_sentinel(self):
        X = np.zeros((4, 1))
        y = np.array([0, 1, 0, 1], dtype=np.int8)
        assert best_split(X, y, np.arange(4), np.array([0])) == (-1, 0.0)

    def test_tie_breaks_to_lowest_feature(self):
        # two identical perfectly separating features
        col = np.array([0.0, 1.0, 2.0, 3.0])
        X = np.column_stack([col, col])
        y = np.array([0, 0, 1, 1], dtype=np.int8)
        feat, thr = best_split(X, y, np.arange(4), np.array([0, 1]))
        assert feat == 0

    def test_matches_brute_force_on_random_data(self):
        rng = np.random.Generator(np.random.PCG64(77))
        for trial in range(25):
            n = int(rng.integers(5, 40))
            d = int(rng.integers(1, 5))
            X = np.round(rng.normal(size=(n, d)) * 2) / 2  # many duplicates
            y = rng.integers(0, 2, size=n).astype(np.int8)
            idx = np.arange(n)
            feats = np.arange(d)
            got = best_split(X, y, idx, feats)
            want = brute_force_split(X, y, idx, feats)
            assert got == want, "trial %d" % trial

    def test_subset_rows_and_features(self):
        rng = np.random.Generator(np.random.PCG64(5))
        X = rng.normal(size=(30, 6))
        y = rng.integers(0, 2, size=30).astype(np.int8)
        idx = rng.choice(30, size=18, replace=True).astype(np.int64)
        feats = np.array([1, 3, 4], dtype=np.int64)
        assert best_split(X, y, idx, feats) == brute_force_split(X, y, idx, feats)


@pytest.mark.skipif(not compiled_available(), reason="compiled splitter not built")
class TestBackendParity:
    def test_fuzz_bit_identical(self):
        py = get_backend("python")
        cc = get_backend("compiled")
        rng = np.random.Generator(np.random.PCG64(123))
        for trial in range(50):
            n = int(rng.integers(4, 80))
            d = int(rng.integers(1, 8))
            X = rng.normal(size=(n, d))
            if trial % 3 == 0:
                X = np.floor(X * 3) / 3  # force ties
            y = rng.integers(0, 2, size=n).astype(np.int8)
            idx = rng.choice(n, size=n, replace=True).astype(np.int64)
            feats = np.sort(
                rng.choice(d, size=int(rng.integers(1, d + 1)), replace=False)
            ).astype(np.int64)
            a = py.best_split(X, y, idx, feats)
            b = cc.best_split(X, y, idx, feats)
            assert a[0] == b[0], "trial %d" % trial
            # threshold must match to the bit
            assert np.float64(a[1]).tobytes() == np.float64(b[1]).tobytes()


class TestTraining:
    def test_separable_data_scores_well(self):
        X, y = blobs(seed=1)
        model = train(X, y, TrainParams(n_trees=30), seed=11)
        scores = score_matrix(model, X)
        assert scores[y == 1].mean() > 0.9
        assert scores[y == 0].mean() < 0.1

    def test_same_seed_same_model(self):
        X, y = blobs(n_per=25, seed=2)
        a = train(X, y, TrainParams(n_trees=10), seed=3)
        b = train(X, y, TrainParams(n_trees=10), seed=3)
        assert model_to_json(a) == model_to_json(b)
        c = train(X, y, TrainParams(n_trees=10), seed=4)
        assert model_to_json(c) != model_to_json(a)

    def test_workers_do_not_change_model(self):
        X, y = blobs(n_per=25, seed=6)
        serial = train(X, y, TrainParams(n_trees=16, workers=1), seed=9)
        threaded = train(X, y, TrainParams(n_trees=16, workers=8), seed=9)
        assert model_to_json(serial) == model_to_json(threaded)

    def test_max_depth_zero_gives_stumps(self):
        X, y = blobs(n_per=10, seed=7)
        model = train(X, y, TrainParams(n_trees=5, max_depth=0), seed=0)
        for tree in model.trees:
            assert tree.node_count() == 1
            assert tree.feature[0] == -1

    def test_depth_one_trees_are_stumps(self):
        X, y = blobs(n_per=10, seed=8)
        model = train(X, y, TrainParams(n_trees=5, max_depth=1), seed=0)
        for tree in model.trees:
            assert tree.node_count() <= 3

    def test_input_validation(self):
        X = np.zeros((4, 2))
        with pytest.raises(TrainingError):
            train(X, [0, 0, 0, 0], seed=0)  # single class
        with pytest.raises(TrainingError):
            train(X, [0, 1], seed=0)  # shape mismatch
        with pytest.raises(TrainingError):
            train(np.array([[np.nan, 0.0], [1.0, 0.0]]), [0, 1], seed=0)
        with pytest.raises(TrainingError):
            train(X, [0, 1, 2, 1], seed=0)  # non-binary label
        with pytest.raises(TrainingError):
            train(X, [0, 1, 0, 1], TrainParams(n_trees=0), seed=0)
        with pytest.raises(TrainingError):
            train(X, [0, 1, 0, 1], TrainParams(max_features=3), seed=0)

    def test_leaf_scores_are_positive_fractions(self):
        X, y = blobs(n_per=15, seed=10)
        model = train(X, y, TrainParams(n_trees=8), seed=1)
        scores = score_matrix(model, X)
        assert np.all(scores >= 0.0) and np.all(scores <= 1.0)


class TestImportances:
    def test_normalized_and_informative(self):
        rng = np.random.Generator(np.random.PCG64(20))
        n = 120
        X = rng.normal(size=(n, 5))
        y = (X[:, 2] > 0).astype(np.int8)  # only feature 2 matters
        model = train(X, y, TrainParams(n_trees=20), seed=5)
        report = importances(model)
        assert report.values.sum() == pytest.approx(1.0)
        assert report.ranking[0] == 2
        assert report.values[2] > 0.6

    def test_splitless_model_rejected(self):
        X = np.zeros((10, 3))  # constant features, no valid split
        y = np.array([0, 1] * 5, dtype=np.int8)
        model = train(X, y, TrainParams(n_trees=3), seed=0)
        with pytest.raises(DegenerateModelError):
            importances(model)


class TestSerialization:
    def test_round_trip_preserves_bytes(self, tmp_path):
        X, y = blobs(n_per=15, seed=13)
        model = train(
            X, y, TrainParams(n_trees=6), seed=2, registry_fingerprint="abc",
            metadata={"note": "x"},
        ).with_threshold(0.4)
        path = tmp_path / "model.json"
        save_model(model, path)
        loaded = load_model(path)
        assert model_to_json(loaded) == model_to_json(model)
        assert loaded.threshold == 0.4
        assert loaded.metadata == {"note": "x"}
        path2 = tmp_path / "model2.json"
        save_model(loaded, path2)
        assert path.read_bytes() == path2.read_bytes()

    def test_scores_survive_round_trip(self, tmp_path):
        X, y = blobs(n_per=15, seed=14)
        model = train(X, y, TrainParams(n_trees=6), seed=2)
        path = tmp_path / "model.json"
        save_model(model, path)
        loaded = load_model(path)
        assert np.array_equal(score_matrix(loaded, X), score_matrix(model, X))

    def test_unknown_format_version_rejected(self):
        X, y = blobs(n_per=10, seed=15)
        data = model_to_dict(train(X, y, TrainParams(n_trees=2), seed=0))
        data["format_version"] = 99
        with pytest.raises(CompatibilityError):
            model_from_dict(data)

    def test_treeless_model_rejected(self):
        X, y = blobs(n_per=10, seed=16)
        data = model_to_dict(train(X, y, TrainParams(n_trees=2), seed=0))
        data["trees"] = []
        with pytest.raises(CompatibilityError):
            model_from_dict(data)


class TestScoring:
    def test_fingerprint_mismatch_rejected(self):
        X, y = blobs(n_per=10, seed=17)
        model = train(X, y, TrainParams(n_trees=2), seed=0,
                      registry_fingerprint="right")
        vector = FeatureVector(
            values=X[0], registry_fingerprint="wrong"
        )
        with pytest.raises(CompatibilityError):
            score(model, vector)

    def test_matching_fingerprint_scores(self):
        X, y = blobs(n_per=10, seed=18)
        model = train(X, y, TrainParams(n_trees=2), seed=0,
                      registry_fingerprint="fp")
        vector = FeatureVector(values=X[0], registry_fingerprint="fp")
        value = score(model, vector)
        assert 0.0 <= value <= 1.0
        assert value == score_matrix(model, X[:1])[0]

    def test_wrong_width_rejected(self):
        X, y = blobs(n_per=10, seed=19)
        model = train(X, y, TrainParams(n_trees=2), seed=0)
        with pytest.raises(CompatibilityError):
            score_matrix(model, X[:, :3])


@pytest.mark.skipif(not compiled_available(), reason="compiled splitter not built")
class TestCrossBackendTraining:
    def test_forced_python_backend_trains_identical_model(self, tmp_path):
        """A subprocess with the python kernel must reproduce the model."""
        X, y = blobs(n_per=20, d=4, seed=21)
        model = train(X, y, TrainParams(n_trees=10), seed=6)
        np.save(tmp_path / "X.npy", X)
        np.save(tmp_path / "y.npy", y)
        script = (
            "import numpy as np\n"
            "from botdetect.forest import TrainParams, model_to_json, train\n"
            "from botdetect.forest.backend import active_backend\n"
            "assert active_backend() == 'python'\n"
            "X = np.load(%r)\n"
            "y = np.load(%r)\n"
            "model = train(X, y, TrainParams(n_trees=10), seed=6)\n"
            "print(model_to_json(model))\n"
        ) % (str(tmp_path / "X.npy"), str(tmp_path / "y.npy"))
        env = dict(os.environ, BOTDETECT_SPLIT_BACKEND="python")
        result = subprocess.run(
            [sys.executable, "-c", script],
            capture_output=True,
            text=True,
            env=env,
        )
        assert result.returncode == 0, result.stderr
        assert result.stdout.strip() == model_to_json(model)
