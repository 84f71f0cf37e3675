"""Bagged CART forest with Gini splits, built from scratch.

Trees grow unbounded by default, splitting while a candidate strictly
decreases Gini impurity.  Each tree trains on its own bootstrap
resample with a seed derived from the master seed, so training is
bit-reproducible at any worker count.  Scores are the mean leaf
positive-fraction across trees; the positive class is "bot".
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ..errors import (
    CompatibilityError,
    DegenerateModelError,
    DomainError,
    TrainingError,
)
from . import backend

FORMAT_VERSION = 1


def gini(pos: int, neg: int) -> float:
    """Gini impurity 1 - p₊² - p₋² of a node with the given class counts."""
    total = pos + neg
    if total < 1 or pos < 0 or neg < 0:
        raise DomainError("gini needs a non-empty node")
    fp = pos / total
    fn = neg / total
    return 1.0 - fp * fp - fn * fn


@dataclass(frozen=True)
class TrainParams:
    n_trees: int = 100
    max_features: Optional[int] = None  # None means floor(sqrt(d))
    min_samples_split: int = 2
    max_depth: Optional[int] = None
    bootstrap: bool = True
    workers: int = 1

    def resolved_max_features(self, d: int) -> int:
        if self.max_features is not None:
            if not 1 <= self.max_features <= d:
                raise TrainingError(
                    "max_features must be in [1, %d], got %d" % (d, self.max_features)
                )
            return self.max_features
        return max(int(math.isqrt(d)), 1)


@dataclass
class Tree:
    """Flat node arrays; index 0 is the root, feature -1 marks a leaf."""

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    n: np.ndarray
    pos: np.ndarray

    def node_count(self) -> int:
        return len(self.feature)

    def leaf_values(self) -> np.ndarray:
        return self.pos / np.maximum(self.n, 1)


@dataclass
class ForestModel:
    trees: list[Tree]
    params: TrainParams
    seed: int
    registry_fingerprint: str
    n_features: int
    threshold: Optional[float] = None
    oob_available: bool = False
    metadata: dict = field(default_factory=dict)

    def with_threshold(self, threshold: float) -> "ForestModel":
        return ForestModel(
            trees=self.trees,
            params=self.params,
            seed=self.seed,
            registry_fingerprint=self.registry_fingerprint,
            n_features=self.n_features,
            threshold=threshold,
            oob_available=self.oob_available,
            metadata=dict(self.metadata),
        )


def _build_tree(
    X: np.ndarray,
    y: np.ndarray,
    seed_seq: np.random.SeedSequence,
    params: TrainParams,
    k: int,
) -> Tree:
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    n, d = X.shape
    if params.bootstrap:
        idx = rng.integers(0, n, size=n, dtype=np.int64)
    else:
        idx = np.arange(n, dtype=np.int64)

    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    n_arr: list[int] = []
    pos_arr: list[int] = []

    def new_node() -> int:
        feature.append(-1)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        n_arr.append(0)
        pos_arr.append(0)
        return len(feature) - 1

    max_depth = params.max_depth if params.max_depth is not None else np.inf
    root = new_node()
    stack: list[tuple[int, np.ndarray, int]] = [(root, idx, 0)]
    while stack:
        node, rows, depth = stack.pop()
        m = rows.shape[0]
        p = int(y[rows].sum())
        n_arr[node] = m
        pos_arr[node] = p
        if p == 0 or p == m or m < params.min_samples_split or depth >= max_depth:
            continue
        feats = rng.permutation(d)[:k].astype(np.int64)
        feats.sort()
        best_feat, best_thr = backend.best_split(X, y, rows, feats)
        if best_feat < 0:
            continue
        mask = X[rows, best_feat] <= best_thr
        left_rows = rows[mask]
        right_rows = rows[~mask]
        li = new_node()
        ri = new_node()
        feature[node] = best_feat
        threshold[node] = best_thr
        left[node] = li
        right[node] = ri
        # Right first so the left subtree is numbered before the right one.
        stack.append((ri, right_rows, depth + 1))
        stack.append((li, left_rows, depth + 1))

    return Tree(
        feature=np.asarray(feature, dtype=np.int64),
        threshold=np.asarray(threshold, dtype=np.float64),
        left=np.asarray(left, dtype=np.int64),
        right=np.asarray(right, dtype=np.int64),
        n=np.asarray(n_arr, dtype=np.int64),
        pos=np.asarray(pos_arr, dtype=np.int64),
    )


def train(
    X: np.ndarray,
    y: Sequence[int],
    params: TrainParams = TrainParams(),
    seed: int = 0,
    registry_fingerprint: str = "",
    metadata: Optional[dict] = None,
) -> ForestModel:
    """Train a forest on rows of ``X`` with binary labels (1 = bot)."""
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int8)
    if X.ndim != 2:
        raise TrainingError("X must be a 2-D matrix")
    n, d = X.shape
    if n != y.shape[0]:
        raise TrainingError("X has %d rows but y has %d labels" % (n, y.shape[0]))
    if n < 2:
        raise TrainingError("need at least 2 samples")
    if not np.all(np.isfinite(X)):
        raise TrainingError("X contains non-finite values")
    if not np.isin(y, (0, 1)).all():
        raise TrainingError("labels must be 0 or 1")
    if y.min() == y.max():
        raise TrainingError("training data contains a single class")
    if params.n_trees < 1:
        raise TrainingError("n_trees must be >= 1")

    k = params.resolved_max_features(d)
    seeds = np.random.SeedSequence(seed).spawn(params.n_trees)

    if params.workers > 1:
        with ThreadPoolExecutor(max_workers=params.workers) as pool:
            trees = list(
                pool.map(lambda s: _build_tree(X, y, s, params, k), seeds)
            )
    else:
        trees = [_build_tree(X, y, s, params, k) for s in seeds]

    return ForestModel(
        trees=trees,
        params=params,
        seed=seed,
        registry_fingerprint=registry_fingerprint,
        n_features=d,
        metadata=dict(metadata) if metadata else {},
    )


def _tree_scores(tree: Tree, X: np.ndarray) -> np.ndarray:
    node = np.zeros(X.shape[0], dtype=np.int64)
    rows = np.arange(X.shape[0])
    while True:
        feats = tree.feature[node]
        internal = feats >= 0
        if not internal.any():
            break
        go_left = X[rows, np.maximum(feats, 0)] <= tree.threshold[node]
        node = np.where(
            internal, np.where(go_left, tree.left[node], tree.right[node]), node
        )
    values = tree.leaf_values()
    return values[node]


def score_matrix(model: ForestModel, X: np.ndarray) -> np.ndarray:
    """Scores for raw feature rows (no fingerprint check)."""
    X = np.ascontiguousarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.n_features:
        raise CompatibilityError(
            "expected %d features per row, got %s" % (model.n_features, X.shape)
        )
    total = np.zeros(X.shape[0], dtype=np.float64)
    for tree in model.trees:
        total += _tree_scores(tree, X)
    return total / len(model.trees)


def score(model: ForestModel, vector) -> float:
    """Score one FeatureVector; verifies the registry fingerprint."""
    if vector.registry_fingerprint != model.registry_fingerprint:
        raise CompatibilityError(
            "vector fingerprint %s does not match model fingerprint %s"
            % (vector.registry_fingerprint, model.registry_fingerprint)
        )
    return float(score_matrix(model, vector.values[None, :])[0])


@dataclass(frozen=True)
class ImportanceReport:
    values: np.ndarray  # normalized to sum 1
    ranking: np.ndarray  # feature indices, most important first


def importances(model: ForestModel) -> ImportanceReport:
    """Mean-impurity-decrease importances, normalized to sum 1."""
    totals = np.zeros(model.n_features, dtype=np.float64)
    for tree in model.trees:
        internal = tree.feature >= 0
        if not internal.any():
            continue
        m = tree.n[internal].astype(np.float64)
        p = tree.pos[internal].astype(np.float64)
        q = m - p
        li = tree.left[internal]
        ri = tree.right[internal]
        nl = tree.n[li].astype(np.float64)
        pl = tree.pos[li].astype(np.float64)
        ql = nl - pl
        nr = tree.n[ri].astype(np.float64)
        pr = tree.pos[ri].astype(np.float64)
        qr = nr - pr
        s_split = (pl * pl + ql * ql) / nl + (pr * pr + qr * qr) / nr
        delta = s_split / m - (p * p + q * q) / (m * m)
        weight = m / float(tree.n[0])
        np.add.at(totals, tree.feature[internal], weight * delta)
    total = totals.sum()
    if total <= 0.0:
        raise DegenerateModelError("model has no impurity-decreasing splits")
    values = totals / total
    ranking = np.argsort(-values, kind="stable")
    return ImportanceReport(values=values, ranking=ranking)


def model_to_dict(model: ForestModel) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "params": {
            "n_trees": model.params.n_trees,
            "max_features": model.params.max_features,
            "min_samples_split": model.params.min_samples_split,
            "max_depth": model.params.max_depth,
            "bootstrap": model.params.bootstrap,
        },
        "seed": model.seed,
        "registry_fingerprint": model.registry_fingerprint,
        "n_features": model.n_features,
        "threshold": model.threshold,
        "oob_available": model.oob_available,
        "metadata": model.metadata,
        "trees": [
            {
                "feature": tree.feature.tolist(),
                "threshold": tree.threshold.tolist(),
                "left": tree.left.tolist(),
                "right": tree.right.tolist(),
                "n": tree.n.tolist(),
                "pos": tree.pos.tolist(),
            }
            for tree in model.trees
        ],
    }


def model_from_dict(data: dict) -> ForestModel:
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise CompatibilityError("unsupported model format version %r" % version)
    params = TrainParams(
        n_trees=data["params"]["n_trees"],
        max_features=data["params"]["max_features"],
        min_samples_split=data["params"]["min_samples_split"],
        max_depth=data["params"]["max_depth"],
        bootstrap=data["params"]["bootstrap"],
    )
    trees = [
        Tree(
            feature=np.asarray(t["feature"], dtype=np.int64),
            threshold=np.asarray(t["threshold"], dtype=np.float64),
            left=np.asarray(t["left"], dtype=np.int64),
            right=np.asarray(t["right"], dtype=np.int64),
            n=np.asarray(t["n"], dtype=np.int64),
            pos=np.asarray(t["pos"], dtype=np.int64),
        )
        for t in data["trees"]
    ]
    if not trees:
        raise CompatibilityError("model has no trees")
    return ForestModel(
        trees=trees,
        params=params,
        seed=data["seed"],
        registry_fingerprint=data["registry_fingerprint"],
        n_features=data["n_features"],
        threshold=data.get("threshold"),
        oob_available=data.get("oob_available", False),
        metadata=data.get("metadata", {}),
    )


def model_to_json(model: ForestModel) -> str:
    """Deterministic serialization: same model, same bytes."""
    return json.dumps(model_to_dict(model), sort_keys=True, separators=(",", ":"))


def save_model(model: ForestModel, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(model_to_json(model))
        handle.write("\n")


def load_model(path) -> ForestModel:
    with open(path, "r", encoding="utf-8") as handle:
        return model_from_dict(json.load(handle))
