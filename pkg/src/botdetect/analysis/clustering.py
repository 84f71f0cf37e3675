"""K-means behavioral clustering over the most important features."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..corpus.types import AccountBundle
from ..errors import DomainError
from ..stats import summarize

SILHOUETTE_SAMPLE = 2000


def _assign(X: np.ndarray, centroids: np.ndarray) -> tuple[np.ndarray, float]:
    # Squared distances to every centroid; argmin takes the lowest index
    # on ties.
    d2 = ((X[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    assignments = np.argmin(d2, axis=1)
    inertia = float(d2[np.arange(X.shape[0]), assignments].sum())
    return assignments, inertia


def _farthest_point_seeds(X: np.ndarray, k: int, first: int) -> np.ndarray:
    """Greedy farthest-point seeding from a given first point."""
    chosen = [first]
    d2 = ((X - X[first]) ** 2).sum(axis=1)
    while len(chosen) < k:
        nxt = int(np.argmax(d2))  # ties: lowest index
        chosen.append(nxt)
        d2 = np.minimum(d2, ((X - X[nxt]) ** 2).sum(axis=1))
    return X[np.asarray(chosen)].copy()


def kmeans(
    X: np.ndarray,
    k: int,
    seed: int = 0,
    restarts: int = 10,
    max_iter: int = 300,
) -> tuple[np.ndarray, np.ndarray, float]:
    """Lloyd's algorithm with farthest-point seeding and restarts.

    Returns (centroids, assignments, inertia) of the best restart;
    ties keep the earliest restart.  Raw coordinates, no normalization.
    """
    X = np.asarray(X, dtype=np.float64)
    n = X.shape[0]
    if not 1 <= k <= n:
        raise DomainError("k must be in [1, %d], got %d" % (n, k))
    rng = np.random.Generator(np.random.PCG64(seed))

    best: Optional[tuple[np.ndarray, np.ndarray, float]] = None
    for _ in range(restarts):
        centroids = _farthest_point_seeds(X, k, int(rng.integers(n)))
        assignments, inertia = _assign(X, centroids)
        for _ in range(max_iter):
            for c in range(k):
                members = X[assignments == c]
                if members.shape[0]:
                    centroids[c] = members.mean(axis=0)
                # An empty cluster keeps its previous centroid.
            new_assignments, new_inertia = _assign(X, centroids)
            # Lloyd steps cannot increase inertia.
            assert new_inertia <= inertia + 1e-9 * max(inertia, 1.0)
            moved = bool(np.any(new_assignments != assignments))
            assignments, inertia = new_assignments, new_inertia
            if not moved:
                break
        if best is None or inertia < best[2]:
            best = (centroids.copy(), assignments.copy(), inertia)
    return best


def silhouette(
    X: np.ndarray,
    assignments: np.ndarray,
    max_points: int = SILHOUETTE_SAMPLE,
    seed: int = 0,
) -> Optional[float]:
    """Mean silhouette coefficient, on a subsample when data is large.

    Returns None when undefined (every sampled point is alone in its
    cluster, or only one cluster is present).
    """
    X = np.asarray(X, dtype=np.float64)
    n = X.shape[0]
    if n > max_points:
        rng = np.random.Generator(np.random.PCG64(seed))
        rows = np.sort(rng.choice(n, size=max_points, replace=False))
        X = X[rows]
        assignments = assignments[rows]
        n = max_points
    clusters = np.unique(assignments)
    if clusters.shape[0] < 2:
        return None
    d = np.sqrt(((X[:, None, :] - X[None, :, :]) ** 2).sum(axis=2))
    values = []
    for i in range(n):
        own = assignments[i]
        same = np.flatnonzero(assignments == own)
        if same.shape[0] < 2:
            continue  # singleton: silhouette undefined for this point
        a = d[i, same].sum() / (same.shape[0] - 1)
        b = np.inf
        for c in clusters:
            if c == own:
                continue
            others = np.flatnonzero(assignments == c)
            b = min(b, float(d[i, others].mean()))
        values.append((b - a) / max(a, b) if max(a, b) > 0 else 0.0)
    if not values:
        return None
    return float(np.mean(values))


@dataclass
class ClusterReport:
    k: int
    assignments: np.ndarray
    centroids: np.ndarray  # in normalized feature space
    inertia: float
    silhouette: Optional[float]
    feature_indices: np.ndarray  # columns used, after zero-variance drop
    dropped_indices: np.ndarray  # zero-variance columns removed
    feature_means: np.ndarray
    feature_stds: np.ndarray

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "assignments": self.assignments.tolist(),
            "centroids": self.centroids.tolist(),
            "inertia": self.inertia,
            "silhouette": self.silhouette,
            "feature_indices": self.feature_indices.tolist(),
            "dropped_indices": self.dropped_indices.tolist(),
        }


def kmeans_cluster(
    X: np.ndarray,
    ranking: Sequence[int],
    top_features: int = 100,
    k: int = 10,
    seed: int = 0,
    restarts: int = 10,
) -> ClusterReport:
    """Cluster accounts in z-scored top-feature space."""
    X = np.asarray(X, dtype=np.float64)
    n, d = X.shape
    if k > n:
        raise DomainError("k=%d exceeds %d accounts" % (k, n))
    ranking = np.asarray(ranking, dtype=np.int64)
    selected = ranking[: min(top_features, ranking.shape[0])]

    sub = X[:, selected]
    means = sub.mean(axis=0)
    stds = sub.std(axis=0)
    keep = stds > 0.0
    if not keep.any():
        raise DomainError("all selected features are constant")
    z = (sub[:, keep] - means[keep]) / stds[keep]

    centroids, assignments, inertia = kmeans(z, k, seed=seed, restarts=restarts)
    return ClusterReport(
        k=k,
        assignments=assignments,
        centroids=centroids,
        inertia=inertia,
        silhouette=silhouette(z, assignments, seed=seed),
        feature_indices=selected[keep],
        dropped_indices=selected[~keep],
        feature_means=means[keep],
        feature_stds=stds[keep],
    )


def cluster_summaries(
    report: ClusterReport,
    bundles: Sequence[AccountBundle],
    scores: Sequence[float],
    feature_names: Sequence[str],
    sample_size: int = 5,
    seed: int = 0,
    top_n_features: int = 5,
) -> list[dict]:
    """Per-cluster digest: scores, activity, distinguishing features, sample."""
    scores = np.asarray(scores, dtype=np.float64)
    rng = np.random.Generator(np.random.PCG64(seed))
    names = [feature_names[i] for i in report.feature_indices]
    digests = []
    for c in range(report.k):
        members = np.flatnonzero(report.assignments == c)
        centroid = report.centroids[c]
        order = np.argsort(-np.abs(centroid), kind="stable")[:top_n_features]
        member_ids = [bundles[i].user.user_id for i in members]
        if member_ids:
            take = min(sample_size, len(member_ids))
            sample = sorted(
                member_ids[int(i)] for i in rng.choice(len(member_ids), size=take, replace=False)
            )
        else:
            sample = []
        digests.append(
            {
                "cluster": c,
                "size": int(members.shape[0]),
                "score_summary": summarize(scores[members].tolist()).as_tuple(),
                "mean_timeline_length": float(
                    np.mean([len(bundles[i].timeline) for i in members])
                )
                if members.shape[0]
                else 0.0,
                "mean_statuses_count": float(
                    np.mean([bundles[i].user.statuses_count for i in members])
                )
                if members.shape[0]
                else 0.0,
                "top_features": [
                    {"name": names[int(i)], "centroid_z": float(centroid[int(i)])}
                    for i in order
                ],
                "sample_user_ids": sample,
            }
        )
    return digests
