from datetime import datetime, timedelta, timezone

import numpy as np
import pytest

from botdetect.analysis import (
    PROFILE_BINS,
    cluster_summaries,
    connectivity_profiles,
    default_intervals,
    flow_profiles,
    kmeans,
    kmeans_cluster,
    profiles_to_rows,
    reciprocity,
    silhouette,
)
from botdetect.corpus import AccountBundle, SocialEdges, TweetRecord, UserRecord
from botdetect.errors import DomainError

EPOCH = datetime(2016, 1, 1, tzinfo=timezone.utc)


def brute_force_inertia(X, k):
    """Lower bound: best inertia over every partition of the points.

    Feasible only for tiny n and k; used to check kmeans optimality on
    the four-point configuration.
    """
    n = X.shape[0]
    best = np.inf
    for mask in range(k ** n):
        digits = []
        value = mask
        for _ in range(n):
            digits.append(value % k)
            value //= k
        if len(set(digits)) != k:
            continue
        total = 0.0
        for c in range(k):
            members = X[np.asarray(digits) == c]
            total += ((members - members.mean(axis=0)) ** 2).sum()
        best = min(best, total)
    return best


class TestKmeans:
    def test_four_point_optimal(self):
        X = np.array([[0.0], [0.5], [10.0], [10.5]])
        centroids, assignments, inertia = kmeans(X, 2, seed=0)
        # optimal split pairs the two low and the two high points
        assert assignments[0] == assignments[1]
        assert assignments[2] == assignments[3]
        assert assignments[0] != assignments[2]
        assert sorted(centroids[:, 0].tolist()) == [0.25, 10.25]
        assert inertia == pytest.approx(0.25)
        assert inertia == pytest.approx(brute_force_inertia(X, 2))

    def test_reaches_lloyd_fixed_point_above_optimum(self):
        rng = np.random.Generator(np.random.PCG64(8))
        for trial in range(5):
            X = rng.normal(size=(7, 2))
            centroids, assignments, inertia = kmeans(X, 2, seed=trial)
            # Lloyd is local, so the exhaustive optimum only bounds it
            optimum = brute_force_inertia(X, 2)
            assert inertia >= optimum - 1e-9
            assert inertia <= 2.0 * optimum + 1e-9
            # fixed point: centroids are member means
            for c in range(2):
                members = X[assignments == c]
                assert np.allclose(centroids[c], members.mean(axis=0))

    def test_assignments_are_nearest_centroid(self):
        rng = np.random.Generator(np.random.PCG64(3))
        X = rng.normal(size=(60, 4))
        centroids, assignments, inertia = kmeans(X, 5, seed=1)
        d2 = ((X[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        assert np.array_equal(np.argmin(d2, axis=1), assignments)
        assert inertia == pytest.approx(
            d2[np.arange(60), assignments].sum()
        )

    def test_k_equals_n_zero_inertia(self):
        X = np.array([[0.0], [1.0], [2.0]])
        _, assignments, inertia = kmeans(X, 3, seed=0)
        assert inertia == 0.0
        assert sorted(assignments.tolist()) == [0, 1, 2]

    def test_k_one_centroid_is_mean(self):
        X = np.array([[0.0, 2.0], [4.0, 6.0]])
        centroids, assignments, inertia = kmeans(X, 1, seed=0)
        assert np.allclose(centroids[0], [2.0, 4.0])
        assert np.all(assignments == 0)

    def test_invalid_k_rejected(self):
        X = np.zeros((3, 1))
        with pytest.raises(DomainError):
            kmeans(X, 0, seed=0)
        with pytest.raises(DomainError):
            kmeans(X, 4, seed=0)

    def test_deterministic(self):
        rng = np.random.Generator(np.random.PCG64(4))
        X = rng.normal(size=(40, 3))
        a = kmeans(X, 4, seed=2)
        b = kmeans(X, 4, seed=2)
        assert np.array_equal(a[0], b[0])
        assert np.array_equal(a[1], b[1])
        assert a[2] == b[2]


class TestSilhouette:
    def test_well_separated_clusters_score_high(self):
        rng = np.random.Generator(np.random.PCG64(5))
        X = np.vstack(
            [rng.normal(0, 0.1, size=(20, 2)), rng.normal(10, 0.1, size=(20, 2))]
        )
        assignments = np.array([0] * 20 + [1] * 20)
        value = silhouette(X, assignments)
        assert value > 0.95

    def test_single_cluster_undefined(self):
        X = np.zeros((5, 2))
        assert silhouette(X, np.zeros(5, dtype=int)) is None

    def test_all_singletons_undefined(self):
        X = np.array([[0.0], [1.0], [2.0]])
        assert silhouette(X, np.array([0, 1, 2])) is None

    def test_subsample_is_deterministic(self):
        rng = np.random.Generator(np.random.PCG64(6))
        X = rng.normal(size=(120, 2))
        assignments = rng.integers(0, 3, size=120)
        a = silhouette(X, assignments, max_points=50, seed=9)
        b = silhouette(X, assignments, max_points=50, seed=9)
        assert a == b


class TestKmeansCluster:
    def test_normalized_clustering_report(self):
        rng = np.random.Generator(np.random.PCG64(7))
        X = np.hstack(
            [
                np.vstack(
                    [rng.normal(0, 1, size=(30, 3)), rng.normal(8, 1, size=(30, 3))]
                ),
                np.ones((60, 2)),  # constant columns must be dropped
            ]
        )
        ranking = [3, 0, 1, 2, 4]
        report = kmeans_cluster(X, ranking, top_features=5, k=2, seed=0)
        assert report.k == 2
        assert sorted(report.dropped_indices.tolist()) == [3, 4]
        assert sorted(report.feature_indices.tolist()) == [0, 1, 2]
        first = report.assignments[:30]
        second = report.assignments[30:]
        assert len(set(first.tolist())) == 1
        assert len(set(second.tolist())) == 1
        assert first[0] != second[0]

    def test_all_constant_rejected(self):
        X = np.ones((10, 3))
        with pytest.raises(DomainError):
            kmeans_cluster(X, [0, 1, 2], k=2, seed=0)

    def test_cluster_summaries_digest(self):
        user_a = UserRecord(
            user_id="a", screen_name="a", display_name="a", description="",
            created_at=EPOCH, utc_offset_seconds=0, friends_count=0,
            followers_count=0, favourites_count=0, statuses_count=7,
            default_profile=False, default_profile_image=False,
        )
        user_b = UserRecord(
            user_id="b", screen_name="b", display_name="b", description="",
            created_at=EPOCH, utc_offset_seconds=0, friends_count=0,
            followers_count=0, favourites_count=0, statuses_count=3,
            default_profile=False, default_profile_image=False,
        )
        bundles = [
            AccountBundle(user=user_a, timeline=(), mentions_of_user=()),
            AccountBundle(user=user_b, timeline=(), mentions_of_user=()),
        ]
        X = np.array([[0.0, 1.0], [10.0, 3.0]])
        report = kmeans_cluster(X, [0, 1], k=2, seed=0)
        digests = cluster_summaries(
            report, bundles, scores=[0.2, 0.9], feature_names=["f0", "f1"]
        )
        assert len(digests) == 2
        sizes = sorted(d["size"] for d in digests)
        assert sizes == [1, 1]
        for digest in digests:
            assert digest["sample_user_ids"] in (["a"], ["b"])
            assert len(digest["top_features"]) <= 2


class TestReciprocity:
    def test_examples(self):
        assert reciprocity({"a", "b"}, {"b", "c"}) == 0.5
        assert reciprocity({"a"}, set()) == 0.0
        assert reciprocity(set(), {"a"}) is None


def make_tweet(tid, author, **overrides):
    fields = dict(
        tweet_id=tid,
        author=author,
        text="words",
        created_at=EPOCH,
        mentions=(),
        hashtags=(),
        is_retweet=False,
    )
    fields.update(overrides)
    return TweetRecord(**fields)


class TestProfiles:
    def test_connectivity_mass_conservation(self):
        scores = {"a": 0.05, "b": 0.95, "c": 0.5}
        edges = SocialEdges(
            friend_edges=[("a", "b"), ("b", "c"), ("a", "c")],
            follower_edges=[],
        )
        profiles, dropped = connectivity_profiles(scores, edges)
        assert dropped == 0
        total = sum(
            int(p.histograms[kind].sum())
            for p in profiles
            for kind in ("friend", "follower")
        )
        # three directed pairs, each seen once as friend and once as follower
        assert total == 6

    def test_profile_placement(self):
        scores = {"a": 0.05, "b": 0.95}
        edges = SocialEdges(friend_edges=[("a", "b")], follower_edges=[])
        profiles, dropped = connectivity_profiles(scores, edges)
        # a (score 0.05, interval 0) has friend b with score 0.95 (bin 19)
        assert profiles[0].histograms["friend"][19] == 1
        assert profiles[0].account_count == 1
        # b (interval 9) has follower a with score 0.05 (bin 1)
        assert profiles[9].histograms["follower"][1] == 1
        assert not profiles[0].empty
        assert profiles[5].empty

    def test_unscored_neighbors_dropped(self):
        scores = {"a": 0.5}
        edges = SocialEdges(friend_edges=[("a", "x"), ("y", "a")], follower_edges=[])
        profiles, dropped = connectivity_profiles(scores, edges)
        # each missing endpoint drops a pair in both direction views
        assert dropped == 4
        assert all(p.histograms["friend"].sum() == 0 for p in profiles)

    def test_no_edges_rejected(self):
        with pytest.raises(DomainError):
            connectivity_profiles({"a": 0.5}, SocialEdges())

    def test_flow_profiles_distinct_pairs(self):
        author = UserRecord(
            user_id="a", screen_name="a", display_name="a", description="",
            created_at=EPOCH, utc_offset_seconds=0, friends_count=0,
            followers_count=0, favourites_count=0, statuses_count=3,
            default_profile=False, default_profile_image=False,
        )
        timeline = (
            make_tweet("t1", author, mentions=("b",)),
            make_tweet("t2", author, mentions=("b",)),  # duplicate pair
            make_tweet("t3", author, is_retweet=True, retweeted_author_id="c"),
        )
        bundles = [AccountBundle(user=author, timeline=timeline, mentions_of_user=())]
        scores = {"a": 0.15, "b": 0.55, "c": 0.85}
        profiles, dropped = flow_profiles(scores, bundles)
        assert dropped == 0
        # account a sits in interval 1; each neighbor counted once
        assert profiles[1].histograms["mentioned"].sum() == 1
        assert profiles[1].histograms["mentioned"][11] == 1  # score 0.55
        assert profiles[1].histograms["retweeted"][17] == 1  # score 0.85

    def test_rows_flatten_all_bins(self):
        scores = {"a": 0.05, "b": 0.95}
        edges = SocialEdges(friend_edges=[("a", "b")], follower_edges=[])
        profiles, _ = connectivity_profiles(scores, edges)
        rows = profiles_to_rows(profiles)
        assert len(rows) == 10 * 2 * PROFILE_BINS
        assert sum(count for *_, count in rows) == 2

    def test_default_intervals_cover_unit_range(self):
        intervals = default_intervals()
        assert intervals[0][0] == 0.0
        assert intervals[-1][1] == 1.0
        for (lo_a, hi_a), (lo_b, hi_b) in zip(intervals, intervals[1:]):
            assert hi_a == lo_b
