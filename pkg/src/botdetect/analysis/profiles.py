"""Neighbor-score profiles: who interacts with accounts at each score level.

For every account-score interval, we histogram the scores of the
account's neighbors, split by relation kind.  Connectivity profiles use
follow edges (friend, follower); flow profiles use interactions found
in tweets (mentioned, retweeted).  Histogram mass equals the number of
observed (account, neighbor) pairs, so column sums are auditable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

import numpy as np

from ..corpus.types import AccountBundle, SocialEdges
from ..errors import DomainError

PROFILE_BINS = 20

CONNECTIVITY_KINDS = ("friend", "follower")
FLOW_KINDS = ("mentioned", "retweeted")


def reciprocity(friends: set, followers: set) -> Optional[float]:
    """Fraction of friends who follow back; None when there are no friends."""
    if not friends:
        return None
    return len(friends & followers) / len(friends)


def default_intervals(n: int = 10) -> list[tuple[float, float]]:
    edges = np.linspace(0.0, 1.0, n + 1)
    return [(float(edges[i]), float(edges[i + 1])) for i in range(n)]


@dataclass
class ScoreIntervalProfile:
    interval: tuple[float, float]
    account_count: int
    # relation kind -> (histogram over PROFILE_BINS, dropped neighbor count)
    histograms: dict = field(default_factory=dict)
    empty: bool = False


def _interval_index(score: float, intervals: list[tuple[float, float]]) -> Optional[int]:
    for i, (low, high) in enumerate(intervals):
        # Last interval is closed at the top so score 1.0 lands somewhere.
        if low <= score < high or (i == len(intervals) - 1 and score == high):
            return i
    return None


def _score_bin(score: float) -> int:
    return min(int(score * PROFILE_BINS), PROFILE_BINS - 1)


def _build_profiles(
    scores: Mapping[str, float],
    pairs_by_kind: dict[str, list[tuple[str, str]]],
    intervals: list[tuple[float, float]],
) -> tuple[list[ScoreIntervalProfile], int]:
    profiles = [
        ScoreIntervalProfile(
            interval=iv,
            account_count=0,
            histograms={
                kind: np.zeros(PROFILE_BINS, dtype=np.int64) for kind in pairs_by_kind
            },
        )
        for iv in intervals
    ]
    counted = set()
    for user, score in scores.items():
        idx = _interval_index(score, intervals)
        if idx is not None and user not in counted:
            counted.add(user)
            profiles[idx].account_count += 1

    dropped = 0
    for kind, pairs in pairs_by_kind.items():
        seen: set[tuple[str, str]] = set()
        for account, neighbor in pairs:
            if (account, neighbor) in seen:
                continue
            seen.add((account, neighbor))
            if account not in scores or neighbor not in scores:
                dropped += 1
                continue
            idx = _interval_index(scores[account], intervals)
            if idx is None:
                dropped += 1
                continue
            profiles[idx].histograms[kind][_score_bin(scores[neighbor])] += 1

    for profile in profiles:
        profile.empty = profile.account_count == 0
    return profiles, dropped


def connectivity_profiles(
    scores: Mapping[str, float],
    edges: SocialEdges,
    intervals: Optional[list[tuple[float, float]]] = None,
) -> tuple[list[ScoreIntervalProfile], int]:
    """Friend and follower score histograms per account-score interval.

    Returns (profiles, dropped_pair_count); pairs drop when either
    endpoint has no score.
    """
    if not edges.friend_edges and not edges.follower_edges:
        raise DomainError("no edges to profile")
    intervals = intervals if intervals is not None else default_intervals()
    follows = edges.follows_pairs()
    pairs_by_kind = {
        "friend": [(a, b) for a, b in follows],
        "follower": [(b, a) for a, b in follows],
    }
    return _build_profiles(scores, pairs_by_kind, intervals)


def flow_profiles(
    scores: Mapping[str, float],
    bundles: Iterable[AccountBundle],
    intervals: Optional[list[tuple[float, float]]] = None,
) -> tuple[list[ScoreIntervalProfile], int]:
    """Mention-target and retweet-source score histograms per interval.

    Each distinct (account, neighbor) pair counts once, so a user who
    mentions the same account repeatedly contributes one observation.
    """
    intervals = intervals if intervals is not None else default_intervals()
    mentioned: list[tuple[str, str]] = []
    retweeted: list[tuple[str, str]] = []
    for bundle in bundles:
        uid = bundle.user.user_id
        for tweet in bundle.timeline:
            if tweet.is_retweet and tweet.retweeted_author_id:
                if tweet.retweeted_author_id != uid:
                    retweeted.append((uid, tweet.retweeted_author_id))
            for m in tweet.mentions:
                if m != uid and m != tweet.retweeted_author_id:
                    mentioned.append((uid, m))
    return _build_profiles(
        scores, {"mentioned": mentioned, "retweeted": retweeted}, intervals
    )


def profiles_to_rows(
    profiles: list[ScoreIntervalProfile],
) -> list[tuple[float, float, str, float, float, int]]:
    """Flatten to (interval_low, interval_high, relation, bin_low, bin_high, count)."""
    rows = []
    bin_edges = np.linspace(0.0, 1.0, PROFILE_BINS + 1)
    for profile in profiles:
        low, high = profile.interval
        for kind in sorted(profile.histograms):
            hist = profile.histograms[kind]
            for b in range(PROFILE_BINS):
                rows.append(
                    (
                        low,
                        high,
                        kind,
                        float(bin_edges[b]),
                        float(bin_edges[b + 1]),
                        int(hist[b]),
                    )
                )
    return rows
