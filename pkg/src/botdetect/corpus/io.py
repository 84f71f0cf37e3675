"""Reading and writing bundle files, label tables, and edge lists.

Two ingestion formats are supported:

* ``bundle-jsonl``: one self-contained JSON bundle per line,
  ``{"user": {...}, "timeline": [...], "mentions_of_user": [...]}``.
* ``tweets-jsonl``: one tweet object per line; bundles are assembled by
  grouping tweets by author, and a tweet lands in another user's
  ``mentions_of_user`` when it mentions or retweets that user.

Malformed lines are skipped and counted, never fatal.  Timeline and
mention lists are capped at the 200 / 100 most recent tweets.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Iterable, Iterator, Optional

from ..errors import ConfigError, DataError, EmptyDatasetError
from .types import (
    MENTIONS_CAP,
    TIMELINE_CAP,
    VALID_LABELS,
    AccountBundle,
    SocialEdges,
    TweetRecord,
    UserRecord,
)

BUNDLE_FORMAT = "bundle-jsonl"
TWEETS_FORMAT = "tweets-jsonl"

# Activity-filter thresholds: total tweet volume and recent-window volume.
ACTIVITY_MIN_TOTAL = 200
ACTIVITY_MIN_RECENT = 90
ACTIVITY_WINDOW_DAYS = 90


def parse_timestamp(value: str) -> datetime:
    """Parse an ISO-8601 timestamp; a trailing Z means UTC."""
    if value.endswith("Z"):
        value = value[:-1] + "+00:00"
    try:
        stamp = datetime.fromisoformat(value)
    except ValueError as exc:
        raise DataError("bad timestamp %r" % value) from exc
    if stamp.tzinfo is None:
        raise DataError("timestamp %r lacks a UTC offset" % value)
    return stamp.astimezone(timezone.utc)


def format_timestamp(stamp: datetime) -> str:
    return stamp.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


def user_from_dict(data: dict) -> UserRecord:
    try:
        user = UserRecord(
            user_id=str(data["user_id"]),
            screen_name=str(data["screen_name"]),
            display_name=str(data.get("display_name", "")),
            description=str(data.get("description", "")),
            created_at=parse_timestamp(data["created_at"]),
            utc_offset_seconds=int(data.get("utc_offset_seconds", 0)),
            friends_count=int(data["friends_count"]),
            followers_count=int(data["followers_count"]),
            favourites_count=int(data.get("favourites_count", 0)),
            statuses_count=int(data.get("statuses_count", 0)),
            default_profile=bool(data.get("default_profile", False)),
            default_profile_image=bool(data.get("default_profile_image", False)),
            lang=data.get("lang"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError("bad user record: %s" % exc) from exc
    user.validate()
    return user


def user_to_dict(user: UserRecord) -> dict:
    data = {
        "user_id": user.user_id,
        "screen_name": user.screen_name,
        "display_name": user.display_name,
        "description": user.description,
        "created_at": format_timestamp(user.created_at),
        "utc_offset_seconds": user.utc_offset_seconds,
        "friends_count": user.friends_count,
        "followers_count": user.followers_count,
        "favourites_count": user.favourites_count,
        "statuses_count": user.statuses_count,
        "default_profile": user.default_profile,
        "default_profile_image": user.default_profile_image,
    }
    if user.lang is not None:
        data["lang"] = user.lang
    return data


def tweet_from_dict(data: dict) -> TweetRecord:
    try:
        tweet = TweetRecord(
            tweet_id=str(data["tweet_id"]),
            author=user_from_dict(data["author"]),
            text=str(data["text"]),
            created_at=parse_timestamp(data["created_at"]),
            mentions=tuple(str(m) for m in data.get("mentions", ())),
            hashtags=tuple(str(h) for h in data.get("hashtags", ())),
            is_retweet=bool(data.get("is_retweet", False)),
            retweeted_author_id=data.get("retweeted_author_id"),
            in_reply_to_user_id=data.get("in_reply_to_user_id"),
            source_app=str(data.get("source_app", "")),
            lang=data.get("lang"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError("bad tweet record: %s" % exc) from exc
    tweet.validate()
    return tweet


def tweet_to_dict(tweet: TweetRecord) -> dict:
    data = {
        "tweet_id": tweet.tweet_id,
        "author": user_to_dict(tweet.author),
        "text": tweet.text,
        "created_at": format_timestamp(tweet.created_at),
        "mentions": list(tweet.mentions),
        "hashtags": list(tweet.hashtags),
        "is_retweet": tweet.is_retweet,
        "source_app": tweet.source_app,
    }
    if tweet.retweeted_author_id is not None:
        data["retweeted_author_id"] = tweet.retweeted_author_id
    if tweet.in_reply_to_user_id is not None:
        data["in_reply_to_user_id"] = tweet.in_reply_to_user_id
    if tweet.lang is not None:
        data["lang"] = tweet.lang
    return data


def bundle_from_dict(data: dict) -> AccountBundle:
    try:
        user = user_from_dict(data["user"])
        timeline = tuple(tweet_from_dict(t) for t in data.get("timeline", ()))
        mentions = tuple(tweet_from_dict(t) for t in data.get("mentions_of_user", ()))
    except (KeyError, TypeError) as exc:
        raise DataError("bad bundle record: %s" % exc) from exc
    bundle = AccountBundle(
        user=user,
        timeline=_cap_most_recent(timeline, TIMELINE_CAP),
        mentions_of_user=_cap_most_recent(mentions, MENTIONS_CAP),
    )
    bundle.validate()
    return bundle


def bundle_to_dict(bundle: AccountBundle) -> dict:
    return {
        "user": user_to_dict(bundle.user),
        "timeline": [tweet_to_dict(t) for t in bundle.timeline],
        "mentions_of_user": [tweet_to_dict(t) for t in bundle.mentions_of_user],
    }


def _cap_most_recent(tweets: tuple[TweetRecord, ...], cap: int) -> tuple[TweetRecord, ...]:
    """Keep the ``cap`` most recent tweets, in chronological order."""
    if len(tweets) <= cap:
        return tuple(sorted(tweets, key=lambda t: (t.created_at, t.tweet_id)))
    ordered = sorted(tweets, key=lambda t: (t.created_at, t.tweet_id))
    return tuple(ordered[-cap:])


@dataclass
class IngestResult:
    bundles: list[AccountBundle]
    malformed_count: int


def _iter_json_lines(path: Path) -> Iterator[tuple[Optional[dict], bool]]:
    """Yield (record, ok) per non-blank line; ok=False marks a bad line."""
    with open(path, "r", encoding="utf-8") as handle:
        for raw in handle:
            line = raw.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                yield None, False
                continue
            if not isinstance(record, dict):
                yield None, False
                continue
            yield record, True


def _bundles_from_tweets(tweets: list[TweetRecord]) -> list[AccountBundle]:
    timelines: dict[str, list[TweetRecord]] = {}
    users: dict[str, UserRecord] = {}
    newest_seen: dict[str, datetime] = {}
    for tweet in tweets:
        uid = tweet.author.user_id
        timelines.setdefault(uid, []).append(tweet)
        # The bundle profile is the author snapshot from the newest tweet.
        seen = newest_seen.get(uid)
        if seen is None or tweet.created_at >= seen:
            newest_seen[uid] = tweet.created_at
            users[uid] = tweet.author

    mention_lists: dict[str, list[TweetRecord]] = {uid: [] for uid in timelines}
    for tweet in tweets:
        targets = set(tweet.mentions)
        if tweet.retweeted_author_id:
            targets.add(tweet.retweeted_author_id)
        for target in targets:
            if target in mention_lists and target != tweet.author.user_id:
                mention_lists[target].append(tweet)

    bundles = []
    for uid in sorted(timelines):
        bundle = AccountBundle(
            user=users[uid],
            timeline=_cap_most_recent(tuple(timelines[uid]), TIMELINE_CAP),
            mentions_of_user=_cap_most_recent(tuple(mention_lists[uid]), MENTIONS_CAP),
        )
        bundle.validate()
        bundles.append(bundle)
    return bundles


def passes_activity_filter(bundle: AccountBundle) -> bool:
    """Volume gate: enough lifetime tweets and enough recent activity."""
    if bundle.user.statuses_count < ACTIVITY_MIN_TOTAL:
        return False
    if not bundle.timeline:
        return False
    newest = max(t.created_at for t in bundle.timeline)
    window_start = newest - timedelta(days=ACTIVITY_WINDOW_DAYS)
    recent = sum(1 for t in bundle.timeline if t.created_at >= window_start)
    return recent >= ACTIVITY_MIN_RECENT


def ingest_bundles(
    path, format: str = BUNDLE_FORMAT, activity_filter: bool = False
) -> IngestResult:
    """Ingest a bundle or tweet file; malformed lines are counted, not fatal."""
    path = Path(path)
    if format not in (BUNDLE_FORMAT, TWEETS_FORMAT):
        raise ConfigError("unknown ingest format %r" % format)

    malformed = 0
    bundles: list[AccountBundle] = []
    if format == BUNDLE_FORMAT:
        for record, ok in _iter_json_lines(path):
            if not ok:
                malformed += 1
                continue
            try:
                bundles.append(bundle_from_dict(record))
            except DataError:
                malformed += 1
    else:
        tweets: list[TweetRecord] = []
        for record, ok in _iter_json_lines(path):
            if not ok:
                malformed += 1
                continue
            try:
                tweets.append(tweet_from_dict(record))
            except DataError:
                malformed += 1
        bundles = _bundles_from_tweets(tweets)

    if activity_filter:
        bundles = [b for b in bundles if passes_activity_filter(b)]
    if not bundles:
        raise EmptyDatasetError(
            "no valid records in %s (%d malformed)" % (path, malformed)
        )
    return IngestResult(bundles=bundles, malformed_count=malformed)


def load_bundles(path, format: str = BUNDLE_FORMAT) -> list[AccountBundle]:
    return ingest_bundles(path, format=format).bundles


def iter_bundles(path) -> Iterator[AccountBundle]:
    """Stream bundles from a bundle-jsonl file; malformed lines are skipped."""
    for record, ok in _iter_json_lines(Path(path)):
        if not ok:
            continue
        try:
            yield bundle_from_dict(record)
        except DataError:
            continue


def write_bundles(path, bundles: Iterable[AccountBundle]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for bundle in bundles:
            handle.write(json.dumps(bundle_to_dict(bundle), sort_keys=True))
            handle.write("\n")


def read_labels(path) -> dict[str, str]:
    labels: dict[str, str] = {}
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or set(reader.fieldnames) != {"user_id", "label"}:
            raise DataError("labels file must have header user_id,label")
        for row in reader:
            label = row["label"]
            if label not in VALID_LABELS:
                raise DataError("bad label %r for user %s" % (label, row["user_id"]))
            labels[row["user_id"]] = label
    return labels


def write_labels(path, labels: dict[str, str]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["user_id", "label"])
        for user_id in labels:
            writer.writerow([user_id, labels[user_id]])


def read_edges(path) -> SocialEdges:
    edges = SocialEdges()
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or set(reader.fieldnames) != {"src", "dst", "kind"}:
            raise DataError("edges file must have header src,dst,kind")
        for row in reader:
            pair = (row["src"], row["dst"])
            if row["kind"] == "friend":
                edges.friend_edges.append(pair)
            elif row["kind"] == "follower":
                edges.follower_edges.append(pair)
            else:
                raise DataError("bad edge kind %r" % row["kind"])
    edges.validate()
    return edges


def write_edges(path, edges: SocialEdges) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["src", "dst", "kind"])
        for src, dst in edges.friend_edges:
            writer.writerow([src, dst, "friend"])
        for src, dst in edges.follower_edges:
            writer.writerow([src, dst, "follower"])
