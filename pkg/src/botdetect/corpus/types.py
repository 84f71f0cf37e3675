"""Domain types for account activity data.

An :class:`AccountBundle` is the unit of analysis: one user profile, up
to 200 of the user's own most recent tweets, and up to 100 recent tweets
by others that mention the user.  Each tweet embeds an author profile
snapshot with counts as of collection time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from typing import Optional

from ..errors import DataError

TIMELINE_CAP = 200
MENTIONS_CAP = 100

LABEL_HUMAN = "human"
LABEL_BOT = "bot"
LABEL_UNDECIDED = "undecided"
VALID_LABELS = (LABEL_HUMAN, LABEL_BOT, LABEL_UNDECIDED)


@dataclass(frozen=True)
class UserRecord:
    user_id: str
    screen_name: str
    display_name: str
    description: str
    created_at: datetime
    utc_offset_seconds: int
    friends_count: int
    followers_count: int
    favourites_count: int
    statuses_count: int
    default_profile: bool
    default_profile_image: bool
    lang: Optional[str] = None

    def validate(self) -> None:
        if not self.user_id:
            raise DataError("user_id must be non-empty")
        for name in ("friends_count", "followers_count", "favourites_count", "statuses_count"):
            if getattr(self, name) < 0:
                raise DataError("%s must be >= 0 for user %s" % (name, self.user_id))
        if self.created_at.tzinfo is None:
            raise DataError("created_at must be timezone-aware for user %s" % self.user_id)


@dataclass(frozen=True)
class TweetRecord:
    tweet_id: str
    author: UserRecord
    text: str
    created_at: datetime
    mentions: tuple[str, ...]
    hashtags: tuple[str, ...]
    is_retweet: bool
    retweeted_author_id: Optional[str] = None
    in_reply_to_user_id: Optional[str] = None
    source_app: str = ""
    lang: Optional[str] = None

    def validate(self) -> None:
        if not self.tweet_id:
            raise DataError("tweet_id must be non-empty")
        if self.is_retweet and not self.retweeted_author_id:
            raise DataError("retweet %s lacks retweeted_author_id" % self.tweet_id)
        if self.created_at.tzinfo is None:
            raise DataError("created_at must be timezone-aware for tweet %s" % self.tweet_id)
        self.author.validate()


@dataclass(frozen=True)
class AccountBundle:
    user: UserRecord
    timeline: tuple[TweetRecord, ...]
    mentions_of_user: tuple[TweetRecord, ...]

    def validate(self) -> None:
        self.user.validate()
        if len(self.timeline) > TIMELINE_CAP:
            raise DataError(
                "timeline for %s exceeds cap of %d" % (self.user.user_id, TIMELINE_CAP)
            )
        if len(self.mentions_of_user) > MENTIONS_CAP:
            raise DataError(
                "mentions_of_user for %s exceeds cap of %d" % (self.user.user_id, MENTIONS_CAP)
            )
        uid = self.user.user_id
        for tweet in self.timeline:
            tweet.validate()
            if tweet.author.user_id != uid:
                raise DataError(
                    "timeline tweet %s not authored by %s" % (tweet.tweet_id, uid)
                )
        for tweet in self.mentions_of_user:
            tweet.validate()
            if uid not in tweet.mentions and tweet.retweeted_author_id != uid:
                raise DataError(
                    "mention tweet %s does not reference %s" % (tweet.tweet_id, uid)
                )


@dataclass(frozen=True)
class LabeledDataset:
    """Bundles with binary labels; undecided accounts are excluded upstream."""

    entries: tuple[tuple[AccountBundle, str], ...]
    source_tag: str

    def validate(self) -> None:
        if not self.source_tag:
            raise DataError("source_tag must be non-empty")
        for _, label in self.entries:
            if label not in (LABEL_HUMAN, LABEL_BOT):
                raise DataError("label must be human or bot, got %r" % label)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def bundles(self) -> list[AccountBundle]:
        return [bundle for bundle, _ in self.entries]

    @property
    def labels(self) -> list[str]:
        return [label for _, label in self.entries]

    def class_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for _, label in self.entries:
            counts[label] = counts.get(label, 0) + 1
        return counts


@dataclass
class SocialEdges:
    """Directed follow relations.

    A friend edge (a, b) records that a follows b (b is a's friend); a
    follower edge (a, b) records that b follows a.  Both views feed one
    merged follows relation, so a relation may be present in either list.
    """

    friend_edges: list[tuple[str, str]] = field(default_factory=list)
    follower_edges: list[tuple[str, str]] = field(default_factory=list)

    def validate(self) -> None:
        for src, dst in self.friend_edges + self.follower_edges:
            if src == dst:
                raise DataError("self-loop edge on %s" % src)

    def follows_pairs(self) -> set[tuple[str, str]]:
        pairs = set(self.friend_edges)
        pairs.update((b, a) for a, b in self.follower_edges)
        return pairs

    def friends_of(self, user_id: str) -> set[str]:
        return {b for a, b in self.follows_pairs() if a == user_id}

    def followers_of(self, user_id: str) -> set[str]:
        return {a for a, b in self.follows_pairs() if b == user_id}

    def adjacency(self) -> tuple[dict[str, set[str]], dict[str, set[str]]]:
        """Return (friends_of, followers_of) maps over all mentioned users."""
        friends: dict[str, set[str]] = {}
        followers: dict[str, set[str]] = {}
        for a, b in self.follows_pairs():
            friends.setdefault(a, set()).add(b)
            followers.setdefault(b, set()).add(a)
        return friends, followers
