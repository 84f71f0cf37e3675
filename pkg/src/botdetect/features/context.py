"""Shared per-bundle state for the feature extractors.

Tokenizing every tweet once and reusing the result across the content
and sentiment extractors roughly halves extraction cost.  The context
also fixes the reference time (newest timestamp in the bundle, so
extraction on archived data is reproducible) and resolves contact
profile snapshots from the author snapshots embedded in tweets.
"""

from __future__ import annotations

from datetime import datetime
from functools import cached_property

from ..corpus.types import AccountBundle, TweetRecord, UserRecord
from ..nlp import NlpPipeline, TweetAnalysis


class BundleContext:
    def __init__(
        self,
        bundle: AccountBundle,
        nlp: NlpPipeline,
        include_retweet_text: bool = False,
    ):
        self.bundle = bundle
        self.nlp = nlp
        self.include_retweet_text = include_retweet_text

    @cached_property
    def ref_time(self) -> datetime:
        stamps = [t.created_at for t in self.bundle.timeline]
        stamps.extend(t.created_at for t in self.bundle.mentions_of_user)
        if not stamps:
            return self.bundle.user.created_at
        return max(stamps)

    @cached_property
    def timeline_chronological(self) -> list[TweetRecord]:
        return sorted(self.bundle.timeline, key=lambda t: (t.created_at, t.tweet_id))

    @cached_property
    def own_snapshots(self) -> list[UserRecord]:
        """The user's own profile snapshots in chronological order."""
        snaps = [t.author for t in self.timeline_chronological]
        return snaps if snaps else [self.bundle.user]

    @cached_property
    def text_tweets(self) -> list[TweetRecord]:
        """Timeline tweets whose text the user produced.

        Retweets carry someone else's text, so they are excluded unless
        configured otherwise.
        """
        if self.include_retweet_text:
            return self.timeline_chronological
        return [t for t in self.timeline_chronological if not t.is_retweet]

    @cached_property
    def analyses(self) -> list[TweetAnalysis]:
        return [self.nlp.analyze(t.text) for t in self.text_tweets]

    @cached_property
    def snapshot_table(self) -> dict[str, UserRecord]:
        """Latest embedded author snapshot per user id seen in the bundle."""
        latest: dict[str, tuple[datetime, UserRecord]] = {}
        for tweet in list(self.bundle.timeline) + list(self.bundle.mentions_of_user):
            uid = tweet.author.user_id
            seen = latest.get(uid)
            if seen is None or tweet.created_at >= seen[0]:
                latest[uid] = (tweet.created_at, tweet.author)
        return {uid: snap for uid, (_, snap) in latest.items()}
