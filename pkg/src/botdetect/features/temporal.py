"""Inter-event timing features over three tweet streams."""

from __future__ import annotations

from ..corpus.types import TweetRecord
from ..stats import STAT_SUFFIXES, summarize
from .context import BundleContext

TEMPORAL_STREAMS = ("all", "retweet", "mention")


def temporal_names() -> list[str]:
    names = []
    for stream in TEMPORAL_STREAMS:
        names.extend("%s_gap_seconds_%s" % (stream, s) for s in STAT_SUFFIXES)
    return names


def _gaps_seconds(tweets: list[TweetRecord]) -> list[float]:
    if len(tweets) < 2:
        return []
    stamps = sorted(t.created_at for t in tweets)
    return [
        (b - a).total_seconds() for a, b in zip(stamps, stamps[1:])
    ]


def extract_temporal(ctx: BundleContext) -> list[float]:
    timeline = ctx.timeline_chronological
    streams = {
        "all": timeline,
        "retweet": [t for t in timeline if t.is_retweet],
        "mention": [t for t in timeline if t.mentions],
    }
    values: list[float] = []
    for stream in TEMPORAL_STREAMS:
        values.extend(summarize(_gaps_seconds(streams[stream])).as_tuple())
    return values
