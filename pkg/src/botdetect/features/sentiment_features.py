"""Sentiment features from lexicon scores and emoticon usage.

Aggregated features are the mean and population std across tweets of
each per-tweet lexicon score; tweets where a score is undefined (no
lexicon word matched) are skipped in that score's sample.  Emoticon
counts are defined for every tweet.
"""

from __future__ import annotations

import numpy as np

from ..stats import STAT_SUFFIXES, shannon_entropy, summarize
from .context import BundleContext

_SCORES = ("happiness", "valence", "arousal", "dominance")
_SINGLE_SCORES = _SCORES + ("polarization",)


def sentiment_names() -> list[str]:
    names = []
    for score in _SCORES:
        names.append("%s_agg_mean" % score)
        names.append("%s_agg_std" % score)
    for score in _SINGLE_SCORES:
        names.extend("%s_%s" % (score, s) for s in STAT_SUFFIXES)
    names.append("polarization_value_entropy")
    for base in ("emoticon_positive", "emoticon_negative", "emoticon_total"):
        names.extend("%s_%s" % (base, s) for s in STAT_SUFFIXES)
    names.extend(
        (
            "emoticon_positive_value_entropy",
            "emoticon_negative_value_entropy",
            "emoticon_total_value_entropy",
            "emoticon_polarity_ratio",
            "emoticon_tweet_fraction",
        )
    )
    return names


def _distinct_value_entropy(values: list[float]) -> float:
    if not values:
        return 0.0
    _, counts = np.unique(np.asarray(values, dtype=np.float64), return_counts=True)
    if counts.size <= 1:
        return 0.0
    return shannon_entropy(counts.tolist())


def extract_sentiment(ctx: BundleContext) -> list[float]:
    sentiments = [a.sentiment for a in ctx.analyses]

    samples: dict[str, list[float]] = {score: [] for score in _SINGLE_SCORES}
    for s in sentiments:
        for score in _SINGLE_SCORES:
            value = getattr(s, score)
            if value is not None:
                samples[score].append(float(value))

    values: list[float] = []
    for score in _SCORES:
        summary = summarize(samples[score])
        values.append(summary.mean)
        values.append(summary.std_dev)
    for score in _SINGLE_SCORES:
        values.extend(summarize(samples[score]).as_tuple())
    values.append(_distinct_value_entropy(samples["polarization"]))

    pos = [float(s.positive_emoticons) for s in sentiments]
    neg = [float(s.negative_emoticons) for s in sentiments]
    tot = [float(s.emoticons) for s in sentiments]
    for series in (pos, neg, tot):
        values.extend(summarize(series).as_tuple())
    values.append(_distinct_value_entropy(pos))
    values.append(_distinct_value_entropy(neg))
    values.append(_distinct_value_entropy(tot))
    values.append(sum(pos) / max(sum(neg), 1.0))
    values.append(
        sum(1 for t in tot if t > 0) / len(tot) if tot else 0.0
    )
    return values
