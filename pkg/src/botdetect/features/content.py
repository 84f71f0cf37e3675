"""Content features: POS-tag usage, tweet length, and word entropy.

Samples are per tweet over the user's own text (retweets excluded by
default, since their text belongs to someone else).  Tag proportions
are taken only over tweets with at least one word token.
"""

from __future__ import annotations

from collections import Counter

from ..nlp import POS_TAG_ORDER, TokenKind
from ..stats import STAT_SUFFIXES, shannon_entropy, summarize
from .context import BundleContext


def content_names() -> list[str]:
    names = []
    for tag in POS_TAG_ORDER:
        names.extend("%s_count_%s" % (tag.value, s) for s in STAT_SUFFIXES)
        names.extend("%s_frac_%s" % (tag.value, s) for s in STAT_SUFFIXES)
    names.extend("words_per_tweet_%s" % s for s in STAT_SUFFIXES)
    names.extend("word_entropy_%s" % s for s in STAT_SUFFIXES)
    return names


def extract_content(ctx: BundleContext) -> list[float]:
    analyses = ctx.analyses
    tag_counts = {tag: [] for tag in POS_TAG_ORDER}
    tag_fracs = {tag: [] for tag in POS_TAG_ORDER}
    word_counts: list[float] = []
    word_entropies: list[float] = []

    for analysis in analyses:
        counts = analysis.tag_counts()
        words = [t.surface for t in analysis.tokens if t.kind is TokenKind.WORD]
        n_words = len(words)
        word_counts.append(float(n_words))
        if n_words:
            word_entropies.append(
                shannon_entropy(list(Counter(words).values()))
            )
        else:
            word_entropies.append(0.0)
        for tag in POS_TAG_ORDER:
            tag_counts[tag].append(float(counts[tag]))
            if n_words:
                tag_fracs[tag].append(counts[tag] / n_words)

    values: list[float] = []
    for tag in POS_TAG_ORDER:
        values.extend(summarize(tag_counts[tag]).as_tuple())
        values.extend(summarize(tag_fracs[tag]).as_tuple())
    values.extend(summarize(word_counts).as_tuple())
    values.extend(summarize(word_entropies).as_tuple())
    return values
