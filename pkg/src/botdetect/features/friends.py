"""Features over the account's four contact groups.

Contacts split by interaction role: users who retweeted the account,
users who mentioned it, users it retweeted, and users it mentioned.
Contact attributes come from the author snapshots embedded in the
bundle's tweets; contact ids with no embedded snapshot anywhere in the
bundle are skipped.
"""

from __future__ import annotations

from ..corpus.types import UserRecord
from ..stats import STAT_SUFFIXES, shannon_entropy, summarize
from .context import BundleContext

CONTACT_GROUPS = ("retweeting", "mentioning", "retweeted", "mentioned")

_ATTRS = (
    "age_days",
    "utc_offset_seconds",
    "friends_count",
    "followers_count",
    "statuses_count",
    "description_length",
)


def friends_names() -> list[str]:
    names = []
    for group in CONTACT_GROUPS:
        names.append("%s_lang_distinct" % group)
        names.append("%s_lang_entropy" % group)
        for attr in _ATTRS:
            names.extend("%s_%s_%s" % (group, attr, s) for s in STAT_SUFFIXES)
        names.append("%s_default_profile_fraction" % group)
        names.append("%s_default_image_fraction" % group)
    return names


def contact_groups(ctx: BundleContext) -> dict[str, list[UserRecord]]:
    """Distinct contacts per interaction role, newest snapshot per contact."""
    uid = ctx.bundle.user.user_id
    table = ctx.snapshot_table
    ids: dict[str, set[str]] = {group: set() for group in CONTACT_GROUPS}

    for tweet in ctx.bundle.mentions_of_user:
        if tweet.author.user_id == uid:
            continue
        if tweet.is_retweet and tweet.retweeted_author_id == uid:
            ids["retweeting"].add(tweet.author.user_id)
        elif uid in tweet.mentions:
            ids["mentioning"].add(tweet.author.user_id)

    for tweet in ctx.bundle.timeline:
        if tweet.is_retweet and tweet.retweeted_author_id:
            if tweet.retweeted_author_id != uid:
                ids["retweeted"].add(tweet.retweeted_author_id)
        for mention in tweet.mentions:
            if mention != uid and mention != tweet.retweeted_author_id:
                ids["mentioned"].add(mention)

    groups: dict[str, list[UserRecord]] = {}
    for group, members in ids.items():
        groups[group] = [table[m] for m in sorted(members) if m in table]
    return groups


def _group_values(ctx: BundleContext, contacts: list[UserRecord]) -> list[float]:
    langs = [c.lang for c in contacts if c.lang]
    values = [float(len(set(langs)))]
    if langs:
        counts = [langs.count(lang) for lang in sorted(set(langs))]
        values.append(shannon_entropy(counts))
    else:
        values.append(0.0)

    series = {
        "age_days": [
            max((ctx.ref_time - c.created_at).total_seconds() / 86400.0, 0.0)
            for c in contacts
        ],
        "utc_offset_seconds": [float(c.utc_offset_seconds) for c in contacts],
        "friends_count": [float(c.friends_count) for c in contacts],
        "followers_count": [float(c.followers_count) for c in contacts],
        "statuses_count": [float(c.statuses_count) for c in contacts],
        "description_length": [float(len(c.description)) for c in contacts],
    }
    for attr in _ATTRS:
        values.extend(summarize(series[attr]).as_tuple())

    if contacts:
        values.append(sum(c.default_profile for c in contacts) / len(contacts))
        values.append(sum(c.default_profile_image for c in contacts) / len(contacts))
    else:
        values.extend((0.0, 0.0))
    return values


def extract_friends(ctx: BundleContext) -> list[float]:
    groups = contact_groups(ctx)
    values: list[float] = []
    for group in CONTACT_GROUPS:
        values.extend(_group_values(ctx, groups[group]))
    return values
