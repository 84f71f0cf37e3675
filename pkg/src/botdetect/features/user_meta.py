"""Profile and activity-volume features for the account itself."""

from __future__ import annotations

from ..stats import STAT_SUFFIXES, relative_change, signal_noise_ratio, summarize
from .context import BundleContext

# Activity streams measured both as totals and hourly rates.
_RATE_NAMES = ("tweet", "retweet", "mention", "reply", "retweeted")

MIN_SPAN_HOURS = 1.0


def user_meta_names() -> list[str]:
    names = [
        "screen_name_length",
        "screen_name_digits",
        "display_name_length",
        "utc_offset_seconds",
        "default_profile",
        "default_profile_image",
        "account_age_days",
        "description_distinct",
    ]
    names.extend("description_length_%s" % s for s in STAT_SUFFIXES)
    for base in ("friends_count", "followers_count", "favourites_count"):
        names.extend("%s_%s" % (base, s) for s in STAT_SUFFIXES)
        names.append("%s_snr" % base)
        names.append("%s_rel_change" % base)
    for base in _RATE_NAMES:
        names.append("%s_total" % base)
        names.append("%s_per_hour" % base)
    return names


def observed_span_hours(ctx: BundleContext) -> float:
    timeline = ctx.timeline_chronological
    if len(timeline) < 2:
        return MIN_SPAN_HOURS
    span = (timeline[-1].created_at - timeline[0].created_at).total_seconds() / 3600.0
    return max(span, MIN_SPAN_HOURS)


def extract_user_meta(ctx: BundleContext) -> list[float]:
    user = ctx.bundle.user
    snapshots = ctx.own_snapshots

    values = [
        float(len(user.screen_name)),
        float(sum(c.isdigit() for c in user.screen_name)),
        float(len(user.display_name)),
        float(user.utc_offset_seconds),
        1.0 if user.default_profile else 0.0,
        1.0 if user.default_profile_image else 0.0,
        max((ctx.ref_time - user.created_at).total_seconds() / 86400.0, 0.0),
        float(len({snap.description for snap in snapshots})),
    ]
    values.extend(summarize([float(len(s.description)) for s in snapshots]).as_tuple())

    for attr in ("friends_count", "followers_count", "favourites_count"):
        series = [float(getattr(s, attr)) for s in snapshots]
        values.extend(summarize(series).as_tuple())
        values.append(signal_noise_ratio(series))
        values.append(relative_change(series))

    timeline = ctx.timeline_chronological
    span_hours = observed_span_hours(ctx)
    uid = user.user_id
    totals = {
        "tweet": float(len(timeline)),
        "retweet": float(sum(1 for t in timeline if t.is_retweet)),
        "mention": float(sum(len(t.mentions) for t in timeline)),
        "reply": float(sum(1 for t in timeline if t.in_reply_to_user_id)),
        "retweeted": float(
            sum(
                1
                for t in ctx.bundle.mentions_of_user
                if t.is_retweet and t.retweeted_author_id == uid
            )
        ),
    }
    for base in _RATE_NAMES:
        values.append(totals[base])
        values.append(totals[base] / span_hours)
    return values
