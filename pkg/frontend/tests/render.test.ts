import { describe, expect, it } from 'vitest';
import { UserSnapshot } from '../src/api.js';
import { DashboardState } from '../src/dashboard.js';
import {
    escapeHtml,
    profileFlags,
    renderCompletion,
    renderDashboard,
    renderItem,
} from '../src/render.js';
import { ServedItem } from '../src/session.js';

function user(overrides: Partial<UserSnapshot> = {}): UserSnapshot {
    return {
        user_id: 'u1',
        screen_name: 'jdoe',
        display_name: 'Jane Doe',
        description: 'gardening and local news',
        created_at: '2014-06-01T00:00:00Z',
        utc_offset_seconds: -18000,
        friends_count: 150,
        followers_count: 80,
        favourites_count: 400,
        statuses_count: 1200,
        default_profile: false,
        default_profile_image: false,
        ...overrides,
    };
}

function servedItem(overrides: Partial<UserSnapshot> = {}): ServedItem {
    return {
        accountId: 'u1',
        decile: 7,
        servedAt: 0,
        digest: {
            user: user(overrides),
            timeline_tweets: 42,
            retweets: 17,
            mentions: 9,
            replies: 5,
            mentions_of_account: 3,
            distinct_hashtags: 11,
            sample_tweets: [
                { created_at: '2016-01-02T10:00:00Z', is_retweet: false, text: 'morning all' },
                { created_at: '2016-01-02T11:00:00Z', is_retweet: true, text: 'big <sale> now' },
            ],
        },
    };
}

describe('escaping', () => {
    it('escapes html metacharacters', () => {
        expect(escapeHtml('<script>alert("x&y")</script>')).toBe(
            '&lt;script&gt;alert(&quot;x&amp;y&quot;)&lt;/script&gt;',
        );
    });
});

describe('profile flags', () => {
    it('flags a stock profile image', () => {
        expect(profileFlags(user({ default_profile_image: true }))).toContain(
            'stock profile image',
        );
    });

    it('flags default theme, empty description, and digit-heavy names', () => {
        const flags = profileFlags(
            user({ default_profile: true, description: '', screen_name: 'user48210' }),
        );
        expect(flags).toContain('default profile theme');
        expect(flags).toContain('empty description');
        expect(flags).toContain('digit-heavy screen name');
    });

    it('flags lopsided follow ratios', () => {
        expect(profileFlags(user({ friends_count: 2000, followers_count: 3 }))).toContain(
            'follows far more accounts than follow back',
        );
        expect(profileFlags(user({ friends_count: 50, followers_count: 0 }))).toContain(
            'no followers',
        );
    });

    it('raises no flags for an ordinary profile', () => {
        expect(profileFlags(user())).toEqual([]);
    });
});

describe('item view', () => {
    it('shows profile fields, activity counts, and sampled tweets', () => {
        const html = renderItem(servedItem());
        expect(html).toContain('Jane Doe');
        expect(html).toContain('@jdoe');
        expect(html).toContain('gardening and local news');
        expect(html).toContain('42');
        expect(html).toContain('17');
        expect(html).toContain('morning all');
        expect(html).toContain('big &lt;sale&gt; now');
        expect(html).toContain('<span class="rt">RT</span>');
        expect(html).toContain('data-label="human"');
        expect(html).toContain('data-label="bot"');
        expect(html).toContain('data-label="undecided"');
    });

    it('never leaks the model score or the item decile', () => {
        const html = renderItem(servedItem());
        expect(html.toLowerCase()).not.toContain('score');
        expect(html.toLowerCase()).not.toContain('decile');
        expect(html).not.toContain('>7<');
    });

    it('escapes user-controlled fields', () => {
        const html = renderItem(
            servedItem({ display_name: '<img src=x>', description: 'a "quote" & more' }),
        );
        expect(html).not.toContain('<img src=x>');
        expect(html).toContain('&lt;img src=x&gt;');
        expect(html).toContain('a &quot;quote&quot; &amp; more');
    });
});

describe('completion view', () => {
    it('reports the session count', () => {
        const html = renderCompletion(14);
        expect(html).toContain('queue exhausted');
        expect(html).toContain('14 annotations');
    });
});

describe('dashboard view', () => {
    const baseState: DashboardState = {
        agreement: {
            annotations: 12,
            annotators: 2,
            overlap_items: 4,
            mean_agreement: 0.75,
            kappa: 0.5124,
            pairs: [
                {
                    annotator_a: 'alice',
                    annotator_b: 'bob',
                    items: 4,
                    agreement: 0.75,
                    kappa: 0.5124,
                },
            ],
            model_agreement: { mean: 0.8, per_annotator: { alice: 0.9, bob: 0.7 } },
            mean_elapsed_by_label: { bot: 21.3 },
        },
        agreementStatus: 'ok',
        histogram: {
            bins: [
                { bin_low: 0.0, bin_high: 0.1, count: 30 },
                { bin_low: 0.9, bin_high: 1.0, count: 10 },
            ],
            total: 40,
        },
        progress: {
            deciles: [
                { decile: 0, pool: 4, served: 4, annotated: 4, complete: true },
                { decile: 9, pool: 4, served: 1, annotated: 0, complete: false },
            ],
            pool_total: 8,
            served_accounts: 5,
            annotations: 4,
            total_serves: 5,
            overlap_serves: 1,
            overlap_fraction: 0.2,
        },
        stale: false,
        lastError: null,
    };

    it('formats the service numbers without recomputation', () => {
        const html = renderDashboard(baseState);
        expect(html).toContain('kappa 0.512');
        expect(html).toContain('75.0%');
        expect(html).toContain('4 shared accounts');
        expect(html).toContain('alice / bob');
        expect(html).toContain('model agreement: 80.0%');
        expect(html).toContain('bot: 21.3 s');
        expect(html).toContain('score distribution (40 accounts)');
        expect(html).toContain('0.0-0.1');
        expect(html).toContain('overlap 20.0%');
    });

    it('marks complete deciles', () => {
        const html = renderDashboard(baseState);
        expect(html).toContain('class="complete"');
        expect(html).toContain('4 / 4');
        expect(html).toContain('open');
    });

    it('shows the insufficient-overlap state', () => {
        const html = renderDashboard({
            ...baseState,
            agreement: null,
            agreementStatus: 'insufficient_overlap',
        });
        expect(html).toContain('insufficient overlap');
        expect(html).not.toContain('kappa 0.512');
    });

    it('shows a stale banner with the transport error', () => {
        const html = renderDashboard({
            ...baseState,
            stale: true,
            lastError: 'fetch failed',
        });
        expect(html).toContain('showing last known data');
        expect(html).toContain('fetch failed');
    });
});
