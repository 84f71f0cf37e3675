import { describe, expect, it } from 'vitest';
import {
    AnnotationRecord,
    ApiError,
    QueueItem,
    SubmitAck,
} from '../src/api.js';
import { AnnotationApi, AnnotationSession } from '../src/session.js';

function queueItem(id: string): QueueItem {
    return {
        account_id: id,
        decile: 3,
        digest: {
            user: {
                user_id: id,
                screen_name: 'sn_' + id,
                display_name: 'name ' + id,
                description: '',
                created_at: '2016-01-01T00:00:00Z',
                utc_offset_seconds: null,
                friends_count: 10,
                followers_count: 10,
                favourites_count: 0,
                statuses_count: 100,
                default_profile: false,
                default_profile_image: false,
            },
            timeline_tweets: 5,
            retweets: 1,
            mentions: 2,
            replies: 1,
            mentions_of_account: 0,
            distinct_hashtags: 3,
            sample_tweets: [],
        },
    };
}

class StubApi implements AnnotationApi {
    nextCalls = 0;
    submitCalls = 0;
    records: AnnotationRecord[] = [];
    submitError: ApiError | null = null;
    private readonly queue: QueueItem[];

    constructor(items: string[]) {
        this.queue = items.map(queueItem);
    }

    async nextItem(_annotatorId: string): Promise<QueueItem> {
        this.nextCalls += 1;
        const item = this.queue.shift();
        if (!item) {
            throw new ApiError(404, 'queue_exhausted', 'no items left to serve');
        }
        return item;
    }

    async submitAnnotation(record: AnnotationRecord): Promise<SubmitAck> {
        this.submitCalls += 1;
        if (this.submitError) {
            throw this.submitError;
        }
        this.records.push(record);
        return { ...record, recorded: true };
    }
}

function sessionWithClock(api: AnnotationApi, start = 0) {
    const clock = { ms: start };
    const session = new AnnotationSession(
        api,
        'alice',
        () => clock.ms,
        () => '2026-02-03T04:05:06Z',
    );
    return { session, clock };
}

describe('fetching items', () => {
    it('renders a fresh item with the timer at the render instant', async () => {
        const api = new StubApi(['u1']);
        const { session } = sessionWithClock(api, 500);
        expect(session.state).toBe('idle');
        const item = await session.nextItem();
        expect(item?.accountId).toBe('u1');
        expect(item?.servedAt).toBe(500);
        expect(session.state).toBe('labeling');
        expect(session.submittedCount).toBe(0);
    });

    it('re-opening without submitting returns the same item without a round trip', async () => {
        const api = new StubApi(['u1']);
        const { session } = sessionWithClock(api);
        const first = await session.nextItem();
        const again = await session.nextItem();
        expect(again).toBe(first);
        expect(api.nextCalls).toBe(1);
    });

    it('maps queue exhaustion to the done state', async () => {
        const api = new StubApi([]);
        const { session } = sessionWithClock(api);
        expect(await session.nextItem()).toBeNull();
        expect(session.state).toBe('done');
        expect(session.currentItem).toBeNull();
    });

    it('propagates non-404 errors', async () => {
        const api = new StubApi(['u1']);
        api.nextItem = async () => {
            throw new ApiError(503, 'no_model', 'no model loaded');
        };
        const { session } = sessionWithClock(api);
        await expect(session.nextItem()).rejects.toMatchObject({ code: 'no_model' });
        expect(session.state).toBe('idle');
    });

    it('requires an annotator id', () => {
        expect(() => new AnnotationSession(new StubApi([]), '')).toThrow(/annotator id/);
    });
});

describe('submitting labels', () => {
    it('posts the measured elapsed time and advances', async () => {
        const api = new StubApi(['u1', 'u2']);
        const { session, clock } = sessionWithClock(api, 1000);
        await session.nextItem();
        clock.ms = 3500;
        const outcome = await session.submit('bot');
        expect(api.records).toHaveLength(1);
        expect(api.records[0]).toEqual({
            account_id: 'u1',
            annotator_id: 'alice',
            label: 'bot',
            elapsed_seconds: 2.5,
            created_at: '2026-02-03T04:05:06Z',
        });
        expect(outcome.ack?.recorded).toBe(true);
        expect(outcome.warning).toBeNull();
        expect(outcome.next?.accountId).toBe('u2');
        expect(session.submittedCount).toBe(1);
        expect(session.currentItem?.accountId).toBe('u2');
    });

    it('reaches done when the last item is submitted', async () => {
        const api = new StubApi(['u1']);
        const { session } = sessionWithClock(api);
        await session.nextItem();
        const outcome = await session.submit('undecided');
        expect(outcome.next).toBeNull();
        expect(session.state).toBe('done');
        expect(session.submittedCount).toBe(1);
    });

    it('advances with a warning on a duplicate response', async () => {
        const api = new StubApi(['u1', 'u2']);
        api.submitError = new ApiError(409, 'duplicate_annotation', 'already recorded');
        const { session } = sessionWithClock(api);
        await session.nextItem();
        const outcome = await session.submit('bot');
        expect(outcome.ack).toBeNull();
        expect(outcome.warning).toMatch(/already recorded/);
        expect(outcome.next?.accountId).toBe('u2');
        expect(session.submittedCount).toBe(0);
    });

    it('drops a second submit while one is in flight', async () => {
        const api = new StubApi(['u1', 'u2']);
        let release!: () => void;
        let posts = 0;
        api.submitAnnotation = (record) => {
            posts += 1;
            return new Promise<SubmitAck>((resolve) => {
                release = () => resolve({ ...record, recorded: true });
            });
        };
        const { session } = sessionWithClock(api);
        await session.nextItem();
        const first = session.submit('bot');
        const second = await session.submit('bot');
        expect(second.ack).toBeNull();
        expect(second.warning).toMatch(/in progress/);
        expect(posts).toBe(1);
        release();
        const outcome = await first;
        expect(outcome.next?.accountId).toBe('u2');
        expect(session.submittedCount).toBe(1);
    });

    it('keeps the current item when the server fails hard', async () => {
        const api = new StubApi(['u1']);
        api.submitError = new ApiError(503, 'no_model', 'down');
        const { session } = sessionWithClock(api);
        const item = await session.nextItem();
        await expect(session.submit('human')).rejects.toMatchObject({ status: 503 });
        expect(session.currentItem).toBe(item);
        expect(session.submittedCount).toBe(0);
    });

    it('throws without a current item', async () => {
        const api = new StubApi([]);
        const { session } = sessionWithClock(api);
        await session.nextItem();
        await expect(session.submit('bot')).rejects.toThrow(/no current item/);
    });

    it('tracks a running mean elapsed per label', async () => {
        const api = new StubApi(['u1', 'u2', 'u3']);
        const { session, clock } = sessionWithClock(api, 0);
        await session.nextItem();
        clock.ms = 2000;
        await session.submit('bot');
        clock.ms = 6000;
        await session.submit('bot');
        clock.ms = 7000;
        await session.submit('human');
        expect(session.meanElapsedByLabel()).toEqual({ bot: 3.0, human: 1.0 });
    });
});
