// One annotator's labeling loop: fetch an assignment, time it, submit,
// advance. The session holds at most one current item and never sees
// the model score.

import {
    AnnotationLabel,
    AnnotationRecord,
    ApiError,
    AccountDigest,
    QueueItem,
    SubmitAck,
} from './api.js';

export interface AnnotationApi {
    nextItem(annotatorId: string): Promise<QueueItem>;
    submitAnnotation(record: AnnotationRecord): Promise<SubmitAck>;
}

export type SessionPhase = 'idle' | 'labeling' | 'done';

export interface ServedItem {
    accountId: string;
    decile: number;
    digest: AccountDigest;
    servedAt: number;
}

export interface SubmitOutcome {
    ack: SubmitAck | null;
    warning: string | null;
    next: ServedItem | null;
}

export class AnnotationSession {
    private item: ServedItem | null = null;
    private phase: SessionPhase = 'idle';
    private submitted = 0;
    private submitting = false;
    private readonly elapsed = new Map<AnnotationLabel, { count: number; total: number }>();

    constructor(
        private readonly api: AnnotationApi,
        readonly annotatorId: string,
        // Injectable clocks: monotonic ms for elapsed time, wall clock
        // for the record timestamp.
        private readonly now: () => number = () => performance.now(),
        private readonly wallClock: () => string = () => new Date().toISOString(),
    ) {
        if (!annotatorId) {
            throw new Error('annotator id is required');
        }
    }

    get state(): SessionPhase {
        return this.phase;
    }

    get currentItem(): ServedItem | null {
        return this.item;
    }

    get submittedCount(): number {
        return this.submitted;
    }

    meanElapsedByLabel(): Record<string, number> {
        const means: Record<string, number> = {};
        for (const [label, agg] of this.elapsed) {
            means[label] = agg.total / agg.count;
        }
        return means;
    }

    // Fetch the next assignment. With an unsubmitted item in hand the
    // same item is returned without another server round trip; the
    // timer keeps running from the original render. A 404 means the
    // queue is exhausted for this annotator.
    async nextItem(): Promise<ServedItem | null> {
        if (this.item) {
            return this.item;
        }
        try {
            const served = await this.api.nextItem(this.annotatorId);
            this.item = {
                accountId: served.account_id,
                decile: served.decile,
                digest: served.digest,
                servedAt: this.now(),
            };
            this.phase = 'labeling';
            return this.item;
        } catch (err) {
            if (err instanceof ApiError && err.status === 404) {
                this.phase = 'done';
                return null;
            }
            throw err;
        }
    }

    // Submit a label for the current item, then advance. A 409 from the
    // server (pair already recorded) advances with a warning instead of
    // failing; rapid repeat calls are dropped while one is in flight so
    // a double click posts once.
    async submit(label: AnnotationLabel): Promise<SubmitOutcome> {
        if (!this.item) {
            throw new Error('no current item to label');
        }
        if (this.submitting) {
            return { ack: null, warning: 'submit already in progress', next: this.item };
        }
        this.submitting = true;
        try {
            const item = this.item;
            const elapsedSeconds = (this.now() - item.servedAt) / 1000;
            let ack: SubmitAck | null = null;
            let warning: string | null = null;
            try {
                ack = await this.api.submitAnnotation({
                    account_id: item.accountId,
                    annotator_id: this.annotatorId,
                    label,
                    elapsed_seconds: elapsedSeconds,
                    created_at: this.wallClock(),
                });
                const agg = this.elapsed.get(label) ?? { count: 0, total: 0 };
                agg.count += 1;
                agg.total += elapsedSeconds;
                this.elapsed.set(label, agg);
                this.submitted += 1;
            } catch (err) {
                if (err instanceof ApiError && err.status === 409) {
                    warning = 'already recorded: ' + err.message;
                } else {
                    throw err;
                }
            }
            this.item = null;
            const next = await this.nextItem();
            return { ack, warning, next };
        } finally {
            this.submitting = false;
        }
    }
}
