// Typed client for the annotation service HTTP API. Response shapes
// mirror the service payloads field for field; nothing is computed here.

export type AnnotationLabel = 'human' | 'bot' | 'undecided';

export interface UserSnapshot {
    user_id: string;
    screen_name: string;
    display_name: string;
    description: string;
    created_at: string;
    utc_offset_seconds: number | null;
    friends_count: number;
    followers_count: number;
    favourites_count: number;
    statuses_count: number;
    default_profile: boolean;
    default_profile_image: boolean;
    lang?: string;
}

export interface SampleTweet {
    created_at: string;
    is_retweet: boolean;
    text: string;
}

// Score-free account view served to annotators.
export interface AccountDigest {
    user: UserSnapshot;
    timeline_tweets: number;
    retweets: number;
    mentions: number;
    replies: number;
    mentions_of_account: number;
    distinct_hashtags: number;
    sample_tweets: SampleTweet[];
}

export interface QueueItem {
    account_id: string;
    decile: number;
    digest: AccountDigest;
}

export interface AnnotationRecord {
    account_id: string;
    annotator_id: string;
    label: AnnotationLabel;
    elapsed_seconds: number;
    created_at: string;
}

export interface SubmitAck extends AnnotationRecord {
    recorded: boolean;
}

export interface AgreementPair {
    annotator_a: string;
    annotator_b: string;
    items: number;
    agreement: number;
    kappa: number;
}

export interface AgreementReport {
    annotations: number;
    annotators: number;
    overlap_items: number;
    mean_agreement: number;
    kappa: number;
    pairs: AgreementPair[];
    model_agreement: {
        mean: number | null;
        per_annotator: Record<string, number>;
    };
    mean_elapsed_by_label: Record<string, number>;
}

export interface DecileProgress {
    decile: number;
    pool: number;
    served: number;
    annotated: number;
    complete: boolean;
}

export interface ProgressReport {
    deciles: DecileProgress[];
    pool_total: number;
    served_accounts: number;
    annotations: number;
    total_serves: number;
    overlap_serves: number;
    overlap_fraction: number;
}

export interface HistogramBin {
    bin_low: number;
    bin_high: number;
    count: number;
}

export interface ScoreHistogram {
    bins: HistogramBin[];
    total: number;
}

export interface Health {
    status: string;
    model_version: string | null;
}

// Error responses carry {code, message}; status 0 marks transport
// failures so callers can tell "service down" from "service said no".
export class ApiError extends Error {
    constructor(
        readonly status: number,
        readonly code: string,
        message: string,
    ) {
        super(message);
        this.name = 'ApiError';
    }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
    private readonly fetchFn: FetchLike;

    constructor(
        private readonly baseUrl: string,
        fetchFn?: FetchLike,
    ) {
        this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
    }

    private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
        const init: RequestInit = { method };
        if (body !== undefined) {
            init.headers = { 'content-type': 'application/json' };
            init.body = JSON.stringify(body);
        }
        let response: Response;
        try {
            response = await this.fetchFn(this.baseUrl + path, init);
        } catch (err) {
            throw new ApiError(0, 'unreachable', String(err));
        }
        const text = await response.text();
        let data: unknown = null;
        try {
            data = text ? JSON.parse(text) : null;
        } catch {
            data = null;
        }
        if (!response.ok) {
            const body = data as { code?: unknown; message?: unknown } | null;
            throw new ApiError(
                response.status,
                typeof body?.code === 'string' ? body.code : 'http_' + response.status,
                typeof body?.message === 'string' ? body.message : 'HTTP ' + response.status,
            );
        }
        return data as T;
    }

    health(): Promise<Health> {
        return this.request('GET', '/health');
    }

    nextItem(annotatorId: string): Promise<QueueItem> {
        return this.request('GET', '/annotation/next?annotator=' + encodeURIComponent(annotatorId));
    }

    submitAnnotation(record: AnnotationRecord): Promise<SubmitAck> {
        return this.request('POST', '/annotation', record);
    }

    agreement(): Promise<AgreementReport> {
        return this.request('GET', '/annotation/agreement');
    }

    progress(): Promise<ProgressReport> {
        return this.request('GET', '/annotation/progress');
    }

    histogram(): Promise<ScoreHistogram> {
        return this.request('GET', '/scores/histogram');
    }
}
