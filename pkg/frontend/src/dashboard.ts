// Read-only mirror of the service reporting endpoints. Every number
// shown on the dashboard comes straight from a response body; a failed
// poll keeps the previous snapshot and marks it stale.

import { AgreementReport, ApiError, ProgressReport, ScoreHistogram } from './api.js';

export interface DashboardApi {
    agreement(): Promise<AgreementReport>;
    progress(): Promise<ProgressReport>;
    histogram(): Promise<ScoreHistogram>;
}

// 'missing' = never fetched, 'insufficient_overlap' = service has no
// co-annotated decided items yet (its 409 state).
export type AgreementStatus = 'missing' | 'ok' | 'insufficient_overlap';

export interface DashboardState {
    agreement: AgreementReport | null;
    agreementStatus: AgreementStatus;
    histogram: ScoreHistogram | null;
    progress: ProgressReport | null;
    stale: boolean;
    lastError: string | null;
}

export class DashboardPoller {
    private state: DashboardState = {
        agreement: null,
        agreementStatus: 'missing',
        histogram: null,
        progress: null,
        stale: false,
        lastError: null,
    };

    constructor(private readonly api: DashboardApi) {}

    get current(): DashboardState {
        return this.state;
    }

    async refresh(): Promise<DashboardState> {
        try {
            const [histogram, progress] = await Promise.all([
                this.api.histogram(),
                this.api.progress(),
            ]);
            let agreement: AgreementReport | null = null;
            let agreementStatus: AgreementStatus = 'missing';
            try {
                agreement = await this.api.agreement();
                agreementStatus = 'ok';
            } catch (err) {
                if (err instanceof ApiError && err.status === 409) {
                    agreementStatus = 'insufficient_overlap';
                } else {
                    throw err;
                }
            }
            this.state = {
                agreement,
                agreementStatus,
                histogram,
                progress,
                stale: false,
                lastError: null,
            };
        } catch (err) {
            this.state = {
                ...this.state,
                stale: true,
                lastError: err instanceof Error ? err.message : String(err),
            };
        }
        return this.state;
    }
}
