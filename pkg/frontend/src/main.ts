/**
 * Entry point for the annotation console. Reads the service base URL
 * and annotator id from query parameters, then drives the labeling
 * loop and the dashboard through the typed API client.
 */

import { AnnotationLabel, ApiClient } from './api.js';
import { DashboardPoller } from './dashboard.js';
import {
    renderCompletion,
    renderDashboard,
    renderError,
    renderItem,
} from './render.js';
import { AnnotationSession } from './session.js';

const DASHBOARD_POLL_MS = 5000;
const LABEL_KEYS: Record<string, AnnotationLabel> = {
    h: 'human',
    b: 'bot',
    u: 'undecided',
};

function param(name: string): string {
    return new URLSearchParams(window.location.search).get(name) ?? '';
}

function renderLogin(): string {
    return `<section class="login">
<h2>start a session</h2>
<form id="login-form">
  <label>annotator id <input name="annotator" autofocus required /></label>
  <button type="submit">start</button>
</form>
</section>`;
}

class Console {
    private readonly session: AnnotationSession;
    private readonly dashboard: DashboardPoller;
    private view: 'label' | 'dashboard' = 'label';
    private pollTimer: number | null = null;

    constructor(
        client: ApiClient,
        annotatorId: string,
        private readonly root: HTMLElement,
    ) {
        this.session = new AnnotationSession(client, annotatorId);
        this.dashboard = new DashboardPoller(client);
    }

    async start(): Promise<void> {
        document.querySelectorAll('[data-view]').forEach((button) => {
            button.addEventListener('click', () => {
                this.view = button.getAttribute('data-view') === 'dashboard'
                    ? 'dashboard'
                    : 'label';
                void this.show();
            });
        });
        document.addEventListener('keydown', (event) => {
            const label = LABEL_KEYS[event.key];
            if (label && this.view === 'label' && this.session.currentItem) {
                void this.submit(label);
            }
        });
        await this.show();
    }

    private async show(): Promise<void> {
        if (this.view === 'dashboard') {
            await this.showDashboard();
        } else {
            this.stopPolling();
            await this.showItem();
        }
    }

    private async showItem(): Promise<void> {
        try {
            const item = await this.session.nextItem();
            if (!item) {
                this.root.innerHTML = renderCompletion(this.session.submittedCount);
                return;
            }
            this.root.innerHTML = renderItem(item);
            this.root.querySelectorAll('button[data-label]').forEach((button) => {
                button.addEventListener('click', () => {
                    void this.submit(button.getAttribute('data-label') as AnnotationLabel);
                });
            });
        } catch (err) {
            this.root.innerHTML = renderError(
                'cannot reach the annotation service: ' +
                (err instanceof Error ? err.message : String(err)),
            );
        }
    }

    private async submit(label: AnnotationLabel): Promise<void> {
        try {
            const outcome = await this.session.submit(label);
            if (outcome.warning) {
                console.warn(outcome.warning);
            }
        } catch (err) {
            this.root.innerHTML = renderError(
                'submit failed: ' + (err instanceof Error ? err.message : String(err)),
            );
            return;
        }
        await this.showItem();
    }

    private async showDashboard(): Promise<void> {
        const state = await this.dashboard.refresh();
        if (this.view !== 'dashboard') {
            return;
        }
        this.root.innerHTML = renderDashboard(state);
        this.stopPolling();
        this.pollTimer = window.setTimeout(() => {
            void this.showDashboard();
        }, DASHBOARD_POLL_MS);
    }

    private stopPolling(): void {
        if (this.pollTimer !== null) {
            window.clearTimeout(this.pollTimer);
            this.pollTimer = null;
        }
    }
}

function init(): void {
    const root = document.getElementById('main-content');
    if (!root) {
        return;
    }
    const annotator = param('annotator');
    if (!annotator) {
        root.innerHTML = renderLogin();
        const form = document.getElementById('login-form') as HTMLFormElement | null;
        form?.addEventListener('submit', (event) => {
            event.preventDefault();
            const input = form.elements.namedItem('annotator') as HTMLInputElement;
            const search = new URLSearchParams(window.location.search);
            search.set('annotator', input.value.trim());
            window.location.search = search.toString();
        });
        return;
    }
    const base = param('api') || 'http://127.0.0.1:8000';
    const client = new ApiClient(base);
    void new Console(client, annotator, root).start();
}

init();
