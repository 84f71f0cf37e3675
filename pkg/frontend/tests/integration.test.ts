// Two simulated annotators drive the full loop against a live service:
// corpus synthesis, training, and `botdetect serve` all run for real.
// Deterministic label rules give imperfect agreement so kappa is
// informative, and the dashboard numbers are cross-checked against the
// evaluation module through a python subprocess.

import { ChildProcess, execFileSync, spawn } from 'node:child_process';
import { mkdtempSync, readFileSync, rmSync } from 'node:fs';
import { AddressInfo, createServer } from 'node:net';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';
import { AnnotationLabel, ApiClient, ApiError } from '../src/api.js';
import { AnnotationSession } from '../src/session.js';
import { DashboardPoller } from '../src/dashboard.js';

const ANNOTATORS = ['alice', 'bob'] as const;
type Annotator = (typeof ANNOTATORS)[number];

let workspace: string;
let service: ChildProcess | null = null;
let serviceLog = '';
let client: ApiClient;
let digests: string[] = [];
const submitted: Record<Annotator, Map<string, AnnotationLabel>> = {
    alice: new Map(),
    bob: new Map(),
};

function cli(...args: string[]): void {
    execFileSync('python3', ['-m', 'botdetect.cli', ...args], { stdio: 'pipe' });
}

function freePort(): Promise<number> {
    return new Promise((resolve, reject) => {
        const probe = createServer();
        probe.on('error', reject);
        probe.listen(0, '127.0.0.1', () => {
            const port = (probe.address() as AddressInfo).port;
            probe.close(() => resolve(port));
        });
    });
}

function sleep(ms: number): Promise<void> {
    return new Promise((resolve) => setTimeout(resolve, ms));
}

async function waitForHealth(timeoutMs: number): Promise<void> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
        try {
            const health = await client.health();
            if (health.status === 'ok') {
                return;
            }
        } catch {
            // not listening yet
        }
        if (Date.now() > deadline) {
            throw new Error('service did not come up; log so far:\n' + serviceLog);
        }
        await sleep(200);
    }
}

// Deterministic labels from the account id alone: base label follows
// character-sum parity, alice abstains on multiples of 7, bob disagrees
// with the base on multiples of 5.
function labelFor(annotator: Annotator, accountId: string): AnnotationLabel {
    const codeSum = [...accountId].reduce((sum, ch) => sum + ch.charCodeAt(0), 0);
    if (annotator === 'alice' && codeSum % 7 === 0) {
        return 'undecided';
    }
    const base: AnnotationLabel = codeSum % 2 === 0 ? 'bot' : 'human';
    if (annotator === 'bob' && codeSum % 5 === 0) {
        return base === 'bot' ? 'human' : 'bot';
    }
    return base;
}

async function drain(): Promise<void> {
    const sessions = new Map<Annotator, AnnotationSession>(
        ANNOTATORS.map((name) => [name, new AnnotationSession(client, name)]),
    );
    for (let rounds = 0; rounds < 500; rounds += 1) {
        let active = false;
        for (const [name, session] of sessions) {
            if (session.state === 'done') {
                continue;
            }
            const item = await session.nextItem();
            if (!item) {
                continue;
            }
            active = true;
            digests.push(JSON.stringify(item.digest));
            const label = labelFor(name, item.accountId);
            const outcome = await session.submit(label);
            expect(outcome.warning).toBeNull();
            submitted[name].set(item.accountId, label);
        }
        if (!active && [...sessions.values()].every((s) => s.state === 'done')) {
            return;
        }
    }
    throw new Error('annotation queue did not drain');
}

beforeAll(async () => {
    workspace = mkdtempSync(join(tmpdir(), 'annotate-ui-'));
    const bundles = join(workspace, 'bundles.jsonl');
    const labels = join(workspace, 'labels.csv');
    const features = join(workspace, 'features.csv');
    const model = join(workspace, 'model.json');
    cli('synth', '--humans', '14', '--simple-bots', '10', '--sophisticated-bots', '6',
        '--seed', '29', '--out', workspace);
    cli('extract', '--bundles', bundles, '--out', features);
    cli('train', '--features', features, '--labels', labels,
        '--trees', '12', '--seed', '3', '--out', model);

    const port = await freePort();
    client = new ApiClient('http://127.0.0.1:' + port);
    service = spawn('python3', [
        '-m', 'botdetect.cli', 'serve',
        '--model', model,
        '--bundles', bundles,
        '--labels', labels,
        '--data-dir', join(workspace, 'service'),
        '--host', '127.0.0.1',
        '--port', String(port),
        '--quota', '4',
        '--overlap-target', '0.25',
        '--seed', '11',
    ], { stdio: ['ignore', 'pipe', 'pipe'] });
    service.stdout?.on('data', (chunk: Buffer) => { serviceLog += chunk.toString(); });
    service.stderr?.on('data', (chunk: Buffer) => { serviceLog += chunk.toString(); });
    await waitForHealth(60000);
    await drain();
});

afterAll(async () => {
    if (service && service.exitCode === null) {
        service.kill('SIGTERM');
        await new Promise((resolve) => service?.once('exit', resolve));
    }
    if (workspace) {
        rmSync(workspace, { recursive: true, force: true });
    }
});

describe('two-annotator campaign', () => {
    it('annotates every pooled account and meets the overlap target', async () => {
        const progress = await client.progress();
        expect(progress.total_serves).toBeGreaterThan(0);
        expect(progress.annotations).toBe(submitted.alice.size + submitted.bob.size);
        expect(progress.overlap_fraction).toBeGreaterThanOrEqual(0.10);
        for (const decile of progress.deciles) {
            if (decile.pool > 0) {
                expect(decile.complete).toBe(true);
            }
        }
    });

    it('served digests never include a model score', () => {
        expect(digests.length).toBeGreaterThan(0);
        for (const digest of digests) {
            expect(digest.toLowerCase()).not.toContain('score');
            expect(digest.toLowerCase()).not.toContain('decile');
        }
    });

    it('dashboard kappa equals the evaluation module kappa', async () => {
        const state = await new DashboardPoller(client).refresh();
        expect(state.stale).toBe(false);
        expect(state.agreementStatus).toBe('ok');
        const report = state.agreement!;
        expect(report.annotators).toBe(2);

        // Reproduce the service's pairing rule: common accounts where
        // both labels are decided, in sorted account order.
        const common = [...submitted.alice.keys()]
            .filter((id) => submitted.bob.has(id))
            .filter((id) =>
                submitted.alice.get(id) !== 'undecided' &&
                submitted.bob.get(id) !== 'undecided')
            .sort();
        expect(common.length).toBeGreaterThan(0);
        expect(report.overlap_items).toBe(common.length);

        const payload = JSON.stringify({
            a: common.map((id) => submitted.alice.get(id)),
            b: common.map((id) => submitted.bob.get(id)),
        });
        const script =
            'import json, sys\n' +
            'from botdetect.evaluation import cohens_kappa\n' +
            'data = json.load(sys.stdin)\n' +
            'print(repr(cohens_kappa(data["a"], data["b"])))\n';
        const out = execFileSync('python3', ['-c', script], { input: payload })
            .toString()
            .trim();
        const reference = Number(out);
        expect(Number.isFinite(reference)).toBe(true);
        expect(Math.abs(report.kappa - reference)).toBeLessThanOrEqual(1e-9);
    });

    it('a duplicate submit produces exactly one stored record', async () => {
        const accountId = [...submitted.alice.keys()][0];
        const err = await client
            .submitAnnotation({
                account_id: accountId,
                annotator_id: 'alice',
                label: 'bot',
                elapsed_seconds: 1.0,
                created_at: new Date().toISOString(),
            })
            .catch((e: unknown) => e);
        expect(err).toBeInstanceOf(ApiError);
        expect((err as ApiError).status).toBe(409);
        expect((err as ApiError).code).toBe('duplicate_annotation');

        const log = readFileSync(join(workspace, 'service', 'annotations.log.jsonl'), 'utf8');
        const records = log
            .split('\n')
            .filter((line) => line.trim().length > 0)
            .map((line) => JSON.parse(line) as { account_id: string; annotator_id: string });
        const matching = records.filter(
            (r) => r.account_id === accountId && r.annotator_id === 'alice',
        );
        expect(matching).toHaveLength(1);
    });
});
