// HTML string builders. The item view deliberately renders neither the
// model score nor the item's decile: annotators must judge the profile
// alone, and both numbers would anchor them. Dashboard blocks format
// service numbers without recomputing anything.

import { DecileProgress, UserSnapshot } from './api.js';
import { DashboardState } from './dashboard.js';
import { ServedItem } from './session.js';

export function escapeHtml(text: string): string {
    return text
        .replace(/&/g, '&amp;')
        .replace(/</g, '&lt;')
        .replace(/>/g, '&gt;')
        .replace(/"/g, '&quot;')
        .replace(/'/g, '&#39;');
}

// Profile red flags shown as badges next to the account header. These
// are boolean observations on served fields, not model output.
export function profileFlags(user: UserSnapshot): string[] {
    const flags: string[] = [];
    if (user.default_profile_image) {
        flags.push('stock profile image');
    }
    if (user.default_profile) {
        flags.push('default profile theme');
    }
    if (!user.description) {
        flags.push('empty description');
    }
    const digits = (user.screen_name.match(/[0-9]/g) ?? []).length;
    if (digits >= 4) {
        flags.push('digit-heavy screen name');
    }
    if (user.friends_count > 0 && user.followers_count === 0) {
        flags.push('no followers');
    } else if (user.friends_count > 100 && user.friends_count > 10 * user.followers_count) {
        flags.push('follows far more accounts than follow back');
    }
    return flags;
}

function statRow(label: string, value: number | string): string {
    return `<tr><th>${escapeHtml(label)}</th><td>${escapeHtml(String(value))}</td></tr>`;
}

export function renderItem(item: ServedItem): string {
    const user = item.digest.user;
    const flags = profileFlags(user)
        .map((flag) => `<span class="flag">${escapeHtml(flag)}</span>`)
        .join(' ');
    const tweets = item.digest.sample_tweets
        .map((tweet) => {
            const marker = tweet.is_retweet ? '<span class="rt">RT</span> ' : '';
            return `<li>${marker}${escapeHtml(tweet.text)}` +
                `<time>${escapeHtml(tweet.created_at)}</time></li>`;
        })
        .join('\n');
    return `<article class="account" data-account="${escapeHtml(item.accountId)}">
<header>
  <h2>${escapeHtml(user.display_name)} <small>@${escapeHtml(user.screen_name)}</small></h2>
  ${flags ? `<p class="flags">${flags}</p>` : ''}
  <p class="description">${escapeHtml(user.description) || '<em>no description</em>'}</p>
</header>
<table class="profile">
${statRow('account created', user.created_at)}
${statRow('statuses', user.statuses_count)}
${statRow('friends', user.friends_count)}
${statRow('followers', user.followers_count)}
${statRow('favourites', user.favourites_count)}
</table>
<table class="activity">
${statRow('tweets in window', item.digest.timeline_tweets)}
${statRow('retweets', item.digest.retweets)}
${statRow('tweets with mentions', item.digest.mentions)}
${statRow('replies', item.digest.replies)}
${statRow('mentions of this account', item.digest.mentions_of_account)}
${statRow('distinct hashtags', item.digest.distinct_hashtags)}
</table>
<section class="tweets">
  <h3>recent tweets</h3>
  <ul>
${tweets || '<li><em>no tweets in window</em></li>'}
  </ul>
</section>
<footer class="controls">
  <button data-label="human">human (h)</button>
  <button data-label="bot">bot (b)</button>
  <button data-label="undecided">undecided (u)</button>
</footer>
</article>`;
}

export function renderCompletion(submittedCount: number): string {
    return `<section class="done">
<h2>queue exhausted</h2>
<p>All assigned accounts are labeled. You submitted ${submittedCount} annotations this session.</p>
</section>`;
}

export function renderError(message: string): string {
    return `<section class="error"><p>${escapeHtml(message)}</p></section>`;
}

function progressRow(row: DecileProgress): string {
    const mark = row.complete ? ' class="complete"' : '';
    return `<tr${mark}><td>${row.decile}</td><td>${row.annotated} / ${row.pool}</td>` +
        `<td>${row.served}</td><td>${row.complete ? 'complete' : 'open'}</td></tr>`;
}

export function renderDashboard(state: DashboardState): string {
    const parts: string[] = [];
    if (state.stale) {
        parts.push(
            `<p class="banner stale">service unreachable, showing last known data` +
            `${state.lastError ? ': ' + escapeHtml(state.lastError) : ''}</p>`,
        );
    }

    if (state.agreementStatus === 'insufficient_overlap') {
        parts.push('<section class="agreement"><h3>agreement</h3>' +
            '<p class="empty">insufficient overlap: no co-annotated accounts yet</p></section>');
    } else if (state.agreement) {
        const report = state.agreement;
        const pairs = report.pairs
            .map((pair) =>
                `<tr><td>${escapeHtml(pair.annotator_a)} / ${escapeHtml(pair.annotator_b)}</td>` +
                `<td>${pair.items}</td><td>${(pair.agreement * 100).toFixed(1)}%</td>` +
                `<td>${pair.kappa.toFixed(3)}</td></tr>`)
            .join('\n');
        const elapsed = Object.entries(report.mean_elapsed_by_label)
            .map(([label, seconds]) =>
                `<li>${escapeHtml(label)}: ${seconds.toFixed(1)} s</li>`)
            .join('');
        const modelMean = report.model_agreement.mean;
        parts.push(`<section class="agreement">
<h3>agreement</h3>
<p>kappa ${report.kappa.toFixed(3)}, mean pairwise ${(report.mean_agreement * 100).toFixed(1)}%
over ${report.overlap_items} shared accounts (${report.annotations} annotations,
${report.annotators} annotators)</p>
<table><tr><th>pair</th><th>items</th><th>agreement</th><th>kappa</th></tr>
${pairs}</table>
<p>model agreement: ${modelMean === null ? 'n/a' : (modelMean * 100).toFixed(1) + '%'}</p>
<ul class="elapsed">${elapsed}</ul>
</section>`);
    } else {
        parts.push('<section class="agreement"><h3>agreement</h3>' +
            '<p class="empty">no agreement data yet</p></section>');
    }

    if (state.histogram) {
        const total = Math.max(state.histogram.total, 1);
        const bars = state.histogram.bins
            .map((bin) => {
                const width = Math.round((bin.count / total) * 100);
                return `<tr><td>${bin.bin_low.toFixed(1)}-${bin.bin_high.toFixed(1)}</td>` +
                    `<td><div class="bar" style="width:${width}%"></div>${bin.count}</td></tr>`;
            })
            .join('\n');
        parts.push(`<section class="histogram">
<h3>score distribution (${state.histogram.total} accounts)</h3>
<table>
${bars}</table>
</section>`);
    }

    if (state.progress) {
        const rows = state.progress.deciles.map(progressRow).join('\n');
        parts.push(`<section class="progress">
<h3>annotation progress</h3>
<p>${state.progress.annotations} annotations over ${state.progress.served_accounts}
served accounts; overlap ${(state.progress.overlap_fraction * 100).toFixed(1)}%
of ${state.progress.total_serves} serves</p>
<table><tr><th>decile</th><th>annotated / pool</th><th>served</th><th>state</th></tr>
${rows}</table>
</section>`);
    }

    return `<div class="dashboard">\n${parts.join('\n')}\n</div>`;
}
