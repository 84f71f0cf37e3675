"""Pure-numpy split search, the fallback for the compiled kernel.

Both backends must return bit-identical results.  The score of a split
is S = (pl²+ql²)/nl + (pr²+qr²)/nr, computed as one float64 division of
exact int64 numerator and denominator, so C and numpy agree to the last
bit.  A split improves on its parent iff S > (p²+q²)/m strictly; ties
between candidates are broken by lowest feature index, then lowest
threshold, via ascending scan order with strict comparison.
"""

from __future__ import annotations

import numpy as np


def best_split(
    X: np.ndarray, y: np.ndarray, idx: np.ndarray, feats: np.ndarray
) -> tuple[int, float]:
    """Best (feature, threshold) over ``feats`` for the rows in ``idx``.

    Returns (-1, 0.0) when no candidate strictly improves on the parent.
    ``feats`` must be sorted ascending.
    """
    m = idx.shape[0]
    labels = y[idx].astype(np.int64)
    p = int(labels.sum())
    q = m - p
    parent = np.float64(np.int64(p * p + q * q)) / np.float64(np.int64(m))

    if m < 2 or p == 0 or q == 0:
        return -1, 0.0

    V = X[np.ix_(idx, feats)]
    order = np.argsort(V, axis=0)
    Vs = np.take_along_axis(V, order, axis=0)
    Ls = np.take_along_axis(
        np.broadcast_to(labels[:, None], V.shape), order, axis=0
    )

    nl = np.arange(1, m, dtype=np.int64)[:, None]
    nr = np.int64(m) - nl
    pl = np.cumsum(Ls, axis=0, dtype=np.int64)[:-1, :]
    ql = nl - pl
    pr = np.int64(p) - pl
    qr = np.int64(q) - ql

    num = (pl * pl + ql * ql) * nr + (pr * pr + qr * qr) * nl
    den = nl * nr
    scores = num.astype(np.float64) / den.astype(np.float64)

    valid = Vs[1:, :] > Vs[:-1, :]
    scores = np.where(valid, scores, -np.inf)

    best_feat = -1
    best_thr = 0.0
    best_score = parent
    lows = Vs[:-1, :]
    highs = Vs[1:, :]
    for col in range(feats.shape[0]):
        row = int(np.argmax(scores[:, col]))
        s = scores[row, col]
        if s > best_score:
            lo = lows[row, col]
            hi = highs[row, col]
            mid = (lo + hi) / 2.0
            # Adjacent float values can make the midpoint round up to the
            # right value; fall back to the left value so `x <= threshold`
            # still separates the boundary.
            if mid >= hi:
                mid = lo
            best_score = s
            best_feat = int(feats[col])
            best_thr = float(mid)
    return best_feat, best_thr
