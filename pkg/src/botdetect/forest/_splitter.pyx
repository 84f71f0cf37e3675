# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled split search; must match _splitter_py bit for bit.

Scores use exact int64 arithmetic with a single float64 division, and
candidates are scanned feature-ascending then threshold-ascending with
strict improvement, so the compiled and numpy backends pick identical
splits.  Unstable sorting is safe: prefix counts at boundaries between
distinct values do not depend on the order within a run of equal
values.
"""

from libcpp.algorithm cimport sort
from libcpp.pair cimport pair
from libcpp.vector cimport vector

import numpy as np


def best_split(double[:, ::1] X, signed char[:] y, long long[:] idx, long long[:] feats):
    """Best (feature, threshold) over ``feats`` for rows ``idx``.

    Returns (-1, 0.0) when no candidate strictly improves on the parent.
    ``feats`` must be sorted ascending.
    """
    cdef Py_ssize_t m = idx.shape[0]
    cdef Py_ssize_t k = feats.shape[0]
    cdef Py_ssize_t i, j, c
    cdef long long p = 0, q
    cdef long long pl, ql, pr, qr, nl, nr, num, den
    cdef double parent, best_score, s, lo, hi, mid
    cdef double best_thr = 0.0
    cdef long long best_feat = -1
    cdef long long f
    cdef vector[pair[double, signed char]] buf
    cdef pair[double, signed char] item

    for i in range(m):
        p += y[idx[i]]
    q = m - p
    parent = <double>(p * p + q * q) / <double>m
    if m < 2 or p == 0 or q == 0:
        return -1, 0.0

    best_score = parent
    with nogil:
        buf.resize(m)
        for c in range(k):
            f = feats[c]
            for i in range(m):
                item.first = X[idx[i], f]
                item.second = y[idx[i]]
                buf[i] = item
            sort(buf.begin(), buf.end())

            pl = 0
            for i in range(m - 1):
                pl += buf[i].second
                if buf[i + 1].first <= buf[i].first:
                    continue
                nl = i + 1
                nr = m - nl
                ql = nl - pl
                pr = p - pl
                qr = q - ql
                num = (pl * pl + ql * ql) * nr + (pr * pr + qr * qr) * nl
                den = nl * nr
                s = <double>num / <double>den
                if s > best_score:
                    lo = buf[i].first
                    hi = buf[i + 1].first
                    mid = (lo + hi) / 2.0
                    if mid >= hi:
                        mid = lo
                    best_score = s
                    best_feat = f
                    best_thr = mid

    return int(best_feat), float(best_thr)
