"""Numba kernels for the dynamic-programming hot paths.

Everything here works on contiguous int64 arrays.  ``BIG`` marks values a
banded computation could not certify; callers treat it as infinity.
"""

from __future__ import annotations

import numpy as np
from numba import njit

BIG = 1 << 30


@njit(cache=True)
def dp_last_row(x, y):
    """Final row of the unit-cost edit DP: entry j = distance(x, y[:j])."""
    n, m = len(x), len(y)
    row = np.arange(m + 1)
    for i in range(1, n + 1):
        diag = row[0]
        row[0] = i
        xi = x[i - 1]
        for j in range(1, m + 1):
            d = diag + (0 if xi == y[j - 1] else 1)
            diag = row[j]
            if row[j] + 1 < d:
                d = row[j] + 1
            if row[j - 1] + 1 < d:
                d = row[j - 1] + 1
            row[j] = d
    return row


@njit(cache=True)
def dp_matrix(x, y):
    """Full unit-cost edit DP table, for alignment backtracking."""
    n, m = len(x), len(y)
    d = np.empty((n + 1, m + 1), np.int32)
    for j in range(m + 1):
        d[0, j] = j
    for i in range(1, n + 1):
        d[i, 0] = i
        xi = x[i - 1]
        for j in range(1, m + 1):
            best = d[i - 1, j - 1] + (0 if xi == y[j - 1] else 1)
            if d[i - 1, j] + 1 < best:
                best = d[i - 1, j] + 1
            if d[i, j - 1] + 1 < best:
                best = d[i, j - 1] + 1
            d[i, j] = best
    return d


@njit(cache=True)
def band_distance(x, y, k):
    """Edit distance when it is <= k, else -1.  Width-(2k+1) band."""
    n, m = len(x), len(y)
    if abs(n - m) > k:
        return -1
    w = 2 * k + 1
    prev = np.empty(w, np.int64)
    cur = np.empty(w, np.int64)
    for t in range(w):
        j = t - k
        prev[t] = j if 0 <= j <= m else BIG
    for i in range(1, n + 1):
        xi = x[i - 1]
        for t in range(w):
            j = i - k + t
            if j < 0 or j > m:
                cur[t] = BIG
                continue
            if j == 0:
                cur[t] = i
                continue
            best = BIG
            d = prev[t]
            if d < BIG:
                best = d + (0 if xi == y[j - 1] else 1)
            if t >= 1 and cur[t - 1] + 1 < best:
                best = cur[t - 1] + 1
            if t + 1 < w and prev[t + 1] + 1 < best:
                best = prev[t + 1] + 1
            cur[t] = best
        tmp = prev
        prev = cur
        cur = tmp
    r = prev[m - n + k]
    return r if r <= k else -1


@njit(cache=True)
def band_prefix_row(p, v, cap):
    """Distances from ``p`` to every prefix of ``v``, certified up to ``cap``.

    Returns an array of length len(v)+1 whose entry j is distance(p, v[:j])
    whenever that distance is <= cap, and BIG otherwise.
    """
    n, m = len(p), len(v)
    out = np.full(m + 1, BIG, np.int64)
    w = 2 * cap + 1
    prev = np.empty(w, np.int64)
    cur = np.empty(w, np.int64)
    for t in range(w):
        j = t - cap
        prev[t] = j if 0 <= j <= m else BIG
    for i in range(1, n + 1):
        pi = p[i - 1]
        for t in range(w):
            j = i - cap + t
            if j < 0 or j > m:
                cur[t] = BIG
                continue
            if j == 0:
                cur[t] = i
                continue
            best = BIG
            d = prev[t]
            if d < BIG:
                best = d + (0 if pi == v[j - 1] else 1)
            if t >= 1 and cur[t - 1] < BIG and cur[t - 1] + 1 < best:
                best = cur[t - 1] + 1
            if t + 1 < w and prev[t + 1] < BIG and prev[t + 1] + 1 < best:
                best = prev[t + 1] + 1
            cur[t] = best
        tmp = prev
        prev = cur
        cur = tmp
    for t in range(w):
        j = n - cap + t
        if 0 <= j <= m and prev[t] <= cap:
            out[j] = prev[t]
    return out


@njit(cache=True)
def level_dp(u, v, cuts, s, u_cap):
    """One level of the black-box aligner's partition search.

    Finds q_0 <= ... <= q_m over the candidate set ``s`` minimizing the summed
    exact part distances, exploring only edges whose cost can still beat
    ``u_cap`` (a strict upper bound on the optimum, so pruning is lossless).
    Ties prefer the smaller predecessor.  Returns (cost, q, calls) where q[j]
    indexes into ``s``.
    """
    m = len(cuts) - 1
    ns = len(s)
    f = np.full((m + 1, ns), BIG, np.int64)
    arg = np.full((m + 1, ns), -1, np.int64)
    f[0, 0] = 0  # s[0] == 0 always
    calls = 0
    for j in range(1, m + 1):
        pj = u[cuts[j - 1] : cuts[j]]
        for a in range(ns):
            base = f[j - 1, a]
            if base >= BIG or base > u_cap:
                continue
            l0 = s[a]
            row = band_prefix_row(pj, v[l0:], u_cap - base)
            for b in range(a, ns):
                c = row[s[b] - l0]
                calls += 1
                if c < BIG and base + c < f[j, b]:
                    f[j, b] = base + c
                    arg[j, b] = a
    q = np.empty(m + 1, np.int64)
    q[m] = ns - 1  # s[-1] == len(v) always
    cost = f[m, ns - 1]
    for j in range(m, 0, -1):
        q[j - 1] = arg[j, q[j]]
    return cost, q, calls


@njit(cache=True)
def hamming_of_runs(ia, va, ib, vb):
    """Hamming distance between two sparse vectors given as sorted (idx, val)."""
    na, nb = len(ia), len(ib)
    i = 0
    j = 0
    diff = 0
    while i < na and j < nb:
        if ia[i] < ib[j]:
            diff += 1
            i += 1
        elif ia[i] > ib[j]:
            diff += 1
            j += 1
        else:
            if va[i] != vb[j]:
                diff += 1
            i += 1
            j += 1
    diff += (na - i) + (nb - j)
    return diff
