"""String periodicity: minimum periods, bounded-period detection via suffix
arrays, maximally periodic substring enumeration, smallest cyclic rotation,
and (D, R)-periodic-free checking."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import StrLike, as_symbols


@dataclass(frozen=True)
class PeriodicSpan:
    """Maximal substring (1-based inclusive) of length >= 8c with period <= c."""

    start: int
    end: int
    period: int

    @property
    def length(self) -> int:
        return self.end - self.start + 1


def _prefix_function(s: list[int]) -> list[int]:
    pi = [0] * len(s)
    k = 0
    for i in range(1, len(s)):
        while k and s[i] != s[k]:
            k = pi[k - 1]
        if s[i] == s[k]:
            k += 1
        pi[i] = k
    return pi


def min_period(w: StrLike) -> int:
    """Smallest p >= 1 with w[i] == w[i+p] for every valid i."""
    wa = as_symbols(w, allow_reserved=True)
    if len(wa) == 0:
        raise ValueError("min_period of an empty string is undefined")
    s = wa.tolist()
    return len(s) - _prefix_function(s)[-1]


def suffix_array(w: StrLike) -> np.ndarray:
    """0-based start positions of all suffixes in lexicographic order.

    Rank-doubling construction over numpy lexsort.
    """
    s = as_symbols(w, allow_reserved=True)
    n = len(s)
    if n == 0:
        return np.empty(0, dtype=np.int64)
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    _, rank = np.unique(s, return_inverse=True)
    rank = rank.astype(np.int64)
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[: n - k] = rank[k:]
        sa = np.lexsort((second, rank))
        new = np.empty(n, dtype=np.int64)
        new[sa[0]] = 0
        bumped = (rank[sa[1:]] != rank[sa[:-1]]) | (second[sa[1:]] != second[sa[:-1]])
        new[sa[1:]] = np.cumsum(bumped)
        rank = new
        if rank[sa[-1]] == n - 1:
            return sa
        k *= 2


def _is_p_periodic(wa: np.ndarray, p: int) -> bool:
    return p >= len(wa) or bool(np.array_equal(wa[:-p], wa[p:]))


def period_at_most(a: StrLike, c: int) -> int | None:
    """Minimum period of ``a`` when it is <= c, else None.

    The suffix lexicographically adjacent (preceding) to the whole string
    starts exactly at the minimum period when ``a`` is periodic with period
    <= c and |a| = 4c; the derived candidate is verified before acceptance.
    Inputs down to |a| = 2c are accepted, with a direct cross-check guarding
    the shorter lengths the suffix-array argument does not cover.
    """
    if c < 1:
        raise ValueError("c must be >= 1")
    aa = as_symbols(a, allow_reserved=True)
    if len(aa) < 2 * c:
        raise ValueError(f"|a| must be >= 2c = {2 * c}, got {len(aa)}")
    sa = suffix_array(aa)
    pos = int(np.flatnonzero(sa == 0)[0])
    if pos > 0:
        p = int(sa[pos - 1])
        if p <= c and _is_p_periodic(aa, p):
            return p
    if len(aa) < 4 * c:
        # outside the lemma's setting; fall back to the direct answer
        mp = min_period(aa)
        if mp <= c:
            return mp
    return None


def maximal_periodic_substrings(w: StrLike, c: int) -> list[PeriodicSpan]:
    """All maximal spans of length >= 8c whose minimum period is <= c.

    Scans disjoint 4c-chunks (every qualifying span fully contains one),
    extends each periodic chunk as far as its period allows, and skips the
    chunks a found span already covers.  Output is sorted by start.
    """
    if c < 1:
        raise ValueError("c must be >= 1")
    wa = as_symbols(w, allow_reserved=True)
    n = len(wa)
    chunk = 4 * c
    spans: list[PeriodicSpan] = []
    i = 0
    while i + chunk <= n:
        p = period_at_most(wa[i : i + chunk], c)
        if p is None:
            i += chunk
            continue
        lo = i
        while lo - 1 >= 0 and wa[lo - 1] == wa[lo - 1 + p]:
            lo -= 1
        hi = i + chunk - 1
        while hi + 1 < n and wa[hi + 1] == wa[hi + 1 - p]:
            hi += 1
        if hi - lo + 1 >= 8 * c:
            spans.append(PeriodicSpan(lo + 1, hi + 1, p))
            i += chunk
            while i + chunk <= hi + 1:
                i += chunk
        else:
            i += chunk
    return spans


def _booth(s: list[int]) -> int:
    """0-based index of the lexicographically least rotation."""
    n = len(s)
    ss = s + s
    f = [-1] * len(ss)
    k = 0
    for j in range(1, len(ss)):
        sj = ss[j]
        i = f[j - k - 1]
        while i != -1 and sj != ss[k + i + 1]:
            if sj < ss[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != ss[k + i + 1]:
            if sj < ss[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def smallest_rotation_offset(u: StrLike) -> int:
    """1-based offset of the lexicographically least rotation (smallest on ties)."""
    ua = as_symbols(u, allow_reserved=True)
    if len(ua) == 0:
        raise ValueError("rotation of an empty string is undefined")
    s = ua.tolist()
    k = _booth(s)
    # rotations repeat under a cyclic symmetry; report the smallest offset
    d = min_period(ua)
    if len(s) % d == 0:
        k %= d
    return k + 1


def is_periodic_free(w: StrLike, d_len: int, r: int) -> bool:
    """True iff no substring of length >= d_len has period <= r.

    Long violations (>= 8r letters) always sit inside a maximal periodic
    span, so span enumeration covers d_len >= 8r; shorter configurations get
    a direct scan over all length-d_len windows.
    """
    if r > d_len:
        raise ValueError("r must be <= d_len")
    if d_len < 1 or r < 1:
        raise ValueError("d_len and r must be >= 1")
    wa = as_symbols(w, allow_reserved=True)
    n = len(wa)
    if n < d_len:
        return True
    if d_len >= 8 * r:
        return all(span.length < d_len for span in maximal_periodic_substrings(wa, r))
    s = wa.tolist()
    for i in range(n - d_len + 1):
        win = s[i : i + d_len]
        if d_len - _prefix_function(win)[-1] <= r:
            return False
    return True
