"""Randomized dimension reduction for edit distance.

Both maps chop a string into blocks of O(c) letters chosen by content
(hash-minimal letters or grams, and period-aligned anchors inside periodic
runs), then treat each block as one letter of a contracted string.  Block
boundaries move with the content, so nearby strings contract to nearby block
strings, while blocks of length <= 2c - 1 force the hard lower bound
ed(x, y) <= 2c * ed(blocks(x), blocks(y)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import StrLike, as_symbols, edit_distance
from .hashing import (
    STREAM_DIMRED_GRAM,
    STREAM_DIMRED_SYMBOL,
    HashFamily,
    sliding_unique_min,
    window_hashes,
)
from .periodic import maximal_periodic_substrings, smallest_rotation_offset


@dataclass(frozen=True)
class BlockString:
    """Contracted string: each block is one letter over the alphabet Sigma*."""

    blocks: tuple[tuple[int, ...], ...]
    source_offsets: tuple[int, ...]  # 1-based start of each block in the source
    c: int
    seed: int

    def __len__(self) -> int:
        return len(self.blocks)

    def concat(self) -> np.ndarray:
        if not self.blocks:
            return np.empty(0, dtype=np.int64)
        return np.concatenate([np.asarray(b, dtype=np.int64) for b in self.blocks])


def _assemble(wa: np.ndarray, markers: set[int], subdivide_at: np.ndarray, c: int, seed: int) -> BlockString:
    """Cut at 1-based ``markers``; blocks starting where ``subdivide_at`` is
    true are re-cut into exact-c pieces with a remainder of at most c."""
    n = len(wa)
    bounds = sorted(b for b in markers if 1 <= b <= n)
    if not bounds or bounds[0] != 1:
        bounds.insert(0, 1)
    starts: list[int] = []
    blocks: list[tuple[int, ...]] = []
    for k, s in enumerate(bounds):
        e = bounds[k + 1] - 1 if k + 1 < len(bounds) else n
        if e < s:
            continue
        if subdivide_at[s - 1]:
            t = s
            while e - t + 1 > c:
                starts.append(t)
                blocks.append(tuple(int(v) for v in wa[t - 1 : t - 1 + c]))
                t += c
            starts.append(t)
            blocks.append(tuple(int(v) for v in wa[t - 1 : e]))
        else:
            starts.append(s)
            blocks.append(tuple(int(v) for v in wa[s - 1 : e]))
    return BlockString(tuple(blocks), tuple(starts), c, seed)


def dimred_perm(w: StrLike, c: int, seed: int) -> BlockString:
    """Contract a permutation: blocks begin at letters whose hash is the
    strict unique minimum of the surrounding 2c+1 letters."""
    if c < 2 or c % 2:
        raise ValueError("c must be an even integer >= 2")
    wa = as_symbols(w)
    n = len(wa)
    if n and len(np.unique(wa)) != n:
        raise ValueError("input is not a permutation: duplicate symbols")
    if n == 0:
        return BlockString((), (), c, seed)
    fam = HashFamily(seed)
    hv = fam.hash_array(STREAM_DIMRED_SYMBOL, wa)
    markers = set(sliding_unique_min(hv, c))
    return _assemble(wa, markers, np.ones(n, dtype=bool), c, seed)


def dimred_general(w: StrLike, c: int, seed: int) -> BlockString:
    """Contract an arbitrary string.

    Maximally periodic substrings get anchors every s letters (s the smallest
    multiple of the period >= c) starting where the lexicographically least
    rotation of the repeated gram first occurs, plus one just past their end.
    The remaining regions are treated through their 8c-gram digests like a
    permutation.  Blocks starting in non-periodic territory are subdivided to
    size <= c; periodic-run blocks keep their natural size < 2c.
    """
    if c < 2 or c % 2:
        raise ValueError("c must be an even integer >= 2")
    wa = as_symbols(w)
    n = len(wa)
    if n == 0:
        return BlockString((), (), c, seed)
    fam = HashFamily(seed)
    spans = maximal_periodic_substrings(wa, c)
    markers: set[int] = set()
    in_periodic = np.zeros(n, dtype=bool)
    for span in spans:
        in_periodic[span.start - 1 : span.end] = True
        p = span.period
        step = p * math.ceil(c / p)
        gram = wa[span.start - 1 : span.start - 1 + p]
        t = smallest_rotation_offset(gram)
        for local in range(t, span.length + 1, step):
            markers.add(span.start - 1 + local)
        if span.end < n:
            markers.add(span.end + 1)
    grams_w = 8 * c
    for a, b in _runs_false(in_periodic):
        d = b - a + 1
        if d < grams_w:
            continue
        digests = window_hashes(wa[a - 1 : b], grams_w, fam)
        hv = fam.hash_array(STREAM_DIMRED_GRAM, digests)
        for local in sliding_unique_min(hv, c // 2):
            markers.add(a - 1 + local)
    return _assemble(wa, markers, ~in_periodic, c, seed)


def _runs_false(mask: np.ndarray):
    """Maximal 1-based inclusive intervals where ``mask`` is false."""
    out = []
    n = len(mask)
    i = 0
    while i < n:
        if mask[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and not mask[j + 1]:
            j += 1
        out.append((i + 1, j + 1))
        i = j + 1
    return out


def block_distance(a: BlockString, b: BlockString) -> int:
    """Unit-cost edit distance over whole blocks (equal iff content-equal)."""
    if a.c != b.c:
        raise ValueError(f"block strings built with different c: {a.c} vs {b.c}")
    ids: dict[tuple[int, ...], int] = {}
    def encode(bs: BlockString) -> np.ndarray:
        out = np.empty(len(bs.blocks), dtype=np.int64)
        for i, blk in enumerate(bs.blocks):
            out[i] = ids.setdefault(blk, len(ids))
        return out
    return edit_distance(encode(a), encode(b))
