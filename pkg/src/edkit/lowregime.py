"""Windowed embedding for the low edit-distance regime, plus the transform
from high-probability embeddings to single-bit expected-distortion sketches.

Strings are chopped into a deterministic-given-the-randomness sequence of
windows: each next window starts at the hash-minimal sub-sub-window of a
randomly chosen sub-window in the current window's second half.  Close
strings therefore tend to get partitions whose parts line up edit for edit,
and an inner embedding applied per part inherits the small-distance behavior.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import DUMMY_BASE, CapacityError, Partition, StrLike, as_symbols, edit_distance
from .hashing import (
    MASK64,
    STREAM_INNER_BITS,
    STREAM_ALPHA_LETTER,
    STREAM_ALPHA_MASK,
    STREAM_REGIME_BASE,
    STREAM_REGIME_S,
    HashFamily,
    window_hashes,
)

_PAD = DUMMY_BASE + (1 << 30)


@dataclass(frozen=True)
class RegimeConfig:
    """Window geometry for distance budget K, freeness length D, confidence C."""

    K: int
    D: int
    C: int
    W2: int  # sub-sub-window size W''
    W1: int  # sub-window size W'
    W: int  # window size
    R: int  # 32*K*C

    @property
    def subwindows_per_half(self) -> int:
        return self.W // (2 * self.W1)


def choose_params(K: int, D: int, C: int) -> RegimeConfig:
    """W'' = D, W' = W'' + 32KC, W = W' * 32KC (and R = 32KC)."""
    if K < 1 or D < 1 or C < 1:
        raise ValueError("K, D, C must all be >= 1")
    r = 32 * K * C
    w2 = D
    w1 = w2 + r
    w = w1 * r
    return RegimeConfig(K, D, C, w2, w1, w, r)


@dataclass(frozen=True)
class RegimeRandomness:
    """Shared randomness: sub-window draws s_t and per-step hash streams h_t.

    Fully determined by (seed, cfg, capacity); two strings partitioned under
    the same object see identical window-selection randomness.
    """

    seed: int
    cfg: RegimeConfig
    capacity: int
    s: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if self.capacity < 1:
            raise ValueError("capacity must be >= 1")
        fam = HashFamily(self.seed)
        t_max = self.num_windows
        per_half = self.cfg.subwindows_per_half
        draws = tuple(
            1 + fam.hash(STREAM_REGIME_S, t) % per_half for t in range(1, t_max + 1)
        )
        object.__setattr__(self, "s", draws)

    @property
    def num_windows(self) -> int:
        return max(1, math.ceil(2 * self.capacity / self.cfg.W))

    def family(self) -> HashFamily:
        return HashFamily(self.seed)


def window_partition(w: StrLike, cfg: RegimeConfig, rnd: RegimeRandomness) -> Partition:
    """Partition of w into num_windows parts along the window sequence.

    The string is padded with 2W distinct dummy letters; parts run from each
    window's start to just before the next window's start with dummies
    excluded, so trailing parts may be empty.  Ties in the sub-sub-window
    min-hash break leftmost.
    """
    wa = as_symbols(w)
    n = len(wa)
    if n > rnd.capacity:
        raise CapacityError(f"string length {n} exceeds randomness capacity {rnd.capacity}")
    fam = rnd.family()
    W, W1, W2 = cfg.W, cfg.W1, cfg.W2
    dummies = DUMMY_BASE + np.arange(2 * W, dtype=np.int64)
    wd = np.concatenate([wa, dummies])
    t_max = rnd.num_windows
    starts = [0]
    for t in range(1, t_max):
        cur = starts[-1]
        if cur >= n:  # window consists entirely of dummy letters: repeat
            starts.append(cur)
            continue
        sub_start = cur + W // 2 + (rnd.s[t - 1] - 1) * W1
        sub = wd[sub_start : sub_start + W1]
        digests = window_hashes(sub, W2, fam)
        hv = fam.hash_array(STREAM_REGIME_BASE + t, digests)
        j = int(np.argmin(hv))
        starts.append(sub_start + j)
    cuts = [0] + [min(s, n) for s in starts[1:]] + [n]
    return Partition(wa, tuple(cuts))


@dataclass(frozen=True)
class InnerEmbedding:
    """Fixed-length inner embedding psi with its declared contract."""

    embed: Callable[[np.ndarray], np.ndarray]  # -> uint8 bit vector of output_len
    output_len: int
    scale: float  # T
    gamma: Callable[[int], float]
    max_len: int


def naive_inner(max_len: int, seed: int = 0, identity_bits: bool = False) -> InnerEmbedding:
    """Positional one-bit-per-letter stand-in for a real inner embedding.

    Pads to max_len with a reserved symbol and hashes each (position, letter)
    pair to one bit; with ``identity_bits`` the input must be binary and the
    bits are the letters themselves (pad maps to 0), which makes
    Ham >= ed exact for equal-length inputs.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    fam = HashFamily(seed)
    positions = np.arange(max_len, dtype=np.int64)

    def embed(u: np.ndarray) -> np.ndarray:
        u = as_symbols(u, allow_reserved=True)
        if len(u) > max_len:
            raise CapacityError(f"part length {len(u)} exceeds inner capacity {max_len}")
        padded = np.full(max_len, _PAD, dtype=np.int64)
        padded[: len(u)] = u
        if identity_bits:
            bits = np.where(padded == _PAD, 0, padded)
            if bits.max(initial=0) > 1 or bits.min(initial=0) < 0:
                raise ValueError("identity_bits requires a binary alphabet")
            return bits.astype(np.uint8)
        mixed = fam.combine(STREAM_INNER_BITS, positions, padded.astype(np.uint64))
        return (mixed & np.uint64(1)).astype(np.uint8)

    return InnerEmbedding(embed, max_len, 1.0, lambda l: float(l), max_len)


def primary_embed(w: StrLike, cfg: RegimeConfig, rnd: RegimeRandomness, psi: InnerEmbedding) -> np.ndarray:
    """Concatenated psi images of the window partition's parts.

    Output is a uint8 bit vector of fixed length output_len * num_windows,
    zero-padded, for every input of length up to the capacity.
    """
    part = window_partition(w, cfg, rnd)
    t_max = rnd.num_windows
    out = np.zeros(psi.output_len * t_max, dtype=np.uint8)
    for i in range(1, part.num_parts + 1):
        piece = part.part(i)
        out[(i - 1) * psi.output_len : i * psi.output_len] = psi.embed(piece)
    return out


def is_edit_preserving(x: StrLike, y: StrLike, cfg: RegimeConfig, rnd: RegimeRandomness) -> bool:
    """Whether the shared-randomness partitions split x and y edit for edit.

    Tests the observable consequence: the part-wise distances sum exactly to
    ed(x, y).  The sum can never undershoot it, so preservation is equality.
    """
    px = window_partition(x, cfg, rnd)
    py = window_partition(y, cfg, rnd)
    total = 0
    for i in range(1, px.num_parts + 1):
        a, b = px.part(i), py.part(i)
        if len(a) == len(b) and bool(np.array_equal(a, b)):
            continue
        total += edit_distance(a, b)
    return total == edit_distance(px.source, py.source)


def expectation_transform(
    embed_bits: Callable[[np.ndarray], np.ndarray],
    K: int,
    F_K: int,
    T: float,
    seed: int,
) -> Callable[[StrLike], int]:
    """Collapse an embedding to one bit with bounded expected distortion.

    Each output position of ``embed_bits`` is re-hashed to one bit (the null
    letter is pinned to 0, which keeps unequal letters differing with
    probability 1/2 while an all-zero embedding sketches to 0), a sparse
    random mask with per-position rate 1/(T*K*F_K) is drawn, and the sketch
    is the masked parity.  Everything is fixed by ``seed``, so the sketch is
    a deterministic function; the randomness lives across seeds.
    """
    if K < 1 or F_K < 1 or T < 1:
        raise ValueError("K, F_K must be >= 1 and T >= 1")
    fam = HashFamily(seed)
    threshold = int(1.0 / (T * K * F_K) * (1 << 64))

    def alpha(x: StrLike) -> int:
        w = np.asarray(embed_bits(as_symbols(x, allow_reserved=True)), dtype=np.int64)
        pos = np.arange(len(w), dtype=np.int64)
        bits = (fam.combine(STREAM_ALPHA_LETTER, pos, w.astype(np.uint64)) & np.uint64(1)).astype(np.int64)
        wprime = np.where(w == 0, 0, bits)
        mask_vals = fam.hash_array(STREAM_ALPHA_MASK, pos)
        r = mask_vals < np.uint64(min(threshold, MASK64))
        return int(np.bitwise_and(wprime, r.astype(np.int64)).sum() & 1)

    return alpha
