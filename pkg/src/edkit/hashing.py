"""Seeded 64-bit hash streams, Merkle window hashing, sliding minima, and RMQ.

A :class:`HashFamily` is a deterministic function of its seed.  Independent
streams (indexed by an integer ``t``) stand in for the independent hash
functions the algorithms assume; 64-bit outputs make accidental collisions
negligible at the scales this library runs at.
"""

from __future__ import annotations

from collections import deque

import numpy as np

MASK64 = (1 << 64) - 1

_C1 = 0xFF51AFD7ED558CCD
_C2 = 0xC4CEB9FE1A85EC53
_GOLDEN = 0x9E3779B97F4A7C15

# Reserved stream ranges so different subsystems never share a stream.
STREAM_MERKLE_BASE = 1 << 40
STREAM_FANOUT = (1 << 41) + 1
STREAM_ULAM_PIVOT = (1 << 41) + 2
STREAM_DIMRED_SYMBOL = (1 << 41) + 3
STREAM_DIMRED_GRAM = (1 << 41) + 4
STREAM_ALPHA_LETTER = (1 << 41) + 5
STREAM_ALPHA_MASK = (1 << 41) + 6
STREAM_INNER_BITS = (1 << 41) + 7
STREAM_REGIME_S = (1 << 41) + 8
STREAM_REGIME_BASE = 1 << 42


def _mix(z: int) -> int:
    """64-bit finalizer (murmur3 style); a bijection on [0, 2^64)."""
    z &= MASK64
    z ^= z >> 33
    z = (z * _C1) & MASK64
    z ^= z >> 33
    z = (z * _C2) & MASK64
    z ^= z >> 33
    return z


def _mix_arr(z: np.ndarray) -> np.ndarray:
    """Vectorized counterpart of :func:`_mix`; operates on a copy."""
    z = z.astype(np.uint64, copy=True)
    z ^= z >> np.uint64(33)
    z *= np.uint64(_C1)
    z ^= z >> np.uint64(33)
    z *= np.uint64(_C2)
    z ^= z >> np.uint64(33)
    return z


class HashFamily:
    """Keyed 64-bit mixing function with independent derived streams.

    Same seed gives bit-identical outputs on all inputs.  Scalar and array
    evaluation paths agree exactly.
    """

    __slots__ = ("seed",)

    def __init__(self, seed: int):
        self.seed = seed & MASK64

    def __repr__(self) -> str:
        return f"HashFamily(seed={self.seed})"

    def stream_key(self, t: int) -> int:
        return _mix(self.seed + (t + 1) * _GOLDEN)

    def hash(self, t: int, value: int) -> int:
        """Hash a single nonnegative integer under stream ``t``."""
        key = self.stream_key(t)
        return _mix(_mix((value & MASK64) ^ key) + key)

    def hash_array(self, t: int, values) -> np.ndarray:
        """Vectorized :meth:`hash` over a sequence of nonnegative integers."""
        key = self.stream_key(t)
        z = np.asarray(values).astype(np.uint64)
        z = _mix_arr(z ^ np.uint64(key))
        z += np.uint64(key)
        return _mix_arr(z)

    def combine(self, t: int, a, b):
        """Order-sensitive combination of two digests under stream ``t``.

        Accepts scalars or equal-length arrays.
        """
        key = self.stream_key(t)
        if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
            za = _mix_arr(np.asarray(a, dtype=np.uint64) ^ np.uint64(key))
            zb = _mix_arr(np.asarray(b, dtype=np.uint64) + np.uint64(_GOLDEN))
            return _mix_arr((za * np.uint64(_C1)) ^ zb)
        za = _mix((a & MASK64) ^ key)
        zb = _mix((b + _GOLDEN) & MASK64)
        return _mix((za * _C1) ^ zb)

    def derive_seed(self, t: int) -> int:
        """Fan a master seed out into independent sub-seeds."""
        return self.hash(STREAM_FANOUT, t)


def family_new(seed: int) -> HashFamily:
    """Construct the deterministic hash family for ``seed``."""
    return HashFamily(seed)


def window_hashes(w, width: int, fam: HashFamily) -> np.ndarray:
    """Digest every ``width``-length window of ``w``.

    Entry ``k`` (0-based) digests the window starting at 1-based position
    ``k + 1``.  Digests depend only on window content, so equal windows always
    collide and unequal ones collide with probability ~2^-64.  Built level by
    level like a Merkle tree: power-of-two spans are hashed by combining their
    halves, and a non-power-of-two width is the combination of the two
    overlapping power-of-two windows that cover it.
    """
    w = np.asarray(w)
    n = len(w)
    if not 1 <= width <= n:
        raise ValueError(f"width must be in [1, {n}], got {width}")
    levels = ilog2(width)
    d = fam.hash_array(STREAM_MERKLE_BASE, w)
    for k in range(1, levels + 1):
        half = 1 << (k - 1)
        d = fam.combine(STREAM_MERKLE_BASE + k, d[:-half], d[half:])
    p = 1 << levels
    if width == p:
        return d
    # overlapping spans [i, i+p) and [i+width-p, i+width) cover the window
    off = width - p
    return fam.combine(STREAM_MERKLE_BASE + levels + 1, d[: n - width + 1], d[off : off + n - width + 1])


def ilog2(x: int) -> int:
    return x.bit_length() - 1


def sliding_unique_min(vals, radius: int) -> list[int]:
    """Centers whose value is the strict unique minimum of its window.

    Returns sorted 1-based indices ``i`` with ``radius < i <= len(vals) - radius``
    such that ``vals[i]`` is strictly smaller than every other value in
    ``vals[i-radius .. i+radius]``.  Linear time via a monotone deque that
    retains duplicates of the current minimum, so non-unique minima are
    detected and rejected.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    if isinstance(vals, np.ndarray):
        vals = vals.tolist()
    n = len(vals)
    out: list[int] = []
    if n <= 2 * radius:
        return out
    dq: deque[int] = deque()  # indices, values non-decreasing; equals kept
    width = 2 * radius + 1
    for e in range(n):
        ve = vals[e]
        while dq and vals[dq[-1]] > ve:
            dq.pop()
        dq.append(e)
        if e < width - 1:
            continue
        start = e - width + 1
        while dq[0] < start:
            dq.popleft()
        center = e - radius
        if dq[0] == center and (len(dq) == 1 or vals[dq[1]] != vals[center]):
            out.append(center + 1)
    return out


class RMQIndex:
    """Sparse-table range-minimum index; leftmost position wins ties."""

    __slots__ = ("vals", "_table")

    def __init__(self, vals):
        vals = np.asarray(vals)
        if len(vals) == 0:
            raise ValueError("cannot index an empty sequence")
        self.vals = vals
        n = len(vals)
        table = [np.arange(n, dtype=np.int64)]
        k = 1
        while (1 << k) <= n:
            half = 1 << (k - 1)
            prev = table[-1]
            a = prev[: n - (1 << k) + 1]
            b = prev[half : half + n - (1 << k) + 1]
            table.append(np.where(vals[a] <= vals[b], a, b))
            k += 1
        self._table = table

    def query(self, l: int, r: int) -> int:
        """0-based inclusive range; returns leftmost argmin position."""
        if not 0 <= l <= r < len(self.vals):
            raise ValueError(f"bad range [{l}, {r}] for length {len(self.vals)}")
        k = ilog2(r - l + 1)
        a = int(self._table[k][l])
        b = int(self._table[k][r - (1 << k) + 1])
        va, vb = self.vals[a], self.vals[b]
        if va < vb:
            return a
        if vb < va:
            return b
        return min(a, b)


def rmq_build(vals) -> RMQIndex:
    return RMQIndex(vals)


def rmq_query(idx: RMQIndex, l: int, r: int) -> int:
    """1-based inclusive query returning the 1-based leftmost argmin."""
    return idx.query(l - 1, r - 1) + 1


def seeded_rng(fam: HashFamily, t: int) -> np.random.Generator:
    """Deterministic numpy generator for sub-stream ``t`` of a family."""
    return np.random.Generator(np.random.PCG64(fam.derive_seed(t)))


def digest_hex(d: int | np.uint64) -> str:
    """Render a digest as the 16-hex-digit debug form."""
    return f"{int(d):016x}"
