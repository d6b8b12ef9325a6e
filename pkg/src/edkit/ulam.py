"""Alignment embedding of permutations into sparse Hamming space.

A permutation is spread across an array of size 2^m - 1 by recursive
min-hash pivoting: the hash-minimal letter near the middle lands at the
array's center and the two sides recurse into the two halves.  Hamming
differences between two embeddings then read off an edit script, so the
Hamming distance can never undershoot the edit distance.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import DELETE, INSERT, SUBSTITUTE, EditOp, EditScript, StrLike, as_symbols
from .hashing import STREAM_ULAM_PIVOT, HashFamily, RMQIndex


class InsufficientDimensionError(ValueError):
    """The target array is too small for the recursion depth m allows."""


@dataclass(frozen=True)
class SparseEmbedding:
    """Run-length view of an array of size 2^m - 1; zeros are implicit.

    ``runs`` holds (start_index, symbols) pairs with 1-based start indices,
    sorted and non-adjacent.  Reading all symbols in index order recovers the
    embedded permutation.
    """

    dimension: int
    eps: float
    m: int
    seed: int
    runs: tuple[tuple[int, tuple[int, ...]], ...]

    def nonzeros(self) -> tuple[np.ndarray, np.ndarray]:
        """Sorted 1-based indices and their symbols."""
        idx: list[int] = []
        val: list[int] = []
        for start, syms in self.runs:
            idx.extend(range(start, start + len(syms)))
            val.extend(syms)
        return np.asarray(idx, dtype=np.int64), np.asarray(val, dtype=np.int64)

    @property
    def num_nonzeros(self) -> int:
        return sum(len(syms) for _, syms in self.runs)

    def to_json(self) -> str:
        return json.dumps(
            {
                "dim": self.dimension,
                "eps": self.eps,
                "m": self.m,
                "seed": self.seed,
                "runs": [[start, list(syms)] for start, syms in self.runs],
            }
        )

    @staticmethod
    def from_json(text: str) -> "SparseEmbedding":
        d = json.loads(text)
        runs = tuple((int(start), tuple(int(s) for s in syms)) for start, syms in d["runs"])
        return SparseEmbedding(int(d["dim"]), float(d["eps"]), int(d["m"]), int(d["seed"]), runs)


def default_m(n: int, eps: float) -> int:
    """Smallest recursion budget certain to fit a length-n permutation."""
    if n <= 1:
        return 1
    return math.ceil(math.log(1.0 / n) / math.log(0.5 + eps) + 1)


def ulam_embed(w: StrLike, eps: float, seed: int, m: int | None = None) -> SparseEmbedding:
    """Embed a permutation into a sparse array of dimension 2^m - 1.

    The pivot of a subword of length k is its hash-minimal letter among
    positions ceil(k/2 - eps*k) .. floor(k/2 + eps*k) (clamped, leftmost on a
    tie); it lands at the center of the current array block and the two sides
    recurse into the two halves.  Runs in linear time via a range-minimum
    index over the letter hashes.
    """
    if not 0 < eps <= 0.25:
        raise ValueError("eps must satisfy 0 < eps <= 1/4")
    wa = as_symbols(w)
    n = len(wa)
    if n and len(np.unique(wa)) != n:
        raise ValueError("input is not a permutation: duplicate symbols")
    needed = default_m(n, eps)
    if m is None:
        m = needed
    elif m < needed:
        raise InsufficientDimensionError(f"m={m} below required {needed} for n={n}")
    fam = HashFamily(seed)
    runs: tuple[tuple[int, tuple[int, ...]], ...] = ()
    if n:
        hashes = fam.hash_array(STREAM_ULAM_PIVOT, wa)
        rmq = RMQIndex(hashes)
        idx, sym = _place(wa, rmq, eps, m)
        runs = _to_runs(idx, sym)
    return SparseEmbedding((1 << m) - 1, eps, m, seed, runs)


def _pivot(rmq: RMQIndex, lo: int, hi: int, eps: float) -> int:
    """0-based pivot position of the subword w[lo..hi] inclusive."""
    k = hi - lo + 1
    r_lo = max(1, math.ceil(k / 2 - eps * k))
    r_hi = min(k, math.floor(k / 2 + eps * k))
    mid = (k + 1) // 2  # the window always contains ceil(k/2)
    r_lo = min(r_lo, mid)
    r_hi = max(r_hi, mid)
    return rmq.query(lo + r_lo - 1, lo + r_hi - 1)


def _place(wa: np.ndarray, rmq: RMQIndex, eps: float, m: int):
    """In-order placement; emits ascending (array index, symbol) pairs."""
    n = len(wa)
    out_idx = np.empty(n, dtype=np.int64)
    out_sym = np.empty(n, dtype=np.int64)
    k = 0
    work: list[tuple] = [(0, n - 1, 1, (1 << m) - 1)]
    while work:
        item = work.pop()
        if len(item) == 2:
            out_idx[k], out_sym[k] = item
            k += 1
            continue
        lo, hi, alo, ahi = item
        if lo > hi:
            continue
        if alo > ahi:
            raise InsufficientDimensionError("array block exhausted before all letters placed")
        piv = _pivot(rmq, lo, hi, eps)
        ac = (alo + ahi) // 2
        work.append((piv + 1, hi, ac + 1, ahi))
        work.append((ac, int(wa[piv])))
        work.append((lo, piv - 1, alo, ac - 1))
    return out_idx, out_sym


def _to_runs(idx: np.ndarray, sym: np.ndarray):
    if len(idx) == 0:
        return ()
    breaks = np.flatnonzero(np.diff(idx) != 1) + 1
    starts = np.concatenate(([0], breaks))
    ends = np.concatenate((breaks, [len(idx)]))
    return tuple((int(idx[s]), tuple(int(v) for v in sym[s:e])) for s, e in zip(starts, ends))


def hamming(a: SparseEmbedding, b: SparseEmbedding) -> int:
    """Number of array positions where the two embeddings differ."""
    if a.dimension != b.dimension:
        raise ValueError(f"dimension mismatch: {a.dimension} vs {b.dimension}")
    ia, va = a.nonzeros()
    ib, vb = b.nonzeros()
    return int(_kernels.hamming_of_runs(ia, va, ib, vb))


def decode_alignment(a: SparseEmbedding, b: SparseEmbedding) -> EditScript:
    """Edit script from a's permutation to b's, one op per differing index.

    Walks the nonzeros right to left so emitted positions stay valid during
    left-to-right replay; a deletion precedes an insertion falling at the
    same string position.
    """
    if a.dimension != b.dimension:
        raise ValueError(f"dimension mismatch: {a.dimension} vs {b.dimension}")
    if (a.eps, a.m, a.seed) != (b.eps, b.m, b.seed):
        raise ValueError("embeddings were not built with the same (eps, m, seed)")
    ia, va = a.nonzeros()
    ib, vb = b.nonzeros()
    ops: list[EditOp] = []
    i, j = len(ia) - 1, len(ib) - 1
    while i >= 0 or j >= 0:
        if j < 0 or (i >= 0 and ia[i] > ib[j]):
            ops.append(EditOp(DELETE, i + 1))
            i -= 1
        elif i < 0 or ib[j] > ia[i]:
            ops.append(EditOp(INSERT, i + 2, int(vb[j])))
            j -= 1
        else:
            if va[i] != vb[j]:
                ops.append(EditOp(SUBSTITUTE, i + 1, int(vb[j])))
            i -= 1
            j -= 1
    return EditScript(tuple(ops))
