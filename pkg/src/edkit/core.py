"""Strings, edit scripts, partitions, and the exact edit-distance oracle.

Symbols are nonnegative integer codes below 2^32; codes at or above 2^31 are
reserved for internally generated dummy letters and never appear in user
input.  Script positions are 1-based against the evolving string, so a script
replays deterministically left to right.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from . import _kernels

MAX_LEN = 1 << 20
DUMMY_BASE = 1 << 31
MAX_SYMBOL = 1 << 32

# Full-table DP is used below this cell count; larger exact distances go
# through doubling banded passes (same value, linear memory).
_DP_CELL_LIMIT = 1 << 23

StrLike = Union[str, bytes, Sequence[int], np.ndarray]

INSERT = "I"
DELETE = "D"
SUBSTITUTE = "S"


class CapacityError(ValueError):
    """Input exceeds the configured length limit."""


class InvalidScriptError(ValueError):
    """An edit operation's position is invalid for the evolving string."""


def as_symbols(x: StrLike, allow_reserved: bool = False) -> np.ndarray:
    """Normalize a string-like input to a contiguous int64 code array."""
    if isinstance(x, np.ndarray):
        arr = np.ascontiguousarray(x, dtype=np.int64)
    elif isinstance(x, str):
        arr = np.fromiter((ord(c) for c in x), dtype=np.int64, count=len(x))
    elif isinstance(x, (bytes, bytearray)):
        arr = np.frombuffer(bytes(x), dtype=np.uint8).astype(np.int64)
    else:
        arr = np.asarray(list(x), dtype=np.int64)
    if len(arr) > MAX_LEN:
        raise CapacityError(f"length {len(arr)} exceeds maximum {MAX_LEN}")
    if len(arr):
        lo, hi = int(arr.min()), int(arr.max())
        if lo < 0 or hi >= MAX_SYMBOL:
            raise ValueError("symbol codes must lie in [0, 2^32)")
        if not allow_reserved and hi >= DUMMY_BASE:
            raise ValueError("codes >= 2^31 are reserved for dummy letters")
    return arr


@dataclass(frozen=True)
class EditOp:
    op: str  # one of "I", "D", "S"
    pos: int  # 1-based position in the evolving string
    sym: int | None = None  # absent for deletions

    def to_json(self) -> str:
        d = {"op": self.op, "pos": self.pos}
        if self.op != DELETE:
            d["sym"] = self.sym
        return json.dumps(d, separators=(",", ":"))


@dataclass(frozen=True)
class EditScript:
    ops: tuple[EditOp, ...]

    def __len__(self) -> int:
        return len(self.ops)

    def to_jsonl(self) -> str:
        return "\n".join(op.to_json() for op in self.ops)

    @staticmethod
    def from_jsonl(text: str) -> "EditScript":
        ops = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            d = json.loads(line)
            ops.append(EditOp(d["op"], d["pos"], d.get("sym")))
        return EditScript(tuple(ops))


def apply_script(x: StrLike, script: EditScript) -> np.ndarray:
    """Apply ``script`` left to right; raises on any out-of-range position."""
    cur = list(as_symbols(x, allow_reserved=True))
    for k, op in enumerate(script.ops):
        n = len(cur)
        if op.op == INSERT:
            if not 1 <= op.pos <= n + 1:
                raise InvalidScriptError(f"op {k}: insert position {op.pos} not in [1, {n + 1}]")
            cur.insert(op.pos - 1, int(op.sym))
        elif op.op == DELETE:
            if not 1 <= op.pos <= n:
                raise InvalidScriptError(f"op {k}: delete position {op.pos} not in [1, {n}]")
            del cur[op.pos - 1]
        elif op.op == SUBSTITUTE:
            if not 1 <= op.pos <= n:
                raise InvalidScriptError(f"op {k}: substitute position {op.pos} not in [1, {n}]")
            cur[op.pos - 1] = int(op.sym)
        else:
            raise InvalidScriptError(f"op {k}: unknown kind {op.op!r}")
    return np.asarray(cur, dtype=np.int64)


def expand_substitutions(script: EditScript) -> EditScript:
    """Rewrite each substitution as a deletion followed by an insertion."""
    ops: list[EditOp] = []
    for op in script.ops:
        if op.op == SUBSTITUTE:
            ops.append(EditOp(DELETE, op.pos))
            ops.append(EditOp(INSERT, op.pos, op.sym))
        else:
            ops.append(op)
    return EditScript(tuple(ops))


def edit_distance(x: StrLike, y: StrLike) -> int:
    """Exact unit-cost edit distance (insert / delete / substitute)."""
    xa = as_symbols(x, allow_reserved=True)
    ya = as_symbols(y, allow_reserved=True)
    if len(xa) == 0 or len(ya) == 0:
        return max(len(xa), len(ya))
    if len(xa) * len(ya) <= _DP_CELL_LIMIT:
        return int(_kernels.dp_last_row(xa, ya)[-1])
    k = max(1, abs(len(xa) - len(ya)))
    while True:
        d = int(_kernels.band_distance(xa, ya, k))
        if d >= 0:
            return d
        k *= 2


def banded_distance(x: StrLike, y: StrLike, k: int) -> int | None:
    """Edit distance when it is <= k, else None (width-(2k+1) band)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    xa = as_symbols(x, allow_reserved=True)
    ya = as_symbols(y, allow_reserved=True)
    if len(xa) == 0 or len(ya) == 0:
        d = max(len(xa), len(ya))
        return d if d <= k else None
    if k == 0:
        return 0 if len(xa) == len(ya) and bool(np.array_equal(xa, ya)) else None
    d = int(_kernels.band_distance(xa, ya, k))
    return d if d >= 0 else None


def optimal_alignment(x: StrLike, y: StrLike) -> EditScript:
    """A minimum-length script transforming x into y.

    Ops are emitted right to left, so every recorded position stays valid
    while the script replays left to right.  Backtracking prefers matches,
    then substitutions, then deletions, then insertions.
    """
    xa = as_symbols(x, allow_reserved=True)
    ya = as_symbols(y, allow_reserved=True)
    if len(xa) * len(ya) > _DP_CELL_LIMIT:
        raise CapacityError("alignment table would exceed the memory budget")
    d = _kernels.dp_matrix(xa, ya)
    ops: list[EditOp] = []
    i, j = len(xa), len(ya)
    while i > 0 or j > 0:
        if i > 0 and j > 0:
            step = d[i - 1, j - 1] + (0 if xa[i - 1] == ya[j - 1] else 1)
            if d[i, j] == step:
                if xa[i - 1] != ya[j - 1]:
                    ops.append(EditOp(SUBSTITUTE, i, int(ya[j - 1])))
                i -= 1
                j -= 1
                continue
        if i > 0 and d[i, j] == d[i - 1, j] + 1:
            ops.append(EditOp(DELETE, i))
            i -= 1
            continue
        ops.append(EditOp(INSERT, i + 1, int(ya[j - 1])))
        j -= 1
    return EditScript(tuple(ops))


@dataclass(frozen=True)
class Partition:
    """Monotone cut tuple (p_0 .. p_m) over a source string."""

    source: np.ndarray
    cuts: tuple[int, ...]

    def __post_init__(self):
        c = self.cuts
        if not c or c[0] != 0 or c[-1] != len(self.source):
            raise ValueError("cuts must start at 0 and end at len(source)")
        if any(a > b for a, b in zip(c, c[1:])):
            raise ValueError("cuts must be non-decreasing")

    @property
    def num_parts(self) -> int:
        return len(self.cuts) - 1

    def part(self, i: int) -> np.ndarray:
        """1-based part i, the subword source[cuts[i-1]+1 : cuts[i]]."""
        return self.source[self.cuts[i - 1] : self.cuts[i]]

    def parts(self) -> list[np.ndarray]:
        return [self.part(i) for i in range(1, self.num_parts + 1)]


def equipartition(u: StrLike, m: int) -> Partition:
    """Split into m parts of size floor(|u|/m) or ceil(|u|/m), larger first."""
    if m < 1:
        raise ValueError("m must be >= 1")
    ua = as_symbols(u, allow_reserved=True)
    n = len(ua)
    small, large = divmod(n, m)
    cuts = [0]
    for i in range(m):
        cuts.append(cuts[-1] + (small + 1 if i < large else small))
    return Partition(ua, tuple(cuts))


def partition_distance(p: Partition, q: Partition) -> int:
    """Sum of per-part edit distances; parts are matched by index."""
    if p.num_parts != q.num_parts:
        raise ValueError(f"part counts differ: {p.num_parts} vs {q.num_parts}")
    total = 0
    for i in range(1, p.num_parts + 1):
        a, b = p.part(i), q.part(i)
        if len(a) == len(b) and bool(np.array_equal(a, b)):
            continue
        total += edit_distance(a, b)
    return total


def format_symbols(arr: np.ndarray) -> str:
    """Render as text when all codes are printable, else as integer codes."""
    if len(arr) and int(arr.max()) < 0x110000 and int(arr.min()) >= 32:
        return "".join(chr(int(c)) for c in arr)
    return " ".join(str(int(c)) for c in arr)


def parse_symbols(text: str, codes: bool = False) -> np.ndarray:
    """Inverse of :func:`format_symbols`; ``codes`` forces integer parsing."""
    text = text.rstrip("\n")
    if codes:
        return as_symbols([int(tok) for tok in text.split()])
    return as_symbols(text)
