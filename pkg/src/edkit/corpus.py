"""Deterministic corpus generation for tests, experiments, and the CLI.

One master seed fans out into sub-seeds through the hash family, so a single
integer reproduces every string, pair, and planted edit script.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import (
    DELETE,
    INSERT,
    SUBSTITUTE,
    EditOp,
    EditScript,
    apply_script,
    as_symbols,
)
from .hashing import HashFamily, seeded_rng, window_hashes
from .periodic import is_periodic_free


class GenerationError(RuntimeError):
    """Rejection sampling failed to produce a conforming string."""


@dataclass(frozen=True)
class CorpusSpec:
    kind: str  # random_string | random_permutation | edited_pair | periodic_free
    n: int
    alphabet_size: int = 2
    edits: int = 0
    D: int = 0
    R: int = 0
    seed: int = 0

    _KINDS = ("random_string", "random_permutation", "edited_pair", "periodic_free")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"kind must be one of {self._KINDS}")
        if self.n < 0:
            raise ValueError("n must be >= 0")


def random_string(n: int, alphabet_size: int, rng: np.random.Generator) -> np.ndarray:
    if alphabet_size < 1:
        raise ValueError("alphabet_size must be >= 1")
    return rng.integers(0, alphabet_size, size=n).astype(np.int64)


def random_permutation(n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.permutation(n).astype(np.int64)


def random_edits(
    x: np.ndarray,
    k: int,
    rng: np.random.Generator,
    alphabet_size: int,
    fresh_symbols: bool = False,
) -> tuple[np.ndarray, EditScript]:
    """Apply k random edits to x; returns (y, script), so ed(x, y) <= k.

    ``fresh_symbols`` draws inserted/substituted symbols from outside the
    current string, keeping permutations permutations.
    """
    cur = list(int(v) for v in x)
    ops: list[EditOp] = []
    next_fresh = (max(cur) + 1) if cur else 0

    def draw_symbol() -> int:
        nonlocal next_fresh
        if fresh_symbols:
            next_fresh += 1
            return next_fresh - 1
        return int(rng.integers(0, alphabet_size))

    for _ in range(k):
        kind = int(rng.integers(0, 3))
        if len(cur) == 0:
            kind = 1  # nothing to delete or substitute in an empty string
        if kind == 1:
            pos = int(rng.integers(1, len(cur) + 2))
            sym = draw_symbol()
            cur.insert(pos - 1, sym)
            ops.append(EditOp(INSERT, pos, sym))
        elif kind == 0:
            pos = int(rng.integers(1, len(cur) + 1))
            del cur[pos - 1]
            ops.append(EditOp(DELETE, pos))
        else:
            pos = int(rng.integers(1, len(cur) + 1))
            sym = draw_symbol()
            cur[pos - 1] = sym
            ops.append(EditOp(SUBSTITUTE, pos, sym))
    return np.asarray(cur, dtype=np.int64), EditScript(tuple(ops))


def single_insertion(x: np.ndarray, rng: np.random.Generator, sym: int | None = None) -> np.ndarray:
    """x with one random symbol inserted at a random position."""
    pos = int(rng.integers(0, len(x) + 1))
    if sym is None:
        sym = int(x.max(initial=-1)) + 1
    return np.insert(x, pos, sym)


def has_distinct_grams_within(w, gram_len: int, distance: int, fam: HashFamily | None = None) -> bool:
    """No two equal ``gram_len``-grams start within ``distance`` of each other.

    This is the operational freeness the windowed embedding needs (distinct
    sub-sub-windows inside every sub-window); for distance <= gram_len it is
    implied by strict (D, R)-periodic freeness.  Equal grams always collide
    under the content digest, so digest grouping is a sound check.
    """
    wa = as_symbols(w, allow_reserved=True)
    if len(wa) < gram_len:
        return True
    fam = fam or HashFamily(0)
    digests = window_hashes(wa, gram_len, fam)
    groups: dict[int, int] = {}  # digest -> last position seen
    for i, dg in enumerate(digests.tolist()):
        prev = groups.get(dg)
        if prev is not None and i - prev <= distance:
            return False
        groups[dg] = i
    return True


def periodic_free_string(
    n: int,
    alphabet_size: int,
    d_len: int,
    r: int,
    rng: np.random.Generator,
    max_attempts: int = 10_000,
) -> np.ndarray:
    """Rejection-sample a string passing the freeness checker.

    For r <= d_len this is the strict (D, R)-periodic-free check; for r >
    d_len (where strict freeness is unsatisfiable because every length-D
    window is trivially D-periodic) the generalized distinct-grams-within-r
    check is used instead.
    """
    for attempt in range(max_attempts):
        w = random_string(n, alphabet_size, rng)
        if r <= d_len:
            ok = is_periodic_free(w, d_len, r)
        else:
            ok = has_distinct_grams_within(w, d_len, r)
        if ok:
            return w
    raise GenerationError(
        f"no ({d_len}, {r})-free string of length {n} over alphabet {alphabet_size} "
        f"after {max_attempts} attempts"
    )


def gen_corpus(spec: CorpusSpec, out_dir: str | Path) -> list[Path]:
    """Materialize one corpus item; deterministic in spec.seed."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    fam = HashFamily(spec.seed)
    rng = seeded_rng(fam, 0)
    written: list[Path] = []

    def emit(name: str, arr: np.ndarray) -> None:
        path = out / name
        path.write_text(" ".join(str(int(v)) for v in arr) + "\n")
        written.append(path)

    if spec.kind == "random_string":
        emit(f"random_string_{spec.seed}.txt", random_string(spec.n, spec.alphabet_size, rng))
    elif spec.kind == "random_permutation":
        emit(f"random_permutation_{spec.seed}.txt", random_permutation(spec.n, rng))
    elif spec.kind == "edited_pair":
        x = random_string(spec.n, spec.alphabet_size, rng)
        y, script = random_edits(x, spec.edits, rng, spec.alphabet_size)
        emit(f"pair_{spec.seed}_x.txt", x)
        emit(f"pair_{spec.seed}_y.txt", y)
        spath = out / f"pair_{spec.seed}_script.jsonl"
        spath.write_text(script.to_jsonl() + ("\n" if len(script) else ""))
        written.append(spath)
        assert np.array_equal(apply_script(x, script), y)
    else:  # periodic_free
        w = periodic_free_string(spec.n, spec.alphabet_size, spec.D, spec.R, rng)
        emit(f"periodic_free_{spec.seed}.txt", w)
    return written


def mixed_string(n: int, rng: np.random.Generator, alphabet_size: int = 64, c: int = 8) -> np.ndarray:
    """Random string interleaving plain runs with planted periodic runs."""
    parts = []
    total = 0
    while total < n:
        if rng.random() < 0.4:
            p = int(rng.integers(1, c + 1))
            gram = rng.integers(0, alphabet_size, size=p)
            reps = int(rng.integers(8 * c // p + 1, 16 * c // p + 2))
            seg = np.tile(gram, reps)
        else:
            seg = rng.integers(0, alphabet_size, size=int(rng.integers(c, 6 * c)))
        parts.append(seg)
        total += len(seg)
    return np.concatenate(parts)[:n].astype(np.int64)
