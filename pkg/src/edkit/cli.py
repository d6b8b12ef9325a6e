"""``ed`` command line: distances, alignment, embeddings, corpora, benchmarks.

Input files hold either UTF-8 text (one symbol per character) or, with
--codes, whitespace-separated integer symbol codes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import dimred, lowregime, periodic, ulam
from .align import BandedEstimator, ExactEstimator, align
from .core import banded_distance, edit_distance, parse_symbols
from .corpus import CorpusSpec, gen_corpus
from .experiments import EXPERIMENTS, run_experiment, write_result
from .hashing import HashFamily, digest_hex, window_hashes


def _read(path: str, codes: bool) -> np.ndarray:
    return parse_symbols(Path(path).read_text(), codes=codes)


def _add_io_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--codes", action="store_true", help="parse inputs as whitespace-separated integer codes")
    p.add_argument("--seed", type=int, default=0, help="64-bit master seed")
    p.add_argument("--out", type=str, default=None, help="output file or directory")
    p.add_argument("--format", choices=["csv", "json"], default="csv",
                   help="trial output format (consumed by bench and preserve-test)")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") or not text else text + "\n")
    else:
        print(text)


def _cmd_dist(args) -> int:
    x = _read(args.fileA, args.codes)
    y = _read(args.fileB, args.codes)
    if args.banded is not None:
        d = banded_distance(x, y, args.banded)
        _emit("EXCEEDS" if d is None else str(d), args.out)
    else:
        _emit(str(edit_distance(x, y)), args.out)
    return 0


def _make_estimator(name: str):
    if name == "exact":
        return ExactEstimator()
    if name.startswith("banded:"):
        return BandedEstimator(int(name.split(":", 1)[1]))
    raise SystemExit(f"unknown estimator {name!r}; use exact or banded:K")


def _cmd_align(args) -> int:
    x = _read(args.fileA, args.codes)
    y = _read(args.fileB, args.codes)
    est = _make_estimator(args.estimator)
    rep = align(x, y, args.m, est, granularity_exponent=args.granularity)
    lines = [op.to_json() for op in rep.script.ops]
    lines.append(json.dumps({"levels": rep.levels, "calls": rep.estimator_calls, "cost": len(rep.script)}))
    _emit("\n".join(lines), args.out)
    return 0


def _cmd_ulam(args) -> int:
    if args.action == "embed":
        w = _read(args.fileA, args.codes)
        emb = ulam.ulam_embed(w, args.eps, args.seed, m=args.m)
        _emit(emb.to_json(), args.out)
        return 0
    a = ulam.SparseEmbedding.from_json(Path(args.fileA).read_text())
    b = ulam.SparseEmbedding.from_json(Path(args.fileB).read_text())
    if args.action == "ham":
        _emit(str(ulam.hamming(a, b)), args.out)
    else:
        _emit(ulam.decode_alignment(a, b).to_jsonl(), args.out)
    return 0


def _cmd_periodic(args) -> int:
    w = _read(args.fileA, args.codes)
    spans = periodic.maximal_periodic_substrings(w, args.c)
    _emit("\n".join(f"{s.start}\t{s.end}\t{s.period}" for s in spans), args.out)
    return 0


def _cmd_lowregime(args) -> int:
    if args.action == "preserve-test":
        result = run_experiment(
            "lowregime-preserve",
            {"trials": args.trials, "K": args.K, "D": args.D, "C": args.C, "seed": args.seed},
        )
        out = args.out or "."
        for path in write_result(result, out, args.format):
            print(path)
        return 0 if result.passed else 1
    w = _read(args.fileA, args.codes)
    cfg = lowregime.choose_params(args.K, args.D, args.C)
    capacity = args.capacity or max(len(w), 1)
    rnd = lowregime.RegimeRandomness(args.seed, cfg, capacity)
    psi = lowregime.naive_inner(cfg.W, seed=args.seed)
    bits = lowregime.primary_embed(w, cfg, rnd, psi)
    packed = np.packbits(bits)
    _emit(packed.tobytes().hex(), args.out)
    return 0


def _cmd_dimred(args) -> int:
    if args.action == "dist":
        da = _read_blocks(args.fileA)
        db = _read_blocks(args.fileB)
        _emit(str(edit_distance(da, db)), args.out)
        return 0
    w = _read(args.fileA, args.codes)
    bs = dimred.dimred_perm(w, args.c, args.seed) if args.perm else dimred.dimred_general(w, args.c, args.seed)
    fam = HashFamily(args.seed)
    lines = []
    for off, blk in zip(bs.source_offsets, bs.blocks):
        # whole-block digest: order-sensitive, equal iff block content equal
        digest = int(window_hashes(np.asarray(blk, dtype=np.int64), len(blk), fam)[0])
        lines.append(f"{off}\t{len(blk)}\t{digest_hex(digest)}")
    _emit("\n".join(lines), args.out)
    return 0


def _read_blocks(path: str) -> np.ndarray:
    """Block TSV -> sequence of content ids (equal hash = equal letter)."""
    ids: dict[str, int] = {}
    seq = []
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        _, _, digest = line.split("\t")
        seq.append(ids.setdefault(digest, len(ids)))
    return np.asarray(seq, dtype=np.int64)


def _cmd_gen(args) -> int:
    spec = CorpusSpec(
        kind=args.kind,
        n=args.n,
        alphabet_size=args.alphabet,
        edits=args.edits,
        D=args.D,
        R=args.R,
        seed=args.seed,
    )
    for path in gen_corpus(spec, args.out or "."):
        print(path)
    return 0


def _cmd_bench(args) -> int:
    config = {"seed": args.seed}
    if args.trials is not None:
        config["trials"] = args.trials
    result = run_experiment(args.experiment, config)
    for path in write_result(result, args.out or ".", args.format):
        print(path)
    verdicts = result.summary["verdicts"]
    for name, ok in verdicts.items():
        print(f"{'PASS' if ok else 'FAIL'} {result.name}:{name}")
    return 0 if result.passed else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ed", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("dist", help="exact or banded edit distance between two files")
    p.add_argument("fileA")
    p.add_argument("fileB")
    p.add_argument("--banded", type=int, default=None, metavar="K")
    _add_io_flags(p)
    p.set_defaults(fn=_cmd_dist)

    p = sub.add_parser("align", help="black-box approximate alignment")
    p.add_argument("fileA")
    p.add_argument("fileB")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--estimator", default="exact", help="exact or banded:K")
    p.add_argument("--granularity", type=int, default=1)
    _add_io_flags(p)
    p.set_defaults(fn=_cmd_align)

    p = sub.add_parser("ulam", help="permutation alignment embedding")
    p.add_argument("action", choices=["embed", "ham", "decode"])
    p.add_argument("fileA")
    p.add_argument("fileB", nargs="?")
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--m", type=int, default=None)
    _add_io_flags(p)
    p.set_defaults(fn=_cmd_ulam)

    p = sub.add_parser("periodic", help="maximally periodic substring scan")
    p.add_argument("action", choices=["scan"])
    p.add_argument("fileA")
    p.add_argument("--c", type=int, required=True)
    _add_io_flags(p)
    p.set_defaults(fn=_cmd_periodic)

    p = sub.add_parser("lowregime", help="windowed low-distance embedding")
    p.add_argument("action", choices=["embed", "preserve-test"])
    p.add_argument("fileA", nargs="?")
    p.add_argument("--K", type=int, default=1)
    p.add_argument("--D", type=int, default=8)
    p.add_argument("--C", type=int, default=1)
    p.add_argument("--capacity", type=int, default=None)
    p.add_argument("--trials", type=int, default=20)
    _add_io_flags(p)
    p.set_defaults(fn=_cmd_lowregime)

    p = sub.add_parser("dimred", help="dimension-reduction block map")
    p.add_argument("action", nargs="?", default="map", choices=["map", "dist"],
                   help="dist compares .blocks files produced with the same --seed")
    p.add_argument("fileA")
    p.add_argument("fileB", nargs="?")
    p.add_argument("--c", type=int, default=8)
    p.add_argument("--perm", action="store_true")
    _add_io_flags(p)
    p.set_defaults(fn=_cmd_dimred)

    p = sub.add_parser("gen", help="generate corpus files")
    p.add_argument("--kind", required=True,
                   choices=["random_string", "random_permutation", "edited_pair", "periodic_free"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--edits", type=int, default=0)
    p.add_argument("--D", type=int, default=0)
    p.add_argument("--R", type=int, default=0)
    _add_io_flags(p)
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("bench", help="run a named experiment with verdicts")
    p.add_argument("--experiment", required=True, choices=sorted(EXPERIMENTS))
    p.add_argument("--trials", type=int, default=None)
    _add_io_flags(p)
    p.set_defaults(fn=_cmd_bench)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"ed: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
