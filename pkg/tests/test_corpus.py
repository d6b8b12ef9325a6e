"""Corpus generators: determinism, planted-distance invariants, freeness."""

import numpy as np
import pytest

from edkit.core import apply_script, edit_distance
from edkit.corpus import (
    CorpusSpec,
    GenerationError,
    gen_corpus,
    has_distinct_grams_within,
    mixed_string,
    periodic_free_string,
    random_edits,
    random_permutation,
    random_string,
    single_insertion,
)
from edkit.hashing import HashFamily, seeded_rng
from edkit.periodic import is_periodic_free


class TestGenerators:
    def test_permutation_distinct(self):
        rng = np.random.default_rng(0)
        p = random_permutation(5, rng)
        assert sorted(p.tolist()) == [0, 1, 2, 3, 4]

    def test_zero_edits_identity(self):
        rng = np.random.default_rng(1)
        x = random_string(30, 4, rng)
        y, script = random_edits(x, 0, rng, 4)
        assert np.array_equal(x, y)
        assert len(script) == 0

    def test_edit_pairs_within_budget(self):
        fam = HashFamily(2)
        for t in range(200):
            rng = seeded_rng(fam, t)
            x = random_string(int(rng.integers(0, 50)), 4, rng)
            k = int(rng.integers(0, 10))
            y, script = random_edits(x, k, rng, 4)
            assert len(script) == k
            assert np.array_equal(apply_script(x, script), y)
            assert edit_distance(x, y) <= k

    def test_fresh_symbols_keep_permutations(self):
        fam = HashFamily(3)
        for t in range(100):
            rng = seeded_rng(fam, t)
            x = random_permutation(int(rng.integers(1, 40)), rng)
            y, _ = random_edits(x, int(rng.integers(0, 5)), rng, 0, fresh_symbols=True)
            assert len(np.unique(y)) == len(y)

    def test_single_insertion(self):
        rng = np.random.default_rng(4)
        x = random_string(20, 4, rng)
        y = single_insertion(x, rng)
        assert len(y) == len(x) + 1
        assert edit_distance(x, y) == 1

    def test_mixed_string_length_and_alphabet(self):
        rng = np.random.default_rng(5)
        w = mixed_string(500, rng, 16, 4)
        assert len(w) == 500
        assert w.max() < 16


class TestPeriodicFree:
    def test_strict_mode_checker_passes(self):
        rng = np.random.default_rng(6)
        w = periodic_free_string(200, 64, 10, 3, rng)
        assert is_periodic_free(w, 10, 3)

    def test_generalized_mode_for_r_above_d(self):
        rng = np.random.default_rng(7)
        w = periodic_free_string(2000, 64, 8, 64, rng)
        assert has_distinct_grams_within(w, 8, 64)

    def test_exhaustion_raises(self):
        rng = np.random.default_rng(8)
        with pytest.raises(GenerationError):
            periodic_free_string(50, 1, 4, 2, rng, max_attempts=20)

    def test_distinct_grams_checker_against_brute(self):
        rng = np.random.default_rng(9)
        for _ in range(200):
            n = int(rng.integers(0, 60))
            w = rng.integers(0, 3, size=n).tolist()
            g = int(rng.integers(1, 6))
            dist = int(rng.integers(1, 20))
            grams = [tuple(w[i : i + g]) for i in range(max(0, n - g + 1))]
            brute = all(
                grams[i] != grams[j]
                for i in range(len(grams))
                for j in range(i + 1, min(len(grams), i + dist + 1))
            )
            assert has_distinct_grams_within(w, g, dist) == brute


class TestGenCorpus:
    def test_kind_validation(self):
        with pytest.raises(ValueError):
            CorpusSpec("bogus", 5)

    def test_edited_pair_files(self, tmp_path):
        spec = CorpusSpec("edited_pair", n=40, alphabet_size=4, edits=3, seed=11)
        files = gen_corpus(spec, tmp_path)
        names = {f.name for f in files}
        assert names == {"pair_11_x.txt", "pair_11_y.txt", "pair_11_script.jsonl"}

    def test_deterministic_bytes(self, tmp_path):
        spec = CorpusSpec("edited_pair", n=40, alphabet_size=4, edits=3, seed=7)
        a = gen_corpus(spec, tmp_path / "a")
        b = gen_corpus(spec, tmp_path / "b")
        for fa, fb in zip(a, b):
            assert fa.read_bytes() == fb.read_bytes()

    def test_periodic_free_kind(self, tmp_path):
        spec = CorpusSpec("periodic_free", n=120, alphabet_size=64, D=10, R=3, seed=5)
        (path,) = gen_corpus(spec, tmp_path)
        w = [int(tok) for tok in path.read_text().split()]
        assert is_periodic_free(w, 10, 3)

    def test_permutation_kind(self, tmp_path):
        spec = CorpusSpec("random_permutation", n=9, seed=3)
        (path,) = gen_corpus(spec, tmp_path)
        w = [int(tok) for tok in path.read_text().split()]
        assert sorted(w) == list(range(9))
