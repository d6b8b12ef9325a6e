"""sklearn transformer wrappers: params, cloning, shapes, validation."""

import numpy as np
import pytest
from sklearn.base import clone

from edkit.core import edit_distance
from edkit.estimators import (
    LowRegimeEmbedding,
    PermutationDimReduction,
    StringDimReduction,
    UlamEmbedding,
    check_sequences,
)
from edkit.ulam import hamming


class TestCheckSequences:
    def test_converts_and_validates(self):
        out = check_sequences(["ab", [1, 2, 3]])
        assert [len(a) for a in out] == [2, 3]
        with pytest.raises(ValueError):
            check_sequences("not-a-list-of-sequences-itself")
        with pytest.raises(ValueError):
            check_sequences([[1, 1, 2]], require_permutation=True)


class TestUlamEmbedding:
    def test_params_round_trip_and_clone(self):
        est = UlamEmbedding(eps=0.2, seed=5)
        assert est.get_params() == {"eps": 0.2, "m": None, "seed": 5}
        est2 = clone(est).set_params(seed=6)
        assert est2.seed == 6 and est2.eps == 0.2

    def test_fit_transform_comparable_outputs(self):
        rng = np.random.default_rng(0)
        X = [rng.permutation(40), rng.permutation(37), rng.permutation(40)]
        est = UlamEmbedding(seed=3).fit(X)
        embs = est.transform(X)
        assert len({e.dimension for e in embs}) == 1
        assert hamming(embs[0], embs[1]) >= edit_distance(X[0], X[1])

    def test_transform_before_fit_raises(self):
        with pytest.raises(RuntimeError):
            UlamEmbedding().transform([[1, 2]])

    def test_fit_does_not_mutate_params(self):
        est = UlamEmbedding()
        est.fit([np.arange(16)])
        assert est.m is None and hasattr(est, "m_")


class TestDimReductions:
    def test_string_variant_blocks(self):
        rng = np.random.default_rng(1)
        X = [rng.integers(0, 8, size=100) for _ in range(3)]
        blocks = StringDimReduction(c=4, seed=1).fit(X).transform(X)
        for x, bs in zip(X, blocks):
            assert np.array_equal(bs.concat(), x)

    def test_perm_variant_validates(self):
        with pytest.raises(ValueError):
            PermutationDimReduction(c=4).fit([[1, 1, 2]])

    def test_determinism_across_instances(self):
        rng = np.random.default_rng(2)
        X = [rng.integers(0, 8, size=200)]
        a = StringDimReduction(c=4, seed=9).fit(X).transform(X)[0]
        b = StringDimReduction(c=4, seed=9).fit(X).transform(X)[0]
        assert a == b


class TestLowRegimeEmbedding:
    def test_matrix_output(self):
        rng = np.random.default_rng(3)
        X = [rng.integers(0, 8, size=900), rng.integers(0, 8, size=700)]
        est = LowRegimeEmbedding(K=1, D=4, C=1, seed=2, capacity=1000).fit(X)
        mat = est.transform(X)
        assert mat.dtype == np.uint8
        assert mat.shape == (2, est.inner_.output_len * est.randomness_.num_windows)

    def test_identical_rows_for_identical_inputs(self):
        rng = np.random.default_rng(4)
        x = rng.integers(0, 8, size=500)
        est = LowRegimeEmbedding(K=1, D=4, C=1, seed=2, capacity=600).fit([x])
        mat = est.transform([x, x.copy()])
        assert np.array_equal(mat[0], mat[1])

    def test_clone_preserves_params(self):
        est = LowRegimeEmbedding(K=2, D=8, C=2, seed=7)
        params = clone(est).get_params()
        assert params["K"] == 2 and params["D"] == 8 and params["C"] == 2
