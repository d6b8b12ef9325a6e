"""scikit-learn style transformer wrappers around the embedding maps.

These let the maps sit in sklearn pipelines: parameters are constructor
arguments (get_params/set_params/clone work), derived state appears on fit
as trailing-underscore attributes, and transform maps a list of sequences to
the corresponding embeddings or block strings.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .core import as_symbols
from .dimred import BlockString, dimred_general, dimred_perm
from .lowregime import InnerEmbedding, RegimeRandomness, choose_params, naive_inner, primary_embed
from .ulam import SparseEmbedding, default_m, ulam_embed


def check_sequences(X, require_permutation: bool = False) -> list[np.ndarray]:
    """Validate a list of string-like inputs, converting each to codes."""
    if isinstance(X, (str, bytes)) or not hasattr(X, "__iter__"):
        raise ValueError("X must be an iterable of sequences")
    out = []
    for i, x in enumerate(X):
        arr = as_symbols(x)
        if require_permutation and len(arr) and len(np.unique(arr)) != len(arr):
            raise ValueError(f"X[{i}] is not a permutation: duplicate symbols")
        out.append(arr)
    return out


class UlamEmbedding(BaseEstimator, TransformerMixin):
    """Transformer mapping permutations to sparse Hamming-space embeddings.

    fit() fixes the array dimension from the longest permutation seen (unless
    ``m`` is given), so all transformed outputs are mutually comparable.
    """

    def __init__(self, eps: float = 0.25, m: int | None = None, seed: int = 0):
        self.eps = eps
        self.m = m
        self.seed = seed

    def fit(self, X, y=None):
        seqs = check_sequences(X, require_permutation=True)
        max_n = max((len(s) for s in seqs), default=1)
        self.m_ = self.m if self.m is not None else default_m(max_n, self.eps)
        self.dimension_ = (1 << self.m_) - 1
        return self

    def transform(self, X) -> list[SparseEmbedding]:
        if not hasattr(self, "m_"):
            raise RuntimeError("UlamEmbedding must be fitted before transform")
        seqs = check_sequences(X, require_permutation=True)
        return [ulam_embed(s, self.eps, self.seed, m=self.m_) for s in seqs]


class StringDimReduction(BaseEstimator, TransformerMixin):
    """Transformer contracting strings by a factor ~c into block strings."""

    def __init__(self, c: int = 8, seed: int = 0):
        self.c = c
        self.seed = seed

    def fit(self, X, y=None):
        check_sequences(X)
        self.is_fitted_ = True
        return self

    def transform(self, X) -> list[BlockString]:
        return [dimred_general(s, self.c, self.seed) for s in check_sequences(X)]


class PermutationDimReduction(BaseEstimator, TransformerMixin):
    """Permutation variant with the tighter distortion guarantee."""

    def __init__(self, c: int = 8, seed: int = 0):
        self.c = c
        self.seed = seed

    def fit(self, X, y=None):
        check_sequences(X, require_permutation=True)
        self.is_fitted_ = True
        return self

    def transform(self, X) -> list[BlockString]:
        seqs = check_sequences(X, require_permutation=True)
        return [dimred_perm(s, self.c, self.seed) for s in seqs]


class LowRegimeEmbedding(BaseEstimator, TransformerMixin):
    """Transformer emitting fixed-length bit vectors from the windowed map.

    Output is a (n_samples, output_len * num_windows) uint8 matrix; rows of
    equal-seed transformers are directly comparable in Hamming distance.
    """

    def __init__(self, K: int = 1, D: int = 8, C: int = 1, seed: int = 0,
                 capacity: int | None = None, inner: InnerEmbedding | None = None):
        self.K = K
        self.D = D
        self.C = C
        self.seed = seed
        self.capacity = capacity
        self.inner = inner

    def fit(self, X, y=None):
        seqs = check_sequences(X)
        self.config_ = choose_params(self.K, self.D, self.C)
        cap = self.capacity if self.capacity is not None else max((len(s) for s in seqs), default=1)
        self.randomness_ = RegimeRandomness(self.seed, self.config_, max(cap, 1))
        self.inner_ = self.inner if self.inner is not None else naive_inner(self.config_.W, seed=self.seed)
        return self

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "randomness_"):
            raise RuntimeError("LowRegimeEmbedding must be fitted before transform")
        seqs = check_sequences(X)
        rows = [primary_embed(s, self.config_, self.randomness_, self.inner_) for s in seqs]
        return np.vstack(rows) if rows else np.empty((0, 0), dtype=np.uint8)
