"""Black-box approximate alignment on top of any edit-distance estimator.

The aligner equipartitions the left string, searches a candidate set of cut
positions in the right string for the cheapest matching partition (a dynamic
program whose edge costs come from the estimator), and recurses on the part
pairs.  Any estimator sandwiched between the true distance and gamma(n) times
it yields a valid script with bounded blow-up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from . import _kernels
from ._kernels import BIG
from .core import (
    EditScript,
    EditOp,
    MAX_LEN,
    CapacityError,
    StrLike,
    as_symbols,
    banded_distance,
    edit_distance,
    equipartition,
    optimal_alignment,
)
from .hashing import HashFamily


class Estimator(Protocol):
    """Contract: Δed(u,v) <= evaluate(u,v) <= gamma(|u|+|v|) * Δed(u,v)."""

    is_randomized: bool

    def evaluate(self, u: np.ndarray, v: np.ndarray) -> int: ...

    def gamma(self, n: int) -> float: ...

    def reseed(self, seed: int) -> "Estimator": ...


class ExactEstimator:
    """The exact DP oracle as an estimator (gamma = 1)."""

    is_randomized = False

    def evaluate(self, u, v) -> int:
        return edit_distance(u, v)

    def gamma(self, n: int) -> float:
        return 1.0

    def reseed(self, seed: int) -> "ExactEstimator":
        return self

    def __repr__(self) -> str:
        return "ExactEstimator()"


class BandedEstimator:
    """Exact inside a width-(2k+1) band; falls back to the length bound."""

    is_randomized = False

    def __init__(self, k: int):
        if k < 0:
            raise ValueError("k must be >= 0")
        self.k = k

    def evaluate(self, u, v) -> int:
        d = banded_distance(u, v, self.k)
        if d is not None:
            return d
        return max(len(u), len(v))

    def gamma(self, n: int) -> float:
        return float(max(1, n))

    def reseed(self, seed: int) -> "BandedEstimator":
        return self

    def __repr__(self) -> str:
        return f"BandedEstimator(k={self.k})"


class AmplifiedEstimator:
    """Median of independent reseeded trials of a base estimator."""

    def __init__(self, base: Estimator, trials: int, seed: int):
        if trials < 1 or trials % 2 == 0:
            raise ValueError("trials must be a positive odd integer")
        self.base = base
        self.trials = trials
        self.seed = seed
        self.is_randomized = base.is_randomized
        self._fam = HashFamily(seed)

    def evaluate(self, u, v) -> int:
        vals = sorted(
            self.base.reseed(self._fam.derive_seed(i)).evaluate(u, v)
            for i in range(self.trials)
        )
        return vals[self.trials // 2]

    def gamma(self, n: int) -> float:
        return self.base.gamma(n)

    def reseed(self, seed: int) -> "AmplifiedEstimator":
        return AmplifiedEstimator(self.base, self.trials, seed)


def amplify(est: Estimator, trials: int, seed: int) -> Estimator:
    """Boost a randomized estimator's success probability via median-of-trials."""
    return AmplifiedEstimator(est, trials, seed)


@dataclass(frozen=True)
class AlignerReport:
    script: EditScript
    levels: int
    estimator_calls: int


def candidate_positions(cuts, v_len: int, m: int, granularity_exponent: int = 1) -> np.ndarray:
    """Candidate cut positions in v: every p_i shifted by powers of 1 + 1/m^c.

    Accepts a Partition or a raw cut tuple.  The power enumeration stops at
    the first power exceeding v_len; everything is clamped to [0, v_len] and
    the endpoints {p_i} and v_len are always present.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    if granularity_exponent < 1:
        raise ValueError("granularity_exponent must be >= 1")
    cut_vals = cuts.cuts if hasattr(cuts, "cuts") else tuple(cuts)
    base = 1.0 + 1.0 / (m**granularity_exponent)
    powers = []
    pw = 1.0
    while True:
        powers.append(pw)
        if pw > v_len:
            break
        pw *= base
    s: set[int] = {v_len}
    for p in cut_vals:
        if 0 <= p <= v_len:
            s.add(int(p))
        for pw in powers:
            up = math.ceil(p + pw - 1e-9)
            dn = math.ceil(p - pw - 1e-9)
            if 0 <= up <= v_len:
                s.add(up)
            if 0 <= dn <= v_len:
                s.add(dn)
    return np.array(sorted(s), dtype=np.int64)


def choose_m_distortion(n: int, eps: float) -> int:
    """Partition arity favoring low distortion: max(2, ceil(n^(eps/5)))."""
    if not 0 < eps < 1:
        raise ValueError("eps must satisfy 0 < eps < 1")
    return max(2, math.ceil(n ** (eps / 5) - 1e-9))


def choose_m_runtime(gamma_n: float, eps: float) -> int:
    """Partition arity favoring run time: max(2, ceil((3*gamma_n)^(1/eps)))."""
    if not 0 < eps < 1:
        raise ValueError("eps must satisfy 0 < eps < 1")
    if gamma_n < 1:
        raise ValueError("gamma_n must be >= 1")
    return max(2, math.ceil((3.0 * gamma_n) ** (1.0 / eps) - 1e-9))


class _AlignState:
    __slots__ = ("est", "granularity", "calls", "max_depth", "fast")

    def __init__(self, est: Estimator, granularity: int):
        self.est = est
        self.granularity = granularity
        self.calls = 0
        self.max_depth = 0
        self.fast = isinstance(est, ExactEstimator)


def align(
    u: StrLike,
    v: StrLike,
    m: int,
    est: Estimator,
    granularity_exponent: int = 1,
) -> AlignerReport:
    """Recover an edit script from u to v using only estimator queries.

    The returned script always applies cleanly and is never shorter than the
    true distance; with an exact estimator its length is at most 3^L times
    the true distance, L being the reported recursion depth.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    ua = as_symbols(u, allow_reserved=True)
    va = as_symbols(v, allow_reserved=True)
    if len(ua) + len(va) > MAX_LEN:
        raise CapacityError("|u| + |v| exceeds the configured capacity")
    st = _AlignState(est, granularity_exponent)
    ops = _align_rec(ua, va, m, st, 1)
    return AlignerReport(EditScript(tuple(ops)), st.max_depth, st.calls)


def _align_rec(u: np.ndarray, v: np.ndarray, m: int, st: _AlignState, depth: int) -> list[EditOp]:
    if depth > st.max_depth:
        st.max_depth = depth
    if len(u) <= 1 or len(v) == 0:
        return list(optimal_alignment(u, v).ops)

    part = equipartition(u, m)
    cuts = np.array(part.cuts, dtype=np.int64)
    s = candidate_positions(part, len(v), m, st.granularity)
    d_hat = st.est.evaluate(u, v)
    st.calls += 1
    # Some candidate partition always costs <= 3 * gamma * ed(u, v), so this
    # cap upper-bounds the DP optimum and pruning against it keeps the argmin.
    cap = math.ceil(3.0 * st.est.gamma(len(u) + len(v)) * d_hat)

    if st.fast:
        cost, qidx, calls = _kernels.level_dp(u, v, cuts, s, cap)
        st.calls += int(calls)
        q = [int(s[t]) for t in qidx]
    else:
        cost, q = _level_dp_generic(u, v, part, s, st, cap)
    if cost >= BIG:
        raise RuntimeError("aligner DP found no feasible partition (estimator contract violated?)")

    ops: list[EditOp] = []
    for i in range(1, m + 1):
        pi = part.part(i)
        qi = v[q[i - 1] : q[i]]
        if len(pi) == len(qi) and bool(np.array_equal(pi, qi)):
            continue
        sub = _align_rec(pi, qi, m, st, depth + 1)
        off = q[i - 1]
        ops.extend(EditOp(op.op, op.pos + off, op.sym) for op in sub)
    return ops


def _level_dp_generic(u, v, part, s, st: _AlignState, cap: int):
    """Reference partition DP for arbitrary estimators (order-identical to the kernel)."""
    m = part.num_parts
    ns = len(s)
    f = [[BIG] * ns for _ in range(m + 1)]
    arg = [[-1] * ns for _ in range(m + 1)]
    f[0][0] = 0
    for j in range(1, m + 1):
        pj = part.part(j)
        fj, fprev, argj = f[j], f[j - 1], arg[j]
        for a in range(ns):
            base = fprev[a]
            if base >= BIG or base > cap:
                continue
            l0 = int(s[a])
            for b in range(a, ns):
                l1 = int(s[b])
                # contract gives A >= ed >= length difference
                if base + abs(len(pj) - (l1 - l0)) > cap:
                    continue
                c = st.est.evaluate(pj, v[l0:l1])
                st.calls += 1
                if base + c < fj[b]:
                    fj[b] = base + c
                    argj[b] = a
    q_idx = [0] * (m + 1)
    q_idx[m] = ns - 1
    for j in range(m, 0, -1):
        q_idx[j - 1] = arg[j][q_idx[j]]
    return f[m][ns - 1], [int(s[t]) for t in q_idx]
