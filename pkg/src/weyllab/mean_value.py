"""Vinogradov-type solution counting and Monte-Carlo moment estimation.

J(omega, s, N) counts 2s-tuples in [1, N]^{2s} whose alternating sums of n
and of omega(n) both vanish.  By orthogonality J equals the (2s)-th moment
of |S(x, y; N)| over the torus, which gives the Monte-Carlo estimators here
an exact cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, DegenerateInput, DomainError
from .numerics import ols_loglog
from .poly_phase import IntPolynomial, eval_poly
from .sampling import torus_points
from .weyl_sum import completion_sum_batch, weyl_sum_batch

DEFAULT_BUDGET = 2**28

# Above this many s-tuples the flat-array path would allocate too much at
# once; chunked enumeration merges per-chunk tallies in fixed order instead.
_FLAT_LIMIT = 2**25


@dataclass(frozen=True)
class SolutionCount:
    J: int
    s: int
    N: int
    omega: IntPolynomial


@dataclass(frozen=True)
class MomentEstimate:
    mean: float
    std_error: float
    samples: int
    seed: int


@dataclass(frozen=True)
class ExponentReport:
    slope: float
    intercept: float
    residual_max: float
    points: tuple


def count_solutions(
    omega: IntPolynomial,
    s: int,
    N: int,
    budget: int = DEFAULT_BUDGET,
    reverse_roles: bool = False,
) -> SolutionCount:
    """Exact J via meet-in-the-middle: J = sum_v r(v)^2 over key multiplicities.

    Keys are (sum n_i, sum omega(n_i)) over s-tuples, encoded into one integer
    and counted on sorted flat arrays.  `reverse_roles` enumerates the tuple
    coordinates in the opposite nesting order; the key multiset is identical,
    so the count must match exactly (used as a self-check).
    """
    if s < 1 or N < 1:
        raise DomainError("need s >= 1 and N >= 1")
    if N**s > budget:
        raise BudgetExceeded(f"N^s = {N**s} exceeds budget {budget}")
    if s == 1:
        # keys (n, omega(n)) are distinct (the n component already is), so
        # every multiplicity is 1 and J = N
        return SolutionCount(N, s, N, omega)
    if N ** (s - 1) > _FLAT_LIMIT:
        raise BudgetExceeded("chunked enumeration would still thrash; lower N or s")

    wvals = [eval_poly(omega, n) for n in range(1, N + 1)]
    wmin, wmax = min(wvals), max(wvals)
    # composite key: (sum n) * M + (sum omega(n) - s*wmin), collision-free
    M = s * (wmax - wmin) + 1
    key_max = s * N * M + s * (wmax - wmin)
    if key_max < 2**62:
        counts = _tally_int64(wvals, wmin, M, s, N, reverse_roles)
        J = _sum_of_squares(counts)
    else:
        J = _count_exact_dict(wvals, s, N)
    return SolutionCount(J, s, N, omega)


def _tally_int64(wvals, wmin, M, s, N, reverse_roles):
    base = np.arange(1, N + 1, dtype=np.int64) * np.int64(M) + np.array(
        [w - wmin for w in wvals], dtype=np.int64
    )
    if N**s <= _FLAT_LIMIT:
        keys = base
        for _ in range(s - 1):
            if reverse_roles:
                keys = np.add.outer(base, keys).ravel()
            else:
                keys = np.add.outer(keys, base).ravel()
        _, counts = np.unique(keys, return_counts=True)
        return counts
    # chunk over the outermost coordinate, merging tallies in index order
    tail = base
    for _ in range(s - 2):
        tail = np.add.outer(tail, base).ravel()
    acc: dict[int, int] = {}
    for i in range(N):
        uk, uc = np.unique(base[i] + tail, return_counts=True)
        for kk, cc in zip(uk.tolist(), uc.tolist()):
            acc[kk] = acc.get(kk, 0) + cc
    return np.array(sorted(acc.values()), dtype=np.int64)


def _sum_of_squares(counts: np.ndarray) -> int:
    total = int(counts.sum())
    cmax = int(counts.max())
    if total * cmax < 2**62:
        return int(np.dot(counts, counts))
    return sum(int(c) * int(c) for c in counts)


def _count_exact_dict(wvals, s, N) -> int:
    # exact fallback when keys do not fit int64: iterated pair convolution
    tally = {(n, wvals[n - 1]): 1 for n in range(1, N + 1)}
    for _ in range(s - 1):
        nxt: dict[tuple, int] = {}
        for (a, b), c in tally.items():
            for n in range(1, N + 1):
                key = (a + n, b + wvals[n - 1])
                nxt[key] = nxt.get(key, 0) + c
        tally = nxt
    return sum(c * c for c in tally.values())


def _moment(values: np.ndarray, s: int, samples: int, seed: int) -> MomentEstimate:
    powed = values.astype(float) ** (2 * s)
    mean = float(powed.mean())
    std = float(powed.std(ddof=1)) if samples > 1 else 0.0
    return MomentEstimate(mean, std / math.sqrt(samples), samples, seed)


def mc_moment_S(
    omega: IntPolynomial, s: int, N: int, samples: int, seed: int
) -> MomentEstimate:
    """Monte-Carlo mean of |S|^{2s} over the torus; consistent with J."""
    _check_mc(s, N, samples)
    xs, ys = torus_points(seed, samples)
    vals = np.abs(weyl_sum_batch(omega, xs, ys, N))
    return _moment(vals, s, samples, seed)


def mc_moment_W(
    omega: IntPolynomial, s: int, N: int, samples: int, seed: int
) -> MomentEstimate:
    """Monte-Carlo mean of W^{2s} over the torus (moment hypothesis probe)."""
    _check_mc(s, N, samples)
    xs, ys = torus_points(seed, samples)
    vals = completion_sum_batch(omega, xs, ys, N)
    return _moment(vals, s, samples, seed)


def _check_mc(s: int, N: int, samples: int) -> None:
    if s < 1 or N < 1:
        raise DomainError("need s >= 1 and N >= 1")
    if samples < 10**3:
        raise DomainError("need at least 1000 samples")


def fit_exponent(points) -> ExponentReport:
    """Ordinary least squares of log(value) against log(N)."""
    pts = [(int(n), float(v)) for n, v in points]
    if len(pts) < 3:
        raise DegenerateInput("need at least 3 points")
    ns = [n for n, _ in pts]
    vs = [v for _, v in pts]
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise DegenerateInput("N values must be strictly increasing")
    if any(v <= 0 for v in vs):
        raise DegenerateInput("values must be positive")
    slope, intercept, residual_max = ols_loglog(ns, vs)
    return ExponentReport(slope, intercept, residual_max, tuple(pts))
