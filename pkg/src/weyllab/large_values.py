"""Torus grid decomposition and large-value scans of the completion sum.

The torus is tiled by counts_x * counts_y half-open rectangles of exact side
lengths zeta1 = 1/ceil(N^{2+eps-alpha}) and zeta2 = 1/ceil(N^{k+1+eps-alpha}).
A scan evaluates W at rectangle centers and flags values >= N^alpha / 2: by
the continuity bound, any rectangle containing a point with W >= N^alpha is
then flagged, so the flag count is a superset count for the set of rectangles
the counting lemma bounds.

At desk-scale N the counting bound carries an N^{o(1)} factor that is far
from negligible, so scans report the ratio large_count / lemma_bound rather
than promising the raw inequality; see ScanResult.bound_ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np

from . import bounds_tables
from .errors import BudgetExceeded, DomainError, PrecisionError
from .poly_phase import IntPolynomial
from .weyl_sum import completion_sum_batch

# exact integer-power route is abandoned beyond this many bits
_EXACT_POWER_BIT_LIMIT = 4_000_000


def _inth_root(x: int, q: int) -> int:
    """floor(x ** (1/q)) for exact integers by Newton iteration."""
    if x < 0 or q < 1:
        raise DomainError("need x >= 0 and q >= 1")
    if x == 0:
        return 0
    r = 1 << (-(-x.bit_length() // q))  # upper estimate
    while True:
        nr = ((q - 1) * r + x // r ** (q - 1)) // q
        if nr >= r:
            break
        r = nr
    while r**q > x:
        r -= 1
    return r


def ceil_power(N: int, beta: Fraction) -> int:
    """ceil(N ** beta) with a certificate, for rational beta >= 0.

    Small-denominator exponents go through exact integer roots; everything
    else escalates interval arithmetic until the enclosure pins one integer.
    """
    if N < 2:
        raise DomainError("N must be at least 2")
    beta = Fraction(beta)
    if beta < 0:
        raise DomainError("exponent must be nonnegative")
    if beta == 0:
        return 1
    p, q = beta.numerator, beta.denominator
    if p * N.bit_length() <= _EXACT_POWER_BIT_LIMIT:
        power = N**p
        root = _inth_root(power, q)
        return root if root**q == power else root + 1
    # interval route: escalate precision until the enclosure pins one integer
    saved = mpmath.iv.prec
    try:
        for prec in (64, 128, 256, 512, 1024, 2048, 4096):
            mpmath.iv.prec = prec
            enclosure = mpmath.iv.mpf(N) ** (mpmath.iv.mpf(p) / mpmath.iv.mpf(q))
            clo = int(mpmath.ceil(mpmath.mpf(enclosure.a)))
            chi = int(mpmath.ceil(mpmath.mpf(enclosure.b)))
            if clo == chi:
                return clo
    finally:
        mpmath.iv.prec = saved
    raise PrecisionError(f"could not certify ceil({N}^{beta})")


@dataclass(frozen=True)
class GridSpec:
    """The (N, alpha, eps, k) -> (zeta1, zeta2) rectangle decomposition."""

    N: int
    alpha: Fraction
    eps: Fraction
    k: int
    zeta1: Fraction
    zeta2: Fraction

    @property
    def counts_x(self) -> int:
        return int(1 / self.zeta1)

    @property
    def counts_y(self) -> int:
        return int(1 / self.zeta2)


def grid_spec(N: int, alpha, eps, k: int) -> GridSpec:
    """Certified grid: zeta happens to be exactly 1 over a certified ceiling.

    alpha and eps accept anything Fraction() accepts; decimal strings such as
    "0.9" stay exact, and float inputs are taken at their exact binary value.
    """
    alpha = Fraction(alpha)
    eps = Fraction(eps)
    if not 0 < alpha < 1:
        raise DomainError("alpha must lie in (0, 1)")
    if eps < 0:
        raise DomainError("eps must be nonnegative")
    if k < 2:
        raise DomainError("k must be at least 2")
    c1 = ceil_power(N, 2 + eps - alpha)
    c2 = ceil_power(N, k + 1 + eps - alpha)
    return GridSpec(N, alpha, eps, k, Fraction(1, c1), Fraction(1, c2))


Window = tuple[Fraction, Fraction, Fraction, Fraction]

FULL_TORUS: Window = (Fraction(0), Fraction(1), Fraction(0), Fraction(1))


def _center_range(lo: Fraction, hi: Fraction, zeta: Fraction) -> range:
    """Indices i whose center (i + 1/2) * zeta lies in [lo, hi)."""
    first = math.ceil(lo / zeta - Fraction(1, 2))
    last = math.ceil(hi / zeta - Fraction(1, 2))  # exclusive
    return range(max(first, 0), min(last, int(1 / zeta)))


@dataclass(frozen=True)
class ScanResult:
    window: tuple
    squares_scanned: int
    large_count: int
    threshold: float
    lemma_bound: float
    s: int
    t: int
    alpha: Fraction
    max_value: float
    flagged: tuple = field(default=(), repr=False)

    @property
    def bound_ratio(self) -> float:
        return self.large_count / self.lemma_bound if self.lemma_bound else math.inf


def scan(
    omega: IntPolynomial,
    spec: GridSpec,
    window: Window = FULL_TORUS,
    s: Optional[int] = None,
    t: Optional[int] = None,
    alpha=None,
    chunk: int = 4096,
    budget: int = 2**22,
    collect_flagged: bool = False,
) -> ScanResult:
    """Flag all window rectangles whose center has W >= N^alpha / 2.

    Centers are enumerated in row-major index order and evaluated in fixed
    contiguous chunks, so counts are independent of the chunk size.  `alpha`
    may override the spec's alpha (same grid, recomputed threshold), which is
    how threshold monotonicity is probed.
    """
    if omega.degree != spec.k:
        raise DomainError("polynomial degree must match the grid's k")
    if s is None:
        s = bounds_tables.s0(spec.k)
    if t is None:
        t = spec.k + 1
    a = Fraction(alpha) if alpha is not None else spec.alpha
    if not 0 < a < 1:
        raise DomainError("alpha must lie in (0, 1)")

    xs_idx = _center_range(window[0], window[1], spec.zeta1)
    ys_idx = _center_range(window[2], window[3], spec.zeta2)
    total = len(xs_idx) * len(ys_idx)
    if total > budget:
        raise BudgetExceeded(f"{total} rectangles exceed scan budget {budget}")

    N = spec.N
    threshold = float(N) ** float(a) / 2.0
    exponent = 2 * s * (1 - a) - t
    lemma_bound = float(spec.counts_x) * float(spec.counts_y) * float(N) ** float(exponent)

    cx = np.array([float((i + Fraction(1, 2)) * spec.zeta1) for i in xs_idx])
    cy = np.array([float((j + Fraction(1, 2)) * spec.zeta2) for j in ys_idx])
    large = 0
    max_value = 0.0
    flagged: list[tuple[float, float, float]] = []
    # row-major: y index outer, x index inner, chunked over the flat order
    flat_x = np.tile(cx, len(cy))
    flat_y = np.repeat(cy, len(cx))
    for start in range(0, total, chunk):
        xs_c = flat_x[start : start + chunk]
        ys_c = flat_y[start : start + chunk]
        w = completion_sum_batch(omega, xs_c, ys_c, N)
        hits = w >= threshold
        large += int(hits.sum())
        if len(w):
            max_value = max(max_value, float(w.max()))
        if collect_flagged:
            flagged.extend(
                (float(x), float(y), float(v))
                for x, y, v in zip(xs_c[hits], ys_c[hits], w[hits])
            )
    return ScanResult(
        window=tuple(str(b) for b in window),
        squares_scanned=total,
        large_count=large,
        threshold=threshold,
        lemma_bound=lemma_bound,
        s=int(s),
        t=int(t),
        alpha=a,
        max_value=max_value,
        flagged=tuple(flagged),
    )
