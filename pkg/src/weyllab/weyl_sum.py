"""Two-parametric Weyl sums S(x, y; N), partial maxima and completion sums.

S(x, y; N) = sum_{n=1}^{N} e(x n + y omega(n)),  e(t) = exp(2 pi i t).

The completion sum

    W(x, y; N) = sum_{h=-N}^{N} (|h|+1)^{-1} |sum_{n=1}^{N} e(h n / N + x n + y omega(n))|

dominates every partial maximum max_{M<=N} |S(x, y; M)| up to an absolute
constant, which this module measures rather than assumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .numerics import EXACT_FLOAT_LIMIT, cis, cumulative_abs_max, fsum_complex, phase_mod1
from .poly_phase import IntPolynomial, PhasePoint, eval_poly, phase_array, phases_exact


@dataclass(frozen=True)
class CompletionResult:
    """Value of W plus, optionally, the |DFT| magnitudes of the inner sums."""

    value: float
    N: int
    inner_spectrum: Optional[np.ndarray] = None


def weyl_sum(omega: IntPolynomial, p: PhasePoint, N: int) -> complex:
    """S(x, y; N) via the blocked phase recurrence; abs error < 1e-6 for N <= 1e6."""
    if N < 1:
        raise DomainError("N must be at least 1")
    z = cis(phase_array(omega, p, N))
    return complex(z.sum())


def weyl_sum_reference(omega: IntPolynomial, p: PhasePoint, N: int) -> complex:
    """Slow oracle: every phase reduced mod 1 in exact rational arithmetic."""
    if N < 1:
        raise DomainError("N must be at least 1")
    phases = phases_exact(omega, p, range(1, N + 1))
    return fsum_complex(complex(v) for v in cis(phases))


def partial_max(omega: IntPolynomial, p: PhasePoint, N: int) -> float:
    """max_{1<=M<=N} |S(x, y; M)| in one pass."""
    if N < 1:
        raise DomainError("N must be at least 1")
    z = cis(phase_array(omega, p, N))
    best, _ = cumulative_abs_max(z)
    return best


def _completion_weights(N: int) -> np.ndarray:
    return 1.0 / (np.arange(1, N) + 1.0)


def completion_from_terms(z: np.ndarray) -> tuple[float, np.ndarray]:
    """W from the unit terms z_n = e(x n + y omega(n)), n = 1..N, via one FFT.

    The inner sum at shift h depends only on h mod N because e(h n / N) does;
    rotating z so that index m carries z_{m} (m=1..N-1) and index 0 carries
    z_N makes the inner sums the conjugate DFT of the rotated vector.
    """
    N = len(z)
    zt = np.roll(z, 1)
    spectrum = np.abs(np.fft.fft(zt))
    total = spectrum[0] * (1.0 + 2.0 / (N + 1))
    if N > 1:
        w = _completion_weights(N)
        total += float(np.dot(spectrum[1:], w)) + float(np.dot(spectrum[1:][::-1], w))
    return float(total), spectrum


def completion_from_terms_batch(Z: np.ndarray) -> np.ndarray:
    """Row-wise version of `completion_from_terms` (same reduction order)."""
    N = Z.shape[1]
    Zt = np.roll(Z, 1, axis=1)
    F = np.abs(np.fft.fft(Zt, axis=1))
    total = F[:, 0] * (1.0 + 2.0 / (N + 1))
    if N > 1:
        w = _completion_weights(N)
        total = total + F[:, 1:] @ w + F[:, :0:-1] @ w
    return total


def completion_sum(
    omega: IntPolynomial,
    p: PhasePoint,
    N: int,
    method: str = "fft",
    with_spectrum: bool = False,
) -> CompletionResult:
    """W(x, y; N).  `fft` costs O(N log N); `direct` is the O(N^2) oracle."""
    if N < 1:
        raise DomainError("N must be at least 1")
    if method == "fft":
        z = cis(phase_array(omega, p, N))
        value, spectrum = completion_from_terms(z)
        return CompletionResult(value, N, spectrum if with_spectrum else None)
    if method == "direct":
        value, inner = _completion_direct(omega, p, N)
        return CompletionResult(value, N, inner if with_spectrum else None)
    raise DomainError(f"unknown completion method {method!r}")


def direct_inner_sum(omega: IntPolynomial, p: PhasePoint, N: int, h: int) -> complex:
    """sum_n e(h n / N + x n + y omega(n)) by direct summation.

    The shift phase h*n/N is reduced with exact integer arithmetic, so the
    identity between shifts h and h +- N holds to the last bit.
    """
    phases = phases_exact(omega, p, range(1, N + 1))
    shift = np.array([((h * n) % N) / N for n in range(1, N + 1)], dtype=float)
    return complex(cis(phases) @ cis(shift))


def _completion_direct(omega: IntPolynomial, p: PhasePoint, N: int):
    phases = phases_exact(omega, p, range(1, N + 1))
    z = cis(phases)
    n = np.arange(1, N + 1)
    inner = np.empty(2 * N + 1)
    for idx, h in enumerate(range(-N, N + 1)):
        shift = ((h * n) % N) / N
        inner[idx] = abs(complex(np.dot(z, cis(shift))))
    weights = 1.0 / (np.abs(np.arange(-N, N + 1)) + 1.0)
    value = float(np.dot(inner, weights))
    # reindex so entry j holds |T_h| at h = -j mod N, matching the fft spectrum
    spectrum = np.concatenate(([inner[N]], inner[N + 1 : 2 * N][::-1]))
    return value, spectrum


def perturbation_bound(
    omega: IntPolynomial,
    N: int,
    delta1: float,
    delta2: float,
    constant: float = 100.0,
) -> float:
    """Modulus-of-continuity budget C log(N) (N^2 |d1| + N^{k+1} |d2|).

    Used to size sampling grids: a W-peak cannot move by more than this when
    the base point moves by (d1, d2).  Natural logarithm.
    """
    if N < 2:
        raise DomainError("N must be at least 2")
    k = omega.degree
    return constant * math.log(N) * (N**2 * abs(delta1) + N ** (k + 1) * abs(delta2))


# ---------------------------------------------------------------------------
# Batched evaluation over many torus points (Monte Carlo, grid scans, curves).


def _batch_phase_matrix(omega: IntPolynomial, xs, ys, N: int) -> np.ndarray:
    """Phases (x_i n + y_i omega(n)) mod 1 as an (len(xs), N) matrix.

    Keeps a few-ulp accuracy as long as |omega(n)| stays exactly representable
    in float64; beyond that the caller must fall back to per-point evaluation.
    """
    if max(abs(eval_poly(omega, N)), abs(eval_poly(omega, 1))) >= EXACT_FLOAT_LIMIT:
        raise DomainError("omega(N) exceeds exact float range; use per-point evaluation")
    xs = np.asarray(xs, dtype=float)[:, None]
    ys = np.asarray(ys, dtype=float)[:, None]
    n = np.arange(1, N + 1, dtype=float)[None, :]
    w = np.array([eval_poly(omega, i) for i in range(1, N + 1)], dtype=float)[None, :]
    return phase_mod1(xs, ys, n, w)


def weyl_sum_batch(omega: IntPolynomial, xs, ys, N: int, chunk: int = 4096) -> np.ndarray:
    """S(x_i, y_i; N) for arrays of points, chunked to bound memory."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    out = np.empty(len(xs), dtype=complex)
    for start in range(0, len(xs), chunk):
        sl = slice(start, start + chunk)
        out[sl] = cis(_batch_phase_matrix(omega, xs[sl], ys[sl], N)).sum(axis=1)
    return out


def completion_sum_batch(omega: IntPolynomial, xs, ys, N: int, chunk: int = 2048) -> np.ndarray:
    """W(x_i, y_i; N) for arrays of points (fft method), chunked."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    out = np.empty(len(xs), dtype=float)
    for start in range(0, len(xs), chunk):
        sl = slice(start, start + chunk)
        Z = cis(_batch_phase_matrix(omega, xs[sl], ys[sl], N))
        out[sl] = completion_from_terms_batch(Z)
    return out
