"""Floating-point kernels: exact fractional parts, compensated products and sums.

All phase arithmetic in this package happens mod 1.  The helpers here keep
that arithmetic accurate to a few ulp even when the raw products (x*n or
y*omega(n)) are many orders of magnitude above 1, which is where a naive
``(x*n + y*w) % 1.0`` loses most of its bits.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

# Veltkamp splitting constant for binary64.
_SPLIT = 134217729.0  # 2**27 + 1

# Largest integer magnitude that float64 represents exactly.
EXACT_FLOAT_LIMIT = 2**53


def two_prod(a, b):
    """Return (p, e) with p = fl(a*b) and p + e = a*b exactly (Dekker)."""
    p = a * b
    ca = _SPLIT * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLIT * b
    bhi = cb - (cb - b)
    blo = b - bhi
    e = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, e


def frac(v):
    """Fractional part in [0, 1); exact for float inputs (floor and subtract)."""
    return v - np.floor(v)


def frac_product(a, b):
    """(a*b) mod 1 to within a few ulp, for |a*b| up to ~2**1000.

    Both factors must be exactly representable floats.  The product is formed
    as an exact double-double pair before the reduction, so no accuracy is
    lost to the integer part.
    """
    p, e = two_prod(a, b)
    return frac(frac(p) + e)


def phase_mod1(x, y, n, w):
    """(x*n + y*w) mod 1 accurate to a few ulp; vectorizes over any argument.

    Requires |n| and |w| below 2**53 so the integer inputs are exact floats.
    """
    return frac(frac_product(x, n) + frac_product(y, w))


def cis(phase):
    """e(phase) = exp(2*pi*i*phase) for phase arrays in [0, 1)."""
    return np.exp((2j * np.pi) * phase)


def exact_frac(value) -> Fraction:
    """Exact rational value of a float/int/Fraction, reduced mod 1."""
    return Fraction(value) % 1


def fsum_complex(values) -> complex:
    """Exactly rounded complex sum of an iterable of complex numbers."""
    vals = list(values)
    return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))


def cumulative_abs_max(z: np.ndarray, chunk: int = 1 << 15):
    """Max over M of |z_1 + ... + z_M|, plus the endpoint sum.

    Prefix sums are built chunk by chunk with an exactly rounded carry between
    chunks, so rounding growth stays local to a chunk.
    """
    best = 0.0
    carry = 0.0 + 0.0j
    block_sums: list[complex] = []
    for start in range(0, len(z), chunk):
        block = z[start : start + chunk]
        prefix = np.cumsum(block) + carry
        m = float(np.abs(prefix).max()) if len(prefix) else 0.0
        if m > best:
            best = m
        block_sums.append(complex(block.sum()))
        carry = complex(
            math.fsum(v.real for v in block_sums),
            math.fsum(v.imag for v in block_sums),
        )
    return best, carry


def ols_loglog(ns, values):
    """Least-squares slope/intercept of log(values) against log(ns)."""
    lx = np.log(np.asarray(ns, dtype=float))
    ly = np.log(np.asarray(values, dtype=float))
    mx = lx.mean()
    my = ly.mean()
    dx = lx - mx
    slope = float(np.dot(dx, ly - my) / np.dot(dx, dx))
    intercept = float(my - slope * mx)
    resid = ly - (slope * lx + intercept)
    return slope, intercept, float(np.abs(resid).max())
