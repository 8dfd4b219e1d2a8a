"""Exact exponent tables and theorem bounds, kept as rationals throughout.

Floats appear only at the reporting edge; every identity between bounds is
checked in exact arithmetic.  The critical-index tables for small k (2..10)
are hard data; the closed forms take over at k >= 11.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError

Rational = Union[int, Fraction]

# Exact integer square roots are cheap up to this point; the cap also keeps
# the closed forms well inside the regime the tables were derived for.
K_MAX = 10**6

_S0_SMALL = {2: 3, 3: 5, 4: 8, 5: 12, 6: 18, 7: 24, 8: 31, 9: 40, 10: 49}

_SIGMA0_SMALL = {
    2: Fraction(6),
    3: Fraction(10),
    4: Fraction(15),
    5: Fraction(70, 3),
    6: Fraction(34),
    7: Fraction(93, 2),
    8: Fraction(306, 5),
    9: Fraction(78),
    10: Fraction(678, 7),
}


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise DomainError("k must be an integer >= 2")
    if k > K_MAX:
        raise DomainError(f"k capped at {K_MAX}")


def _as_rho(rho) -> Fraction:
    r = Fraction(rho)
    if not 0 < r <= 1:
        raise DomainError("rho must lie in (0, 1]")
    return r


def eta(k: int) -> int:
    """0 if 2k+2 >= floor(sqrt(2k+2))^2 + floor(sqrt(2k+2)), else 1."""
    _check_k(k)
    m = 2 * k + 2
    r = math.isqrt(m)
    return 0 if m >= r * r + r else 1


def s0(k: int) -> int:
    """Critical number of variables: tabulated for k <= 10, closed form above."""
    _check_k(k)
    if k <= 10:
        return _S0_SMALL[k]
    return k * (k - 1) // 2 + math.isqrt(2 * k + 2) - eta(k)


def sigma0(k: int) -> Fraction:
    """Critical moment exponent: tabulated for k <= 10, closed form above."""
    _check_k(k)
    if k <= 10:
        return _SIGMA0_SMALL[k]
    return Fraction(k * (k - 1) + 2 * math.isqrt(2 * k + 2) - 1 - eta(k))


def holder_bound(k: int, rho) -> Fraction:
    """1 - rho / (2 s0(k) + 2 - rho): sup exponent along Holder level sets."""
    r = _as_rho(rho)
    return 1 - r / (2 * s0(k) + 2 - r)


def projection_bound(k: int) -> Fraction:
    """1 - k / (2 s0(k) + 1): sup exponent for the projection family."""
    _check_k(k)
    return 1 - Fraction(k, 2 * s0(k) + 1)


def circle_bound(k: int) -> Fraction:
    """1 - 1 / (2 s0(k) + 1): sup exponent along circles of fixed radius."""
    _check_k(k)
    return 1 - Fraction(1, 2 * s0(k) + 1)


def weyl_differencing_bound(k: int) -> Fraction:
    """1 - 1 / (2^k + 1), the classical differencing benchmark."""
    _check_k(k)
    return 1 - Fraction(1, 2**k + 1)


def vinogradov_bound(k: int) -> Fraction:
    """1 - 1 / (2 k (k-1) + 1), the mean-value benchmark."""
    _check_k(k)
    return 1 - Fraction(1, 2 * k * (k - 1) + 1)


def theorem_bounds(k: int, rho) -> dict[str, Fraction]:
    """All exponent bounds for one (k, rho), as exact rationals."""
    return {
        "holder": holder_bound(k, rho),
        "projection": projection_bound(k),
        "circle": circle_bound(k),
        "weyl_differencing": weyl_differencing_bound(k),
        "vinogradov": vinogradov_bound(k),
    }


def conditional_bound(s: Rational, t: Rational, k: int, rho) -> Fraction:
    """1 - (t - k - 1 + rho) / (2s + 2 - rho) under the moment hypothesis.

    With s = s0(k), t = k + 1 this reduces exactly to `holder_bound`.
    """
    _check_k(k)
    r = _as_rho(rho)
    den = 2 * Fraction(s) + 2 - r
    if den <= 0:
        raise DomainError("2s + 2 - rho must be positive")
    return 1 - (Fraction(t) - k - 1 + r) / den


def projection_threshold(s: Rational, t: Rational) -> Fraction:
    """1 - (t - 1) / (2s + 1): convergence threshold in the projection proof."""
    den = 2 * Fraction(s) + 1
    if den <= 0:
        raise DomainError("2s + 1 must be positive")
    return 1 - (Fraction(t) - 1) / den


def circle_threshold(s: Rational, t: Rational, k: int) -> Fraction:
    """1 - (t - k) / (2s + 1): convergence threshold in the circle proof."""
    _check_k(k)
    den = 2 * Fraction(s) + 1
    if den <= 0:
        raise DomainError("2s + 1 must be positive")
    return 1 - (Fraction(t) - k) / den


def bad_set_exponent(alpha, rho, k: int, s: Rational, t: Rational, family: str):
    """Exponent of the measure bound for parameters whose curve sees W >= N^alpha.

    Arithmetic follows the input types: Fractions in, Fraction out.
    """
    _check_k(k)
    if family == "holder":
        return (2 - alpha) * (1 - rho) + (k + 1 - alpha) + 2 * s * (1 - alpha) - t
    if family == "projection":
        return 2 * s * (1 - alpha) - t + 2 - alpha
    if family == "circle":
        return k + 1 - alpha + 2 * s * (1 - alpha) - t
    raise DomainError(f"unknown family {family!r}")


def theta_exact() -> Fraction:
    """The exact sup-growth exponent 3/4 (monomials of degree 2 and 3, unit
    line slope); the tabulated bounds above are upper bounds, not this value."""
    return Fraction(3, 4)


@dataclass(frozen=True)
class ExponentTable:
    """Everything the other modules compare against, for one (k, rho)."""

    k: int
    eta: int
    s0: int
    sigma0: Fraction
    bounds: dict[str, Fraction]


def exponent_table(k: int, rho=1) -> ExponentTable:
    return ExponentTable(k, eta(k), s0(k), sigma0(k), theorem_bounds(k, rho))
