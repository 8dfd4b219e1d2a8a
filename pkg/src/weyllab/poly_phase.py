"""Exact integer polynomials and mod-1 phase evaluation by finite differences.

The phase of interest is p(n) = x*n + y*omega(n) mod 1.  Because omega has
integer coefficients, the forward-difference table of p of order deg(omega)
is constant in its top register, so after an exact initialisation the phase
advances with k additions mod 1 per step.  Per-step rounding is one ulp-class
event per register, giving a drift bounded by roughly 5*N*k ulp over N steps;
initial registers are computed in exact rational arithmetic (floats are
dyadic rationals) and rounded once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .errors import DomainError

Scalar = Union[int, float, Fraction]


@dataclass(frozen=True)
class IntPolynomial:
    """omega(T) = sum c_j T^j with exact integer coefficients, degree >= 2."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) < 3:
            raise DomainError("polynomial degree must be at least 2")
        if any(not isinstance(c, int) for c in self.coeffs):
            raise DomainError("coefficients must be exact integers")
        if self.coeffs[-1] == 0:
            raise DomainError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, n: int) -> int:
        return eval_poly(self, n)

    def shifted(self, c: int) -> "IntPolynomial":
        """omega(T) + c."""
        return IntPolynomial((self.coeffs[0] + c,) + self.coeffs[1:])

    @classmethod
    def monomial(cls, k: int) -> "IntPolynomial":
        if k < 2:
            raise DomainError("monomial degree must be at least 2")
        return cls((0,) * k + (1,))

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        """Parse the low-to-high form "c0,c1,...,ck"."""
        try:
            coeffs = tuple(int(part.strip()) for part in text.split(","))
        except ValueError as exc:
            raise DomainError(f"bad polynomial literal {text!r}") from exc
        return cls(coeffs)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coeffs)


def eval_poly(omega: IntPolynomial, n: int) -> int:
    """omega(n) by Horner's rule in exact (arbitrary width) integers.

    Python integers are unbounded, so the result is always exact and the
    128-bit minimum-width requirement is met with room to spare; overflow
    cannot silently wrap.
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    acc = 0
    for c in reversed(omega.coeffs):
        acc = acc * n + c
    return acc


def _normalize(v: Scalar) -> Scalar:
    """Reduce a coordinate mod 1, keeping Fractions exact."""
    if isinstance(v, Fraction):
        return v % 1
    if isinstance(v, int):
        return 0.0
    f = math.fmod(float(v), 1.0)
    return f + 1.0 if f < 0.0 else f


@dataclass(frozen=True)
class PhasePoint:
    """A point (x, y) on the torus; coordinates stored reduced mod 1.

    Fractions are kept exact (enabling exact Gauss-sum experiments); float
    coordinates are themselves exact dyadic rationals and are treated as
    such by the initialisation code.
    """

    x: Scalar
    y: Scalar

    def __post_init__(self):
        object.__setattr__(self, "x", _normalize(self.x))
        object.__setattr__(self, "y", _normalize(self.y))

    @property
    def is_exact(self) -> bool:
        return isinstance(self.x, Fraction) and isinstance(self.y, Fraction)

    def as_floats(self) -> tuple[float, float]:
        return float(self.x), float(self.y)

    def exact_coords(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.x), Fraction(self.y)

    def conjugate(self) -> "PhasePoint":
        """The point (-x mod 1, -y mod 1)."""
        return PhasePoint(-Fraction(self.x) % 1, -Fraction(self.y) % 1)


@dataclass(frozen=True)
class PhaseRecurrence:
    """Forward-difference registers d_0..d_k of p(n) = x*n + y*omega(n) mod 1.

    d_0 is the current phase; d_k stays constant across steps.  `exact` marks
    Fraction registers (exact arithmetic mod 1) versus float registers.

    Float registers carry a hidden compensation term each: a register's true
    value is registers[j] + corrections[j].  Without the compensation the
    cascade would integrate the rounding noise of the register above it and
    drift quadratically in the step count; with it the visible drift stays
    within the documented 5*N*k ulp budget.
    """

    registers: tuple[Scalar, ...]
    n: int
    exact: bool
    corrections: tuple[float, ...] = ()

    @property
    def phase(self) -> Scalar:
        return self.registers[0]

    @property
    def top(self) -> Scalar:
        return self.registers[-1]


def _exact_difference_table(omega: IntPolynomial, x: Fraction, y: Fraction, n0: int):
    k = omega.degree
    values = [(x * (n0 + j) + y * eval_poly(omega, n0 + j)) % 1 for j in range(k + 1)]
    table = []
    for _ in range(k + 1):
        table.append(values[0])
        values = [(values[j + 1] - values[j]) % 1 for j in range(len(values) - 1)]
    return table


def phase_init(omega: IntPolynomial, p: PhasePoint, n0: int) -> PhaseRecurrence:
    """Registers Delta^j p(n0) mod 1, computed exactly then rounded once."""
    if n0 < 1:
        raise DomainError("n0 must be at least 1")
    x, y = p.exact_coords()
    table = _exact_difference_table(omega, x, y, n0)
    if p.is_exact:
        return PhaseRecurrence(tuple(table), n0, True)
    hi = [float(t) for t in table]
    lo = [float(t - Fraction(h)) for t, h in zip(table, hi)]
    return PhaseRecurrence(tuple(hi), n0, False, tuple(lo))


def phase_step(r: PhaseRecurrence) -> PhaseRecurrence:
    """Advance n by one: d_j <- (d_j + d_{j+1}) mod 1 for j < k."""
    regs = list(r.registers)
    if r.exact:
        for j in range(len(regs) - 1):
            regs[j] = (regs[j] + regs[j + 1]) % 1
        return PhaseRecurrence(tuple(regs), r.n + 1, True)
    los = list(r.corrections) if r.corrections else [0.0] * len(regs)
    for j in range(len(regs) - 1):
        # two-sum of the high parts, compensation folded into the low part
        s = regs[j] + regs[j + 1]
        b = s - regs[j]
        err = (regs[j] - (s - b)) + (regs[j + 1] - b)
        lo = los[j] + los[j + 1] + err
        hi = s + lo
        lo -= hi - s
        if hi >= 1.0:
            hi -= 1.0
        elif hi < 0.0:
            hi += 1.0
        regs[j], los[j] = hi, lo
    return PhaseRecurrence(tuple(regs), r.n + 1, False, tuple(los))


def exact_phase(omega: IntPolynomial, p: PhasePoint, n: int) -> Fraction:
    """p(n) mod 1 in exact rational arithmetic (the recurrence's oracle)."""
    x, y = p.exact_coords()
    return (x * n + y * eval_poly(omega, n)) % 1


def phase_array(
    omega: IntPolynomial,
    p: PhasePoint,
    N: int,
    block: int = 512,
) -> np.ndarray:
    """Phases p(1..N) mod 1 as float64, each accurate to ~block*k ulp.

    The range is cut into contiguous lanes of `block` steps.  Every lane gets
    its own exactly initialised difference table, and all lanes advance in
    lockstep through vectorised cascade steps, so rounding drift never spans
    more than one lane.
    """
    if N < 1:
        raise DomainError("N must be at least 1")
    k = omega.degree
    x, y = p.exact_coords()
    starts = range(1, N + 1, block)
    exact_tables = [_exact_difference_table(omega, x, y, n0) for n0 in starts]
    his = [[float(t) for t in table] for table in exact_tables]
    los = [
        [float(t - Fraction(h)) for t, h in zip(table, hi_row)]
        for table, hi_row in zip(exact_tables, his)
    ]
    hi = [np.array([row[j] for row in his]) for j in range(k + 1)]
    lo = [np.array([row[j] for row in los]) for j in range(k + 1)]
    lanes = len(his)
    steps = min(block, N)
    out = np.empty((lanes, steps), dtype=float)
    for step in range(steps):
        out[:, step] = hi[0]
        for j in range(k):
            # compensated cascade; see PhaseRecurrence for the error model
            s = hi[j] + hi[j + 1]
            b = s - hi[j]
            err = (hi[j] - (s - b)) + (hi[j + 1] - b)
            low = lo[j] + lo[j + 1] + err
            high = s + low
            low -= high - s
            high -= np.floor(high)
            hi[j], lo[j] = high, low
    return out.reshape(-1)[:N]


def phases_exact(omega: IntPolynomial, p: PhasePoint, ns: Sequence[int]):
    """Exact rational phases at the given indices, as floats rounded once."""
    x, y = p.exact_coords()
    return np.array(
        [float((x * n + y * eval_poly(omega, n)) % 1) for n in ns], dtype=float
    )
