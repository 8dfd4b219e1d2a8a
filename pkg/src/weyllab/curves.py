"""Suprema of |S| and W along lines, circles and user-supplied curves.

Empirical mode evaluates the sum on a uniform parameter grid (nested for
power-of-two sample counts) and reports the grid maximum, which is always a
certified lower bound of the true supremum.  Rigorous mode derives its
sample count from the continuity-lemma spacing (zeta1, zeta2), so the grid
cannot miss a completion-sum peak above N^alpha by more than a factor of 2;
for |S| the same spacing is a documented heuristic transfer, not a theorem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import bounds_tables
from .errors import BudgetExceeded, DomainError
from .large_values import grid_spec
from .mean_value import ExponentReport, fit_exponent
from .numerics import frac
from .poly_phase import IntPolynomial, PhasePoint
from .sampling import unit_draws
from .weyl_sum import completion_sum_batch, weyl_sum_batch


@dataclass(frozen=True)
class Line:
    """t -> (t, tau * t + c) mod 1 for t in [0, 1)."""

    tau: float
    c: float

    def points(self, count: int):
        ts = np.arange(count) / count
        return ts, frac(self.tau * ts + self.c), ts

    @property
    def speed(self) -> tuple[float, float]:
        return 1.0, abs(self.tau)


@dataclass(frozen=True)
class Circle:
    """t -> center + r (cos 2 pi t, sin 2 pi t) mod 1 for t in [0, 1)."""

    center: tuple[float, float]
    r: float

    def __post_init__(self):
        if not 0 < self.r < 1:
            raise DomainError("circle radius must lie in (0, 1)")

    def points(self, count: int):
        ts = np.arange(count) / count
        ang = 2 * np.pi * ts
        xs = frac(self.center[0] + self.r * np.cos(ang))
        ys = frac(self.center[1] + self.r * np.sin(ang))
        return xs, ys, ts

    @property
    def speed(self) -> tuple[float, float]:
        v = 2 * math.pi * self.r
        return v, v


@dataclass(frozen=True)
class Parametric:
    """An explicit ordered sample of a rho-Holder curve."""

    xs: tuple
    ys: tuple
    rho: float = 1.0
    holder_const: float = 1.0

    def __post_init__(self):
        if len(self.xs) != len(self.ys) or len(self.xs) < 2:
            raise DomainError("need at least 2 matching sample coordinates")
        if not 0 < self.rho <= 1:
            raise DomainError("rho must lie in (0, 1]")
        object.__setattr__(self, "xs", tuple(float(x) % 1.0 for x in self.xs))
        object.__setattr__(self, "ys", tuple(float(y) % 1.0 for y in self.ys))

    @classmethod
    def from_points(cls, pts: Sequence[PhasePoint], rho: float = 1.0, holder_const: float = 1.0):
        fl = [p.as_floats() for p in pts]
        return cls(tuple(x for x, _ in fl), tuple(y for _, y in fl), rho, holder_const)

    def points(self, count: Optional[int] = None):
        if count is not None and count != len(self.xs):
            raise DomainError("parametric curves carry their own sample count")
        m = len(self.xs)
        return np.array(self.xs), np.array(self.ys), np.arange(m) / m


Curve = Union[Line, Circle, Parametric]


@dataclass(frozen=True)
class CurveSupremum:
    sup_S: float
    sup_W: Optional[float]
    argmax: PhasePoint
    samples_used: int
    mode: str


@dataclass(frozen=True)
class BadSetReport:
    N: int
    alpha: float
    trials: int
    exceed_fraction: float
    theory_exponent: float
    seed: int
    budget: int
    family: str


def _wrapped_gap(a: np.ndarray) -> float:
    d = np.abs(np.diff(np.concatenate([a, a[:1] + 1.0]) % 1.0))
    return float(np.minimum(d, 1.0 - d).max())


def sample_count_rigorous(
    curve: Curve, N: int, k: int, alpha, eps, cap: int = 2**26
) -> int:
    """Samples needed so consecutive curve points move by <= (zeta1, zeta2).

    For parametric curves the user-supplied sampling is checked against the
    spacing instead of being chosen here.
    """
    spec = grid_spec(N, alpha, eps, k)
    z1, z2 = spec.zeta1, spec.zeta2
    if isinstance(curve, Parametric):
        xs, ys, _ = curve.points()
        if _wrapped_gap(xs) > float(z1) or _wrapped_gap(ys) > float(z2):
            raise DomainError("parametric sampling coarser than the rigorous spacing")
        return len(xs)
    vx, vy = curve.speed
    # per-step parameter motion is (vx, vy) / count; conservative exact ceilings
    need_x = math.ceil(Fraction(vx).limit_denominator(10**12) / z1) if vx else 1
    need_y = math.ceil(Fraction(vy).limit_denominator(10**12) / z2) if vy else 1
    count = max(int(need_x), int(need_y), 2)
    if isinstance(curve, Circle):
        count += 1  # swallow the float slop in 2 pi r
    if count > cap:
        raise BudgetExceeded(f"rigorous sampling needs {count} points (cap {cap})")
    return count


def sup_along(
    omega: IntPolynomial,
    curve: Curve,
    N: int,
    mode: str = "empirical",
    samples: Optional[int] = None,
    with_completion: bool = False,
    alpha=None,
    eps=Fraction(1, 20),
    cap: int = 2**26,
) -> CurveSupremum:
    """Maximum of |S| (optionally also W) over sampled curve points.

    Ties break to the smallest parameter.  Empirical mode takes the sample
    count as given and is not a certified supremum; rigorous mode sizes the
    grid from the continuity spacing for the supplied alpha.
    """
    if N < 1:
        raise DomainError("N must be at least 1")
    if mode == "empirical":
        if isinstance(curve, Parametric):
            xs, ys, ts = curve.points()
        else:
            if samples is None or samples < 2:
                raise DomainError("empirical mode needs samples >= 2")
            if samples > cap:
                raise BudgetExceeded(f"{samples} samples exceed cap {cap}")
            xs, ys, ts = curve.points(samples)
    elif mode == "rigorous":
        if alpha is None:
            raise DomainError("rigorous mode needs alpha")
        count = sample_count_rigorous(curve, N, omega.degree, alpha, eps, cap)
        xs, ys, ts = curve.points(count if not isinstance(curve, Parametric) else None)
    else:
        raise DomainError(f"unknown mode {mode!r}")

    mags = np.abs(weyl_sum_batch(omega, xs, ys, N))
    best = int(np.argmax(mags))  # first occurrence: smallest parameter
    sup_w = None
    if with_completion:
        sup_w = float(completion_sum_batch(omega, xs, ys, N).max())
    return CurveSupremum(
        sup_S=float(mags[best]),
        sup_W=sup_w,
        argmax=PhasePoint(float(xs[best]), float(ys[best])),
        samples_used=len(xs),
        mode=mode,
    )


def exponent_along(
    omega: IntPolynomial,
    curve_family: Callable[[float], Curve],
    Ns: Sequence[int],
    trials: int,
    seed: int,
    budget: int = 2**14,
    aggregate: str = "mean",
) -> ExponentReport:
    """Growth exponent of the per-N average of sup |S| over random curves.

    The family parameter for (N index, trial) is drawn from a Philox stream
    keyed by (seed, N index, trial), so every value is reproducible in
    isolation.
    """
    Ns = [int(n) for n in Ns]
    if len(Ns) < 3 or any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise DomainError("need at least 3 strictly increasing N values")
    if any(n & (n - 1) for n in Ns):
        raise DomainError("N values must be dyadic")
    if trials < 10:
        raise DomainError("need at least 10 trials")
    if aggregate not in ("mean", "median"):
        raise DomainError("aggregate must be mean or median")
    agg = np.mean if aggregate == "mean" else np.median
    points = []
    for i, N in enumerate(Ns):
        sups = [
            sup_along(
                omega, curve_family(float(unit_draws(seed, 1, i, t)[0])), N,
                samples=budget,
            ).sup_S
            for t in range(trials)
        ]
        points.append((N, float(agg(sups))))
    return fit_exponent(points)


_FAMILY_THEORY = {"projection": "projection", "line": "holder", "circle": "circle"}


def bad_set_experiment(
    omega: IntPolynomial,
    family: str,
    N: int,
    alpha: float,
    trials: int,
    seed: int,
    budget: int = 2**12,
    tau: float = 1.0,
    radius: float = 0.25,
) -> BadSetReport:
    """Fraction of random family members whose sampled sup |S| reaches N^alpha.

    The theory exponent quoted alongside is the measure bound for the
    completion sum (which dominates |S|) at s = s0(k), t = k + 1.
    """
    if family not in _FAMILY_THEORY:
        raise DomainError(f"unknown family {family!r}")
    if trials < 100:
        raise DomainError("need at least 100 trials")
    k = omega.degree
    s, t = bounds_tables.s0(k), k + 1
    theory = float(
        bounds_tables.bad_set_exponent(
            Fraction(alpha).limit_denominator(10**9), 1, k, s, t, _FAMILY_THEORY[family]
        )
    )
    threshold = float(N) ** float(alpha)
    exceed = 0
    for trial in range(trials):
        draws = unit_draws(seed, 2, trial)
        if family == "projection":
            curve: Curve = Line(0.0, float(draws[0]))
        elif family == "line":
            curve = Line(tau, float(draws[0]))
        else:
            curve = Circle((float(draws[0]), float(draws[1])), radius)
        sup = sup_along(omega, curve, N, samples=budget).sup_S
        if sup >= threshold:
            exceed += 1
    return BadSetReport(
        N=N,
        alpha=float(alpha),
        trials=trials,
        exceed_fraction=exceed / trials,
        theory_exponent=theory,
        seed=seed,
        budget=budget,
        family=family,
    )
