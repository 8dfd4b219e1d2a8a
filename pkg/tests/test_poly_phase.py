import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weyllab.errors import DomainError
from weyllab.poly_phase import (
    IntPolynomial,
    PhasePoint,
    eval_poly,
    exact_phase,
    phase_array,
    phase_init,
    phase_step,
)

T2 = IntPolynomial.monomial(2)
T3 = IntPolynomial.monomial(3)


def test_eval_poly_examples():
    assert eval_poly(T2, 0) == 0
    assert eval_poly(T3, 2) == 8
    # independent big-integer oracle: plain power expansion
    poly = IntPolynomial((0, 1, 2))  # 2T^2 + T
    n = 10
    oracle = sum(c * n**j for j, c in enumerate(poly.coeffs))
    assert oracle == 210
    assert eval_poly(poly, n) == oracle


def test_eval_poly_is_exact_beyond_word_size():
    poly = IntPolynomial((7, 0, 0, 3))
    n = 10**12
    assert eval_poly(poly, n) == 3 * n**3 + 7  # > 2**127, no wrap


def test_eval_poly_rejects_negative_n():
    with pytest.raises(DomainError):
        eval_poly(T2, -1)


def test_construction_invariants():
    with pytest.raises(DomainError):
        IntPolynomial((1, 2))  # degree 1
    with pytest.raises(DomainError):
        IntPolynomial((1, 2, 0))  # leading zero
    with pytest.raises(DomainError):
        IntPolynomial((0.0, 1, 1))  # non-integer
    assert IntPolynomial.parse("0,0,1") == T2
    assert str(IntPolynomial((3, 0, 5))) == "3,0,5"
    assert T3.degree == 3


def test_phase_point_normalization():
    p = PhasePoint(1.25, -0.25)
    assert p.x == 0.25 and p.y == 0.75
    q = PhasePoint(Fraction(7, 5), Fraction(-1, 5))
    assert q.x == Fraction(2, 5) and q.y == Fraction(4, 5)
    assert q.is_exact and not p.is_exact


def test_phase_init_zero_point():
    r = phase_init(T2, PhasePoint(Fraction(0), Fraction(0)), 1)
    assert all(v == 0 for v in r.registers)


def test_phase_init_quadratic_fifth():
    r = phase_init(T2, PhasePoint(Fraction(0), Fraction(1, 5)), 1)
    assert r.registers[0] == Fraction(1, 5)
    assert r.registers[2] == Fraction(2, 5)


def test_phase_init_half_linear():
    r = phase_init(T2, PhasePoint(Fraction(1, 2), Fraction(0)), 1)
    assert r.registers == (Fraction(1, 2), Fraction(1, 2), Fraction(0))


def test_phase_step_sequences():
    # n^2/5 mod 1 for n=1..5
    r = phase_init(T2, PhasePoint(Fraction(0), Fraction(1, 5)), 1)
    seen = [r.phase]
    for _ in range(4):
        r = phase_step(r)
        seen.append(r.phase)
    assert seen == [Fraction(1, 5), Fraction(4, 5), Fraction(4, 5), Fraction(1, 5), 0]

    r = phase_init(T2, PhasePoint(Fraction(0), Fraction(0)), 1)
    for _ in range(10):
        r = phase_step(r)
        assert r.phase == 0

    r = phase_init(T2, PhasePoint(Fraction(1, 2), Fraction(0)), 1)
    seen = [r.phase]
    for _ in range(3):
        r = phase_step(r)
        seen.append(r.phase)
    assert seen == [Fraction(1, 2), 0, Fraction(1, 2), 0]


def test_top_register_constant_across_steps():
    p = PhasePoint(0.37, 0.81)
    r = phase_init(T3, p, 1)
    top = r.top
    for _ in range(200):
        r = phase_step(r)
        assert r.registers[-1] == top  # bitwise: the cascade never touches d_k


def test_phase_init_rejects_bad_n0():
    with pytest.raises(DomainError):
        phase_init(T2, PhasePoint(0.0, 0.0), 0)


@settings(max_examples=50, deadline=None)
@given(
    num_x=st.integers(0, 99),
    num_y=st.integers(0, 99),
    den=st.integers(1, 100),
    c2=st.integers(-5, 5),
    c3=st.integers(1, 5),
    steps=st.integers(1, 300),
)
def test_recurrence_matches_exact_rational_oracle(num_x, num_y, den, c2, c3, steps):
    omega = IntPolynomial((1, c2, c3))
    p = PhasePoint(num_x / den, num_y / den)
    r = phase_init(omega, p, 1)
    for _ in range(steps):
        r = phase_step(r)
    exact = exact_phase(omega, p, 1 + steps)
    err = abs(r.phase - float(exact))
    assert min(err, 1 - err) <= 1e-9


def test_recurrence_drift_at_1e5_within_budget():
    omega = T2
    p = PhasePoint(Fraction(355, 1130).__float__(), 0.123456789)
    r = phase_init(omega, p, 1)
    n_steps = 10**5
    for _ in range(n_steps):
        r = phase_step(r)
    exact = exact_phase(omega, p, 1 + n_steps)
    err = abs(r.phase - float(exact))
    err = min(err, 1 - err)
    assert err <= 1e-9
    assert err <= 5 * n_steps * omega.degree * math.ulp(1.0)


def test_step_composition_equals_fresh_init():
    omega = T3
    p = PhasePoint(0.7071067811865475, 0.5772156649015329)
    r = phase_init(omega, p, 1)
    for _ in range(500):
        r = phase_step(r)
    fresh = phase_init(omega, p, 501)
    budget = 5 * 500 * omega.degree * math.ulp(1.0)
    for a, b in zip(r.registers, fresh.registers):
        err = abs(a - b)
        assert min(err, 1 - err) <= budget


def test_phase_array_matches_exact_phases():
    omega = IntPolynomial((2, -1, 0, 1))
    p = PhasePoint(0.31830988618, 0.91893853320)
    phases = phase_array(omega, p, 2000, block=128)
    for n in (1, 2, 127, 128, 129, 777, 1999, 2000):
        err = abs(phases[n - 1] - float(exact_phase(omega, p, n)))
        assert min(err, 1 - err) <= 1e-11


def test_phase_array_exact_point():
    phases = phase_array(T2, PhasePoint(Fraction(0), Fraction(1, 5)), 5)
    np.testing.assert_allclose(phases, [0.2, 0.8, 0.8, 0.2, 0.0], atol=1e-15)
