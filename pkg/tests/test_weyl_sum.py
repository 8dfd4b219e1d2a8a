import math
from fractions import Fraction

import numpy as np
import pytest

from weyllab.errors import DomainError
from weyllab.poly_phase import IntPolynomial, PhasePoint
from weyllab.sampling import torus_points
from weyllab.weyl_sum import (
    completion_sum,
    completion_sum_batch,
    direct_inner_sum,
    partial_max,
    perturbation_bound,
    weyl_sum,
    weyl_sum_batch,
    weyl_sum_reference,
)

T2 = IntPolynomial.monomial(2)
T3 = IntPolynomial.monomial(3)
ORIGIN = PhasePoint(Fraction(0), Fraction(0))


def test_trivial_all_ones():
    assert weyl_sum(T2, ORIGIN, 7) == 7 + 0j
    assert weyl_sum_reference(T3, ORIGIN, 1000) == 1000 + 0j


def test_alternating_signs():
    s = weyl_sum(T2, PhasePoint(Fraction(1, 2), Fraction(0)), 5)
    assert abs(s - (-1 + 0j)) < 1e-12


def test_gauss_sum_magnitudes():
    for q in (5, 101):
        s = weyl_sum(T2, PhasePoint(Fraction(0), Fraction(1, q)), q)
        assert abs(abs(s) - math.sqrt(q)) < 1e-9
        r = weyl_sum_reference(T2, PhasePoint(Fraction(0), Fraction(1, q)), q)
        assert abs(abs(r) - math.sqrt(q)) < 1e-9


def test_fast_path_matches_reference():
    xs, ys = torus_points(20240601, 5)
    for x, y in zip(xs, ys):
        p = PhasePoint(float(x), float(y))
        assert abs(weyl_sum(T3, p, 4096) - weyl_sum_reference(T3, p, 4096)) <= 1e-6


def test_magnitude_never_exceeds_N():
    xs, ys = torus_points(42, 50)
    mags = np.abs(weyl_sum_batch(T2, xs, ys, 37))
    assert (mags <= 37 + 1e-9).all()


def test_conjugate_symmetry():
    xs, ys = torus_points(7, 25)
    for x, y in zip(xs, ys):
        p = PhasePoint(float(x), float(y))
        s = weyl_sum(T3, p, 500)
        sc = weyl_sum(T3, p.conjugate(), 500)
        assert abs(abs(s) - abs(sc)) < 1e-9
        assert abs(sc - s.conjugate()) < 1e-8


def test_partial_max_examples():
    assert partial_max(T2, ORIGIN, 9) == pytest.approx(9, abs=1e-12)
    # partials of (-1)^n: -1, 0, -1, 0, -1, 0
    assert partial_max(T2, PhasePoint(Fraction(1, 2), Fraction(0)), 6) == pytest.approx(1, abs=1e-12)


def test_partial_max_dominates_endpoint():
    xs, ys = torus_points(99, 20)
    for x, y in zip(xs, ys):
        p = PhasePoint(float(x), float(y))
        assert partial_max(T2, p, 300) >= abs(weyl_sum(T2, p, 300)) - 1e-9


def test_completion_value_at_origin():
    # inner sums vanish unless N divides h, so W = N (1 + 2/(N+1))
    assert completion_sum(T2, ORIGIN, 4).value == pytest.approx(5.6, abs=1e-12)
    assert completion_sum(T2, ORIGIN, 1).value == pytest.approx(2.0, abs=1e-12)
    assert completion_sum(T2, ORIGIN, 16).value == pytest.approx(16 + 32 / 17, abs=1e-10)


def test_completion_methods_agree():
    xs, ys = torus_points(314, 40)
    for N in (64, 257, 512):
        for x, y in zip(xs[:10], ys[:10]):
            p = PhasePoint(float(x), float(y))
            a = completion_sum(T2, p, N, method="fft").value
            b = completion_sum(T2, p, N, method="direct").value
            assert abs(a - b) / b < 1e-6


def test_completion_spectrum_matches_between_methods():
    p = PhasePoint(0.123, 0.456)
    a = completion_sum(T3, p, 32, method="fft", with_spectrum=True)
    b = completion_sum(T3, p, 32, method="direct", with_spectrum=True)
    np.testing.assert_allclose(a.inner_spectrum, b.inner_spectrum, atol=1e-9)


def test_completion_dominates_endpoint_sum():
    xs, ys = torus_points(2718, 50)
    for x, y in zip(xs, ys):
        p = PhasePoint(float(x), float(y))
        assert completion_sum(T2, p, 128).value >= abs(weyl_sum(T2, p, 128)) - 1e-9


def test_h_aliasing_identity_is_exact():
    p = PhasePoint(0.37, 0.59)
    for h in (3, 17, -5):
        a = direct_inner_sum(T2, p, 24, h)
        b = direct_inner_sum(T2, p, 24, h + 24)
        c = direct_inner_sum(T2, p, 24, h - 24)
        assert a == b == c  # bitwise: shift phases reduced by integer mod


def test_unknown_method_rejected():
    with pytest.raises(DomainError):
        completion_sum(T2, ORIGIN, 4, method="magic")
    with pytest.raises(DomainError):
        weyl_sum(T2, ORIGIN, 0)


def test_completion_domination_over_probes():
    xs, ys = torus_points(555, 200)
    w = completion_sum_batch(T2, xs, ys, 128)
    ratios = []
    for x, y, wv in zip(xs, ys, w):
        ratios.append(partial_max(T2, PhasePoint(float(x), float(y)), 128) / wv)
    assert max(ratios) <= 8.0  # measured headroom is large; see acceptance run


def test_batch_matches_single_point():
    xs, ys = torus_points(31337, 8)
    batch = weyl_sum_batch(T3, xs, ys, 200)
    for x, y, b in zip(xs, ys, batch):
        s = weyl_sum(T3, PhasePoint(float(x), float(y)), 200)
        assert abs(s - b) < 1e-9
    wbatch = completion_sum_batch(T3, xs, ys, 200)
    for x, y, b in zip(xs, ys, wbatch):
        wv = completion_sum(T3, PhasePoint(float(x), float(y)), 200).value
        assert abs(wv - b) < 1e-8


def test_perturbation_bound_formula():
    assert perturbation_bound(T2, 64, 0.0, 0.0) == 0.0
    val = perturbation_bound(T2, 16, 0.0, 16.0**-3)
    assert val == pytest.approx(100 * math.log(16), rel=1e-12)
    one = perturbation_bound(T2, 64, 1e-5, 2e-7)
    two = perturbation_bound(T2, 64, 2e-5, 2e-7)
    d1_term = 100 * math.log(64) * 64**2 * 1e-5
    assert two - one == pytest.approx(d1_term, rel=1e-9)
    with pytest.raises(DomainError):
        perturbation_bound(T2, 1, 0.1, 0.1)


def test_empirical_continuity_bound():
    N = 128
    rng = np.random.default_rng(8)
    xs, ys = torus_points(808, 50)
    for x, y in zip(xs, ys):
        d1 = (rng.random() - 0.5) * 2 * N**-2
        d2 = (rng.random() - 0.5) * 2 * N**-3
        w0 = completion_sum(T2, PhasePoint(float(x), float(y)), N).value
        w1 = completion_sum(T2, PhasePoint(float(x + d1), float(y + d2)), N).value
        assert abs(w1 - w0) <= perturbation_bound(T2, N, d1, d2)
