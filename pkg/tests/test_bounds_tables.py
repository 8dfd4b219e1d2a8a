from fractions import Fraction

import pytest

from weyllab import bounds_tables as bt
from weyllab.errors import DomainError

S0_TABLE = {2: 3, 3: 5, 4: 8, 5: 12, 6: 18, 7: 24, 8: 31, 9: 40, 10: 49}
SIGMA0_TABLE = {
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


def test_eta_examples():
    assert bt.eta(2) == 0  # 6 >= 4 + 2
    assert bt.eta(11) == 0  # 24 >= 16 + 4
    assert bt.eta(12) == 1  # 26 < 25 + 5


def test_s0_table_and_formula():
    for k, v in S0_TABLE.items():
        assert bt.s0(k) == v
    assert bt.s0(12) == 66 + 5 - 1


def test_sigma0_table_and_formula():
    for k, v in SIGMA0_TABLE.items():
        assert bt.sigma0(k) == v
    assert bt.sigma0(12) == Fraction(132 + 10 - 1 - 1)


def test_theorem_bounds_k2():
    b = bt.theorem_bounds(2, 1)
    assert b["holder"] == Fraction(6, 7)
    assert b["projection"] == Fraction(5, 7)
    assert b["circle"] == Fraction(6, 7)
    assert b["weyl_differencing"] == Fraction(4, 5)
    assert bt.theorem_bounds(3, 1)["vinogradov"] == Fraction(12, 13)


def test_conditional_bound_examples():
    assert bt.conditional_bound(3, 3, 2, 1) == Fraction(6, 7)
    assert bt.conditional_bound(3, 3, 2, 1) == bt.holder_bound(2, 1)
    assert bt.projection_threshold(3, 3) == Fraction(5, 7)
    assert bt.circle_threshold(3, 3, 2) == Fraction(6, 7)


def test_conditional_consistency_all_k():
    rhos = [Fraction(j, 10) for j in range(1, 11)]
    for k in range(2, 65):
        s = bt.s0(k)
        for rho in rhos:
            assert bt.conditional_bound(s, k + 1, k, rho) == bt.holder_bound(k, rho)
        assert bt.projection_threshold(s, k + 1) == bt.projection_bound(k)
        assert bt.circle_threshold(s, k + 1, k) == bt.circle_bound(k)


def test_all_bounds_inside_unit_interval():
    for k in range(2, 65):
        for name, v in bt.theorem_bounds(k, Fraction(1, 2)).items():
            assert 0 < v < 1, (k, name, v)


def test_bad_set_exponent_examples():
    assert bt.bad_set_exponent(1, 1, 2, 3, 3, "holder") == -1
    assert bt.bad_set_exponent(1, 1, 2, 3, 3, "projection") == -2
    assert bt.bad_set_exponent(1, 1, 2, 3, 3, "circle") == -1
    with pytest.raises(DomainError):
        bt.bad_set_exponent(1, 1, 2, 3, 3, "nope")


def test_bad_set_exponent_exact_with_fractions():
    a = Fraction(9, 10)
    v = bt.bad_set_exponent(a, 1, 2, 3, 3, "holder")
    assert v == (2 - a) * 0 + (3 - a) + 6 * (1 - a) - 3
    assert isinstance(v, Fraction)


def test_theta_exact_versus_upper_bounds():
    th = bt.theta_exact()
    assert th == Fraction(3, 4)
    assert bt.holder_bound(2, 1) > th
    assert bt.weyl_differencing_bound(2) > th


def test_admissibility_two_s0_versus_sigma0():
    # sigma = 2*s0(k) must always be admissible
    for k in range(2, 65):
        assert 2 * bt.s0(k) >= bt.sigma0(k), k
    # strictly admissible where the moment lemma needs strict inequality
    for k in range(4, 11):
        assert 2 * bt.s0(k) > bt.sigma0(k), k
    # the naive relation sigma0 = 2 s0 - 1 does not hold in general...
    assert any(bt.sigma0(k) != 2 * bt.s0(k) - 1 for k in range(11, 65))
    # ...and for k >= 11 it holds exactly when eta vanishes
    for k in range(11, 65):
        assert (bt.sigma0(k) == 2 * bt.s0(k) - 1) == (bt.eta(k) == 0), k


def test_holder_monotonicity():
    rhos = [Fraction(j, 10) for j in range(1, 11)]
    for k in range(2, 65):
        vals = [bt.holder_bound(k, r) for r in rhos]
        assert all(a > b for a, b in zip(vals, vals[1:])), k  # decreasing in rho
    by_s0 = {}
    for k in range(2, 65):
        by_s0[bt.s0(k)] = bt.holder_bound(k, 1)
    ordered = [by_s0[s] for s in sorted(by_s0)]
    assert all(a < b for a, b in zip(ordered, ordered[1:]))  # increasing in s0


def test_domain_errors():
    with pytest.raises(DomainError):
        bt.s0(1)
    with pytest.raises(DomainError):
        bt.theorem_bounds(2, 0)
    with pytest.raises(DomainError):
        bt.theorem_bounds(2, Fraction(11, 10))
    with pytest.raises(DomainError):
        bt.s0(bt.K_MAX + 1)
    with pytest.raises(DomainError):
        bt.conditional_bound(-2, 3, 2, 1)  # nonpositive denominator


def test_exponent_table_bundle():
    tab = bt.exponent_table(2, 1)
    assert (tab.k, tab.eta, tab.s0, tab.sigma0) == (2, 0, 3, Fraction(6))
    assert tab.bounds["holder"] == Fraction(6, 7)
