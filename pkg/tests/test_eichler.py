from fractions import Fraction

import mpmath
import pytest

from oracles import l_delta_dirichlet, tau_naive
from qmflab.eichler import (
    completed_L,
    delta_coeffs,
    eichler_integral,
    hecke_period_crosscheck,
    l_stability,
    l_value,
    parity_residuals,
    period_hompoly,
    period_identity,
    period_poly_delta,
    s_residual,
    tau,
)
from qmflab.polyspace import basis_W


def test_delta_coeffs_against_oracle():
    N = 150
    assert list(delta_coeffs(N).coeffs) == tau_naive(N)
    q = delta_coeffs(10)
    assert q.a(1) == 1 and q.a(2) == -24 and q.a(6) == -6048 == q.a(2) * q.a(3)
    with pytest.raises(ValueError):
        delta_coeffs(0)


def test_l_values_against_dirichlet_series():
    for s in (10, 11):
        assert abs(l_value(s) - l_delta_dirichlet(s)) < 1e-9 * abs(l_value(s))


def test_functional_equation():
    for s in (1, 2, 3, 4, 5):
        assert abs(completed_L(s) - completed_L(12 - s)) < mpmath.mpf(10) ** -25
    assert abs(completed_L(Fraction(37, 10)) - completed_L(12 - Fraction(37, 10))) < mpmath.mpf(10) ** -25


def test_l_stability():
    assert l_stability() < 1e-9


def test_period_polynomial_shape():
    r = period_poly_delta()
    assert len(r) == 11
    # odd powers of Y carry the real moments, even powers the imaginary ones
    for i, c in enumerate(r):
        if (10 - i) % 2:
            assert abs(c.imag) < 1e-15 * abs(c)
        else:
            assert abs(c.real) < 1e-15 * abs(c)


def test_parity_parts_in_W():
    res = parity_residuals()
    assert res["+"] < 1e-6 and res["-"] < 1e-6
    assert s_residual() < 1e-6
    # the odd part is a real multiple of the exact odd basis vector
    odd = basis_W(10, "-")[0]
    r = period_hompoly()
    ratio = r.coeffs[1] / float(odd.coeffs[1])
    for c, b in zip(r.coeffs[1::2], odd.coeffs[1::2]):
        assert abs(c - ratio * float(b)) < 1e-12 * abs(ratio)


def test_eichler_integral_periodic_and_decays():
    for x in ("1/3", "-2/5", "0"):
        x = Fraction(x)
        assert eichler_integral(x + 1) == eichler_integral(x)
    # high frequencies contribute almost nothing: truncation at 50 vs 200
    assert abs(eichler_integral(Fraction(1, 3), 50) - eichler_integral(Fraction(1, 3), 200)) < 1e-8


@pytest.mark.parametrize("x", ["1/3", "2/5", "1/7"])
def test_period_identity(x):
    pi = period_identity(x)
    assert pi.error < 1e-5


def test_period_identity_rejects_zero():
    with pytest.raises(ZeroDivisionError):
        period_identity(0)


@pytest.mark.parametrize("n,expected", [(2, -24), (3, 252), (4, -1472), (5, 4830), (6, -6048)])
def test_hecke_crosscheck(n, expected):
    hc = hecke_period_crosscheck(n)
    assert hc.tau == expected == tau(n)
    assert hc.passed
    assert abs(hc.scalar - expected) < 1e-5 * abs(expected)


def test_hecke_crosscheck_range():
    with pytest.raises(ValueError):
        hecke_period_crosscheck(7)
