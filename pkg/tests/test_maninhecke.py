from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import manin_brute, tau_naive
from qmflab.exactnum import IDENTITY, Mat2Z
from qmflab.maninhecke import (
    NotEigenvectorError,
    eigenvalue_on_line,
    is_manin,
    manin_set,
    proportionality,
    tilde_T,
)
from qmflab.polyspace import HomPoly, basis_W, in_W

TAU = tau_naive(12)


@pytest.mark.parametrize("n", range(1, 13))
def test_manin_set_matches_brute_force(n):
    assert [M.as_tuple() for M in manin_set(n)] == manin_brute(n)


def test_manin_small():
    assert manin_set(1).mats == (IDENTITY,)
    m2 = manin_set(2)
    assert Mat2Z(2, 0, 0, 1) in m2.mats and Mat2Z(1, 1, 0, 2) in m2.mats
    assert len(set(m2.mats)) == len(m2)
    for n in range(1, 10):
        assert all(M.det == n and is_manin(M, n) for M in manin_set(n))


def test_manin_rejects_bad_n():
    with pytest.raises(ValueError):
        manin_set(0)


def test_tilde_T_identity():
    P = HomPoly.from_coeffs([1, 2, 3, 4, 5])
    assert tilde_T(1, P) == P


@pytest.mark.parametrize("w", [10, 12])
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_tilde_T_preserves_W(n, w):
    for P in basis_W(w):
        assert in_W(tilde_T(n, P))


rat = st.builds(Fraction, st.integers(-100, 100), st.integers(1, 20))


@given(st.lists(rat, min_size=7, max_size=7), st.lists(rat, min_size=7, max_size=7), rat)
def test_tilde_T_linear(a, b, c):
    P, Q = HomPoly.from_coeffs(a), HomPoly.from_coeffs(b)
    assert tilde_T(3, P + Q * c) == tilde_T(3, P) + tilde_T(3, Q) * c


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_eigenvalues_are_tau(n):
    assert eigenvalue_on_line(n, 10, "-") == TAU[n]


def test_tau_multiplicativity_through_eigenvalues():
    lam = {n: eigenvalue_on_line(n, 10, "-") for n in (2, 3, 6)}
    assert lam[6] == lam[2] * lam[3]


def test_p0_eigenvalue_is_divisor_sum():
    # p0 spans the Eisenstein line of W_10^+: eigenvalue sigma_11(n)
    for n in (2, 3, 5):
        sig = sum(d**11 for d in range(1, n + 1) if n % d == 0)
        assert proportionality(HomPoly.p0(10), tilde_T(n, HomPoly.p0(10))) == sig


def test_eigen_errors():
    with pytest.raises(ValueError):
        eigenvalue_on_line(2, 10, "+")  # two-dimensional
    with pytest.raises(NotEigenvectorError):
        proportionality(HomPoly.monomial(10, 3), tilde_T(2, HomPoly.monomial(10, 3)))
    assert proportionality(HomPoly.monomial(2, 0, 2), HomPoly.monomial(2, 0, 3)) == Fraction(3, 2)
