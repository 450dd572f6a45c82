from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmflab.exactnum import (
    IDENTITY,
    MINUS_I,
    Mat2Z,
    R,
    S,
    T,
    Zeta24,
    format_rat,
    mat_mul,
    parse_rat,
    rat_normalize,
    zeta_to_cplx,
)

big = st.integers(min_value=-(10**40), max_value=10**40)
nonzero = big.filter(lambda n: n != 0)
mats = st.builds(Mat2Z, *(st.integers(-50, 50) for _ in range(4)))


@pytest.mark.parametrize(
    "num,den,expected", [(2, 4, Fraction(1, 2)), (3, -6, Fraction(-1, 2)), (0, 7, Fraction(0))]
)
def test_rat_normalize(num, den, expected):
    r = rat_normalize(num, den)
    assert r == expected and r.denominator > 0


def test_rat_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        rat_normalize(1, 0)


def test_rat_format_parse():
    assert format_rat(Fraction(0)) == "0/1"
    assert format_rat(Fraction(-3, 6)) == "-1/2"
    assert parse_rat("-7/12") == Fraction(-7, 12)
    assert parse_rat("5") == 5


@given(big, nonzero, big, nonzero)
def test_rat_addition_is_exact(a, b, c, d):
    s = rat_normalize(a, b) + rat_normalize(c, d)
    assert s * b * d == a * d + c * b


@given(big, nonzero)
def test_rat_roundtrip(a, b):
    r = rat_normalize(a, b)
    assert parse_rat(format_rat(r)) == r


@pytest.mark.parametrize("exp,value", [(0, 1 + 0j), (12, -1 + 0j), (6, 1j)])
def test_zeta_axes(exp, value):
    assert zeta_to_cplx(Zeta24(exp)) == value


@given(st.integers(-1000, 1000))
def test_zeta_cyclic(e):
    z = Zeta24(e)
    assert 0 <= z.exp < 24
    assert z**24 == Zeta24(0)
    assert z * z.inverse() == Zeta24(0)
    assert Zeta24.parse(str(z)) == z
    assert abs(z.to_complex() - zeta_to_cplx(Zeta24(1)) ** e) < 1e-9


def test_zeta_parse_rejects():
    with pytest.raises(ValueError):
        Zeta24.parse("zeta12^3")


def test_matrix_examples():
    assert mat_mul(S, S) == MINUS_I
    M = Mat2Z(3, 7, -2, 5)
    assert mat_mul(IDENTITY, M) == M
    assert (R @ T.inverse()) @ (R @ T.inverse()) == MINUS_I
    assert Mat2Z.parse("1,2,3,4") == Mat2Z(1, 2, 3, 4)


@given(mats, mats)
def test_det_multiplicative(m1, m2):
    assert (m1 @ m2).det == m1.det * m2.det


def test_inverse_requires_det_one():
    with pytest.raises(ValueError):
        Mat2Z(2, 0, 0, 1).inverse()
    assert T**-3 @ T**3 == IDENTITY


def test_mobius_pole():
    with pytest.raises(ZeroDivisionError):
        R.mobius(Fraction(-1, 2))
