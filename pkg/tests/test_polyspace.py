from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import sympy_slash, sympy_W_dim
from qmflab.dedekind import validate_reciprocity
from qmflab.exactnum import IDENTITY, MINUS_I, Mat2Z, S, T, U
from qmflab.polyspace import (
    HomPoly,
    NotPolynomialError,
    U2,
    basis_U,
    basis_W,
    dim_cuspforms,
    in_W,
    interpolate_hompoly,
    parity_project,
    rank,
    slash,
)

EVEN_W = list(range(2, 25, 2))
rats = st.builds(Fraction, st.integers(-1000, 1000), st.integers(1, 50))


def polys(w):
    return st.lists(rats, min_size=w + 1, max_size=w + 1).map(HomPoly.from_coeffs)


def test_hompoly_length_checked():
    with pytest.raises(ValueError):
        HomPoly(4, (1, 2, 3))


def test_slash_examples():
    w = 6
    p0 = HomPoly.p0(w)
    assert slash(p0, IDENTITY) == p0
    xy = HomPoly.monomial(2, 1)
    assert slash(xy, S) == -xy
    P = HomPoly.from_coeffs([1, -2, 3, 0, 5, 7, -1])
    assert slash(P, S @ S) == slash(P, MINUS_I) == P


@given(polys(4), st.lists(st.sampled_from(["S", "T", "Ti"]), min_size=1, max_size=6), st.lists(st.sampled_from(["S", "T", "Ti"]), min_size=1, max_size=6))
def test_slash_is_right_action(P, w1, w2):
    gens = {"S": S, "T": T, "Ti": T.inverse()}

    def word(ws):
        M = IDENTITY
        for g in ws:
            M = M @ gens[g]
        return M

    M1, M2 = word(w1), word(w2)
    assert slash(slash(P, M1), M2) == slash(P, M1 @ M2)


@given(polys(6), st.tuples(*(st.integers(-4, 4) for _ in range(4))))
def test_slash_matches_sympy(P, m):
    assert list(slash(P, Mat2Z(*m)).coeffs) == sympy_slash(P.coeffs, m)


def test_parity_project_examples():
    # X^2 + XY
    P = HomPoly(2, (0, 1, 1))
    assert parity_project(P, "+") == HomPoly(2, (0, 0, 1))
    assert parity_project(P, "-") == HomPoly(2, (0, 1, 0))


@given(polys(8))
def test_parity_split(P):
    assert parity_project(P, "+") + parity_project(P, "-") == P


@pytest.mark.parametrize("k,d", [(12, 1), (4, 0), (26, 1), (14, 0), (24, 2)])
def test_dim_cuspforms(k, d):
    assert dim_cuspforms(k) == d


@pytest.mark.parametrize("w", EVEN_W)
def test_W_basis_relations_and_dimensions(w):
    for parity in ("+", "-"):
        B = basis_W(w, parity)
        for P in B:
            assert (P + slash(P, S)).is_zero()
            assert (P + slash(P, U) + slash(P, U2)).is_zero()
            # normalized: first nonzero coefficient is 1
            assert next(c for c in P.coeffs if c != 0) == 1
        if B:
            assert rank([list(P.coeffs) for P in B]) == len(B)
    assert len(basis_W(w, "-")) == dim_cuspforms(w + 2)
    assert len(basis_W(w, "+")) == dim_cuspforms(w + 2) + 1
    assert len(basis_U(w, "-")) == len(basis_W(w, "-"))
    assert in_W(HomPoly.p0(w))
    assert parity_project(HomPoly.p0(w), "+") == HomPoly.p0(w)


@pytest.mark.parametrize("w", [2, 4, 10, 12])
def test_W_dimension_against_sympy(w):
    for parity in ("+", "-"):
        assert len(basis_W(w, parity)) == sympy_W_dim(w, parity)


def test_small_cases():
    assert len(basis_W(10, "-")) == 1
    assert basis_W(2, "-") == []
    assert basis_U(2, "-") == []


def test_basis_rejects_odd_weight():
    with pytest.raises(ValueError):
        basis_W(3)


def test_p0_in_U():
    for w in (2, 6, 10):
        assert validate_reciprocity(HomPoly.p0(w))


def test_interpolation():
    P = HomPoly.from_coeffs([Fraction(1, 3), 0, -2, 5, 1])
    assert interpolate_hompoly(4, P) == P
    with pytest.raises(NotPolynomialError):
        interpolate_hompoly(2, lambda h, k: Fraction(k) ** 3 / h, checks=[(1, -1), (1, -2)])


def test_deterministic_basis_output():
    # golden: the odd line at w = 10
    assert [str(c) for c in basis_W(10, "-")[0].coeffs] == ["0", "1", "0", "-25/4", "0", "21/2", "0", "-25/4", "0", "1", "0"]
    assert basis_W(10, "+") == basis_W(10, "+")
