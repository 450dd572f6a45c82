from fractions import Fraction

import pytest

from qmflab.dedekind import builtin_F, builtin_G, hecke_symbol, reconstruct
from qmflab.maninhecke import tilde_T
from qmflab.polyspace import HomPoly, basis_U, in_W
from qmflab.qmf import (
    STRUCTURED_POINTS,
    agree,
    builtin_independence,
    check_diagram,
    compatibility_mismatches,
    hecke_qform,
    hmap,
    kernel_forms,
    lemma13_form,
    gcd_power_mismatches,
    period_value,
    psi,
    qform_parity,
    sample_rationals,
)

PTS = sample_rationals(200)


def test_sample_points_deterministic():
    assert sample_rationals(200) == PTS
    assert len(PTS) == 200 + len(STRUCTURED_POINTS)
    assert all(x.denominator <= 10**4 for x in PTS)


@pytest.mark.parametrize("w", [2, 10])
def test_psi_builtins(w):
    F, G = psi(builtin_F(w)), psi(builtin_G(w))
    for x in PTS[:60]:
        assert F(x) == 1
        assert G(x) == Fraction(1, x.denominator) ** w
    E = reconstruct(basis_U(w)[0], Fraction(3, 7))
    assert psi(E)(0) == Fraction(3, 7)


def test_well_defined_on_Q():
    E = reconstruct(basis_U(10)[2], 1)
    # psi reads k/h in lowest terms; the symbol's homogeneity gives the same value
    for h, k in [(6, 4), (15, -10), (9, 27)]:
        x = Fraction(k, h)
        assert psi(E)(x) == E(h, k) / Fraction(h) ** 10


@pytest.mark.parametrize("w", [4, 10, 12])
def test_periodicity_and_period_polynomial(w):
    for g in basis_U(w):
        f = psi(reconstruct(g, 2))
        H = hmap(f)
        assert in_W(H)
        for x in PTS[:80]:
            assert f(x + 1) == f(x)
            if x != 0:
                # one-variable reading: H(1, x) = f(x) - x^w f(-1/x)
                assert period_value(f, x) == H(1, x)


def test_hmap_examples():
    for w in (2, 6, 10):
        assert hmap(psi(builtin_G(w))).is_zero()
        assert hmap(psi(builtin_F(w))) == HomPoly.p0(w)


def test_hecke_qform_identity():
    f = psi(reconstruct(basis_U(10)[1], 1))
    assert not agree(hecke_qform(f, 1), f, PTS)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_hecke_compat_and_period(n):
    for g in basis_U(10):
        E = reconstruct(g, 0)
        assert not compatibility_mismatches(E, n, PTS)
        # period function of the Hecke image is tilde_T applied to the period function
        assert hmap(hecke_qform(psi(E), n)) == tilde_T(n, g)


def test_gcd_power_form():
    assert all(lemma13_form(0, 6)(x) == 0 for x in PTS[:30])
    for w in (2, 6, 10):
        f = lemma13_form(Fraction(5, 3), w)
        assert hmap(f).is_zero()
        assert all(f(x + 1) == f(x) for x in PTS[:30])
        kernel = kernel_forms(w)
        assert len(kernel) == 1
        assert not gcd_power_mismatches(psi(kernel[0]), hmax=50)
        # odd sector: only the zero symbol has zero period function
        assert all(E.recip.is_zero() and E.c0 == 0 for E in kernel_forms(w, "-"))


@pytest.mark.parametrize("w", [2, 10, 12])
def test_check_diagram(w):
    rep = check_diagram(w)
    assert rep.passed, [c for c in rep.checks if not c[1]]
    if w == 2:
        assert any("vacuous" in d for _, _, d in rep.checks)


def test_parity_forms():
    E = reconstruct(basis_U(10)[0] + basis_U(10)[-1], 1)
    f = psi(E)
    for sign, s in (("+", 1), ("-", -1)):
        fs = qform_parity(f, sign)
        assert all(fs(-x) == s * fs(x) for x in PTS[:50])


def test_builtins_independent():
    for w in (2, 4, 10, 12):
        assert builtin_independence(w) == 2


def test_hecke_symbol_psi_commute_on_builtin():
    G = builtin_G(4)
    assert not agree(psi(hecke_symbol(G, 3)), hecke_qform(psi(G), 3), PTS[:50])
