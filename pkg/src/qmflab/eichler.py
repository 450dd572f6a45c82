"""Numerical bridge to the cusp form Delta of weight 12 (w = 10).

The period polynomial r(X, Y) = int_0^{i oo} Delta(z) (X z - Y)^10 dz is
assembled from critical L-values.  With z = i t the z^n moment is

    int_0^{i oo} Delta(z) z^n dz = i^(n+1) Lambda(n+1),
    Lambda(s) = (2 pi)^-s Gamma(s) L(Delta, s),

and Lambda is summed with upper incomplete gamma functions after splitting
the Mellin integral at t = 1 and using Delta(i/t) = t^12 Delta(i t).

The one-variable period function is r(1, x): with Q the Eichler integral,
Q(x) - x^10 Q(-1/x) = int_0^{i oo} Delta(u) (x - u)^10 du = r(1, x), the
kernels agreeing because w is even.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import mpmath
import numpy as np

from .maninhecke import tilde_T
from .polyspace import HomPoly, basis_W, parity_project, slash
from .exactnum import S

WEIGHT = 12
W = WEIGHT - 2
DEFAULT_TERMS = 200
DPS = 30


@dataclass(frozen=True)
class CuspFormQexp:
    weight: int
    coeffs: tuple  # coeffs[n] = a_n, coeffs[0] = 0

    def a(self, n: int) -> int:
        return self.coeffs[n]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


def _euler_product(N: int) -> list[int]:
    """prod (1 - q^n) through q^N by the pentagonal number theorem."""
    out = [0] * (N + 1)
    k = 0
    while True:
        lo = k * (3 * k - 1) // 2
        if lo > N:
            break
        sgn = -1 if k % 2 else 1
        out[lo] += sgn
        if k:
            hi = k * (3 * k + 1) // 2
            if hi <= N:
                out[hi] += sgn
        k += 1
    return out


def _series_power(a: list[int], m: int) -> list[int]:
    """a^m for a power series with a[0] = 1 (J. C. P. Miller's recurrence)."""
    N = len(a) - 1
    b = [0] * (N + 1)
    b[0] = 1
    for n in range(1, N + 1):
        s = 0
        for k in range(1, n + 1):
            if a[k]:
                s += ((m + 1) * k - n) * a[k] * b[n - k]
        b[n] = s // n
    return b


@lru_cache(maxsize=8)
def delta_coeffs(N: int) -> CuspFormQexp:
    """tau(1..N) from q prod (1 - q^n)^24."""
    if N < 1:
        raise ValueError("N must be >= 1")
    b = _series_power(_euler_product(N - 1), 24)
    return CuspFormQexp(WEIGHT, (0, *b))


def tau(n: int) -> int:
    return delta_coeffs(max(n, 1)).a(n)


# ---------------------------------------------------------------- L-values


def completed_L(s, terms: int = DEFAULT_TERMS, dps: int = DPS):
    """Lambda(Delta, s) by the incomplete-gamma series; returns an mpf."""
    q = delta_coeffs(terms)
    with mpmath.workdps(dps):
        s = mpmath.mpf(s.numerator) / s.denominator if isinstance(s, Fraction) else mpmath.mpf(s)
        total = mpmath.mpf(0)
        for n in range(1, terms + 1):
            an = q.a(n)
            if not an:
                continue
            a = 2 * mpmath.pi * n
            total += an * (
                mpmath.gammainc(s, a) / a**s + mpmath.gammainc(WEIGHT - s, a) / a ** (WEIGHT - s)
            )
        return +total


def l_value(s, terms: int = DEFAULT_TERMS, dps: int = DPS):
    with mpmath.workdps(dps):
        s = mpmath.mpf(s.numerator) / s.denominator if isinstance(s, Fraction) else mpmath.mpf(s)
        return completed_L(s, terms, dps) * (2 * mpmath.pi) ** s / mpmath.gamma(s)


def l_stability(terms: int = DEFAULT_TERMS) -> float:
    """Largest relative change of L(Delta, s), s = 1..11, when the term count doubles."""
    worst = 0.0
    for s in range(1, WEIGHT):
        a = l_value(s, terms)
        b = l_value(s, 2 * terms)
        worst = max(worst, float(abs(a - b) / abs(b)))
    return worst


@lru_cache(maxsize=4)
def period_poly_delta(terms: int = DEFAULT_TERMS) -> tuple:
    """Coefficients of r(X, Y); entry i multiplies X^i Y^(10-i)."""
    out = []
    for n in range(W + 1):
        moment = (1j) ** (n + 1) * float(completed_L(n + 1, terms))
        out.append(comb(W, n) * (-1) ** (W - n) * moment)
    return tuple(complex(c) for c in out)


def period_hompoly(terms: int = DEFAULT_TERMS) -> HomPoly:
    return HomPoly(W, period_poly_delta(terms))


def _norm(P: HomPoly) -> float:
    return float(np.linalg.norm(np.array(P.coeffs, dtype=complex)))


def projection_residual(P: HomPoly, basis) -> float:
    """Relative least-squares residual of P against the span of exact basis polynomials."""
    v = np.array(P.coeffs, dtype=complex)
    nv = np.linalg.norm(v)
    if nv == 0:
        return 0.0
    if not basis:
        return 1.0
    B = np.array([[float(c) for c in b.coeffs] for b in basis]).T
    res = 0.0
    for part in (v.real, v.imag):
        coef, *_ = np.linalg.lstsq(B, part, rcond=None)
        res += float(np.linalg.norm(B @ coef - part)) ** 2
    return math.sqrt(res) / float(nv)


def parity_residuals(terms: int = DEFAULT_TERMS) -> dict[str, float]:
    r = period_hompoly(terms)
    return {
        sign: projection_residual(parity_project(r, sign), basis_W(W, sign))
        for sign in ("+", "-")
    }


def s_residual(terms: int = DEFAULT_TERMS) -> float:
    """|r + r|S| / |r|."""
    r = period_hompoly(terms)
    return _norm(r + slash(r, S)) / _norm(r)


# ---------------------------------------------------------------- Eichler integral


def eichler_integral(x, N: int = DEFAULT_TERMS) -> complex:
    """10!/(-2 pi i)^11 sum_{n<=N} tau(n) n^-11 e^(2 pi i n x) at rational x."""
    x = Fraction(x)
    k, h = x.numerator, x.denominator
    q = delta_coeffs(N)
    total = 0j
    for n in range(1, N + 1):
        # exact phase n x mod 1
        total += q.a(n) / n ** (W + 1) * cmath.exp(2j * math.pi * ((n * k) % h) / h)
    return math.factorial(W) / (-2j * math.pi) ** (W + 1) * total


def eichler_period(x, N: int = DEFAULT_TERMS) -> complex:
    """Q(x) - x^10 Q(-1/x)."""
    x = Fraction(x)
    if x == 0:
        raise ZeroDivisionError("x = 0")
    return eichler_integral(x, N) - float(x) ** W * eichler_integral(-1 / x, N)


@dataclass
class PeriodIdentity:
    x: Fraction
    eichler: complex
    polynomial: complex

    @property
    def error(self) -> float:
        return abs(self.eichler - self.polynomial)


def period_identity(x, N: int = DEFAULT_TERMS) -> PeriodIdentity:
    x = Fraction(x)
    return PeriodIdentity(x, eichler_period(x, N), period_hompoly().one_variable(float(x)))


# ---------------------------------------------------------------- Hecke cross-check


@dataclass
class HeckeCrosscheck:
    n: int
    tau: int
    scalar: complex  # least-squares ratio image / projection
    rel_residual: float  # |image - tau * v| / |tau * v|

    @property
    def passed(self) -> bool:
        return self.rel_residual < 1e-5


def hecke_period_crosscheck(n: int, terms: int = DEFAULT_TERMS) -> HeckeCrosscheck:
    """tilde_T(n) on the odd part of r against the exact tau(n)."""
    if not 2 <= n <= 6:
        raise ValueError("n must be in 2..6")
    v = parity_project(period_hompoly(terms), "-")
    img = tilde_T(n, v)
    t = tau(n)
    a = np.array(v.coeffs, dtype=complex)
    b = np.array(img.coeffs, dtype=complex)
    scalar = complex(np.vdot(a, b) / np.vdot(a, a))
    rel = float(np.linalg.norm(b - t * a) / (abs(t) * np.linalg.norm(a)))
    return HeckeCrosscheck(n, t, scalar, rel)
