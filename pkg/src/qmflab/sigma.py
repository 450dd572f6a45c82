"""Zagier's weight-1 quantum modular form f(x) = q^(1/24) sigma(q), q = e^(2 pi i x).

At a root of unity q = e^(2 pi i k/h) Andrews' identity

    sigma(q) = 1 + sum_{n>=0} (-1)^n q^(n+1) (1-q)(1-q^2)...(1-q^n)

is a finite sum (terms with n >= h contain 1 - q^h = 0).  The partial
products are evaluated with exact integer phase bookkeeping: arg(1 - q^j)
and arg q^(n+1) are rational multiples of pi, so only magnitudes carry
rounding error.  Magnitudes use extended precision; when the estimated
error is too large relative to the result (strong cancellation near cusps
with small denominator) the sum is redone in mpmath.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .exactnum import Zeta24, zeta_to_cplx

H_CAP = 10**6
_LD = np.longdouble
_PI_LD = _LD("3.141592653589793238462643383279502884")
_EPS_LD = float(np.finfo(_LD).eps)
RTOL = 1e-12


@dataclass(frozen=True)
class SigmaEval:
    x: Fraction
    value: complex
    terms: int  # number of nonzero Andrews terms
    backend: str  # "longdouble" or "mpmath"


def _reduce(k: int, h: int) -> tuple[int, int]:
    if h <= 0:
        raise ValueError(f"h must be positive, got {h}")
    g = math.gcd(k, h)
    h //= g
    return (k // g) % h, h


def _phase_tables(k: int, h: int):
    """Integer phases of the Andrews terms in units of pi/(2h), reduced mod 4h."""
    j = np.arange(1, h, dtype=np.int64)
    r = (j * k) % h
    # 1 - e^(2 pi i r/h) = 2 sin(pi r/h) e^(i pi (2r - h)/(2h))
    ph = np.concatenate(([0], np.cumsum(2 * r - h) % (4 * h)))
    n = np.arange(h, dtype=np.int64)
    # q^(n+1) contributes 4(n+1)k, the sign (-1)^n contributes 2hn
    total = (ph + 4 * (((n + 1) * k) % h) + 2 * h * (n % 2)) % (4 * h)
    return r, total


def _sigma_longdouble(k, h):
    r, total = _phase_tables(k, h)
    mags = 2 * np.sin(_PI_LD * r.astype(_LD) / h)
    with np.errstate(over="ignore"):
        P = np.concatenate((np.ones(1, dtype=_LD), np.cumprod(mags)))
    ang = _PI_LD * total.astype(_LD) / (2 * h)
    with np.errstate(invalid="ignore", over="ignore"):
        re = 1 + (P * np.cos(ang)).sum()
        im = (P * np.sin(ang)).sum()
        biggest = float(P.max())
    return complex(float(re), float(im)), biggest


def _sigma_mpmath(k, h, dps):
    with mpmath.workdps(dps + int(math.log10(4 * h)) + 2):
        # roots[m] = e^(i pi m/(2h)) by repeated multiplication; the extra
        # digits above cover the rounding accumulated along the table
        step = mpmath.expj(mpmath.pi / (2 * h))
        roots = [mpmath.mpc(1)]
        for _ in range(4 * h - 1):
            roots.append(roots[-1] * step)
        acc = mpmath.mpc(1)
        mag = mpmath.mpf(1)
        ph = 0
        for n in range(h):
            if n:
                r = (n * k) % h
                # 2 sin(pi r/h) = 2 Im e^(i pi r/h)
                mag *= 2 * roots[2 * r].imag
                ph = (ph + 2 * r - h) % (4 * h)
            tot = (ph + 4 * (((n + 1) * k) % h) + 2 * h * (n % 2)) % (4 * h)
            acc += mag * roots[tot]
        return complex(acc)


def sigma_eval(k: int, h: int) -> SigmaEval:
    return _sigma_eval_reduced(*_reduce(k, h))


@lru_cache(maxsize=1 << 16)
def _sigma_eval_reduced(k: int, h: int) -> SigmaEval:
    if h > H_CAP:
        raise ValueError(f"denominator {h} exceeds the cap {H_CAP}")
    x = Fraction(k, h)
    if h == 1:
        return SigmaEval(x, 2 + 0j, 1, "exact")
    val, biggest = _sigma_longdouble(k, h)
    err = 8 * _EPS_LD * math.sqrt(h) * biggest
    if math.isfinite(biggest) and math.isfinite(abs(val)) and err <= RTOL * max(abs(val), 1.0):
        return SigmaEval(x, val, h, "longdouble")
    # the longdouble value is unreliable here, so size the precision from the
    # largest partial product alone and confirm with extra digits
    if math.isfinite(biggest):
        digits = math.log10(max(biggest, 1.0))
    else:
        digits = 0.15 * h  # log10 of the largest partial product is below ~0.141 h
    dps = int(digits + math.log10(h) + 20)
    val = _sigma_mpmath(k, h, dps)
    while True:
        dps += 20
        again = _sigma_mpmath(k, h, dps)
        if abs(again - val) <= 1e-15 * max(abs(again), 1e-300):
            return SigmaEval(x, again, h, "mpmath")
        val = again


def sigma_at_root(k: int, h: int) -> complex:
    """sigma(e^(2 pi i k/h)) via the finite Andrews sum."""
    return sigma_eval(k, h).value


def f_eval(x) -> complex:
    """f(x) = e^(2 pi i x/24) sigma(e^(2 pi i x))."""
    x = Fraction(x)
    k, h = x.numerator, x.denominator
    # the prefactor has period 24 in x; reduce the exact exponent first
    pre = cmath.exp(2j * math.pi * ((k % (24 * h)) / (24 * h)))
    return pre * sigma_at_root(k, h)


# ---------------------------------------------------------------- formal series


def _mul_trunc(a, b, N):
    out = [0] * (N + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(min(len(b), N + 1 - i)):
                out[i + j] += x * b[j]
    return out


def sigma_series_hypergeometric(N: int) -> list[int]:
    """Coefficients of sum q^(n(n+1)/2) / ((1+q)...(1+q^n)) through q^N."""
    out = [0] * (N + 1)
    inv_prod = [1] + [0] * N  # 1 / ((1+q)...(1+q^n))
    n = 0
    while n * (n + 1) // 2 <= N:
        if n:
            # divide by (1 + q^n): c_i -= c_{i-n}
            for i in range(n, N + 1):
                inv_prod[i] -= inv_prod[i - n]
        s = n * (n + 1) // 2
        for i in range(N + 1 - s):
            out[s + i] += inv_prod[i]
        n += 1
    return out


def sigma_series_andrews(N: int) -> list[int]:
    """Coefficients of 1 + sum (-1)^n q^(n+1) (q;q)_n through q^N."""
    out = [0] * (N + 1)
    out[0] = 1
    poch = [1] + [0] * N
    for n in range(N):
        if n:
            poch = _mul_trunc(poch, [1] + [0] * (n - 1) + [-1], N)
        sgn = -1 if n % 2 else 1
        for i in range(N - n):
            out[n + 1 + i] += sgn * poch[i]
    return out


@dataclass
class SeriesCheck:
    order: int
    hypergeometric: list
    andrews: list
    first_mismatch: int | None

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None


def series_identity_check(N: int) -> SeriesCheck:
    if N < 1:
        raise ValueError("order must be >= 1")
    a = sigma_series_hypergeometric(N)
    b = sigma_series_andrews(N)
    bad = next((i for i in range(N + 1) if a[i] != b[i]), None)
    return SeriesCheck(N, a, b, bad)


# ---------------------------------------------------------------- Hecke image


@lru_cache(maxsize=None)
def _compatible(p: int) -> bool:
    from .modgroup import compat_check

    return compat_check(p).passed


def hecke_sigma_terms(p: int, x, check: bool = True) -> list[complex]:
    """The p + 1 summands of T_p f(x), the f(p x) term first."""
    if p < 5:
        raise ValueError("p must be a prime >= 5")
    if check and not _compatible(p):
        raise ValueError(f"chi and chi^{p} are not compatible at diag(1, {p})")
    x = Fraction(x)
    sign = -1 if ((p * p - 1) // 24) % 2 else 1
    terms = [sign * f_eval(p * x)]
    for j in range(p):
        terms.append(zeta_to_cplx(Zeta24(-p * j)) * f_eval((x + j) / p) / p)
    return terms


def hecke_sigma(p: int, x, check: bool = True) -> complex:
    """(-1)^((p^2-1)/24) f(p x) + (1/p) sum_j zeta_24^(-p j) f((x + j)/p)."""
    return _total(hecke_sigma_terms(p, x, check))


def _total(terms) -> complex:
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def sample_points(count: int, seed: int = 0, hmax: int = 200) -> list[Fraction]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        h = rng.randint(1, hmax)
        out.append(Fraction(rng.randint(-3 * h, 3 * h), h))
    return out


@dataclass
class HeckeRow:
    x: Fraction
    residual: float  # |lhs - rhs|
    size: float  # max(|lhs|, |rhs|)
    scale: float  # summed magnitude of the operator terms entering lhs and rhs

    @property
    def rel(self) -> float:
        """Residual relative to the larger of the values and the term scale."""
        return self.residual / max(self.size, self.scale)


@dataclass
class HeckeImageReport:
    p: int
    tol: float
    rows: list = field(default_factory=list)

    @property
    def worst(self) -> float:
        return max((r.rel for r in self.rows), default=0.0)

    @property
    def max_value_ratio(self) -> float:
        """max |g| / term scale; near 1e-16 when T_p f vanishes identically."""
        return max((r.size / r.scale for r in self.rows if r.scale), default=0.0)

    @property
    def passed(self) -> bool:
        return bool(self.rows) and self.worst <= self.tol


def _abs_sum(terms) -> float:
    return math.fsum(abs(t) for t in terms)


def hecke_translation_check(p: int, count: int = 50, seed: int = 0, tol: float = 1e-10) -> HeckeImageReport:
    """g(x + 1) against zeta_24^p g(x) for g = T_p f at seeded rationals."""
    zp = zeta_to_cplx(Zeta24(p))
    rep = HeckeImageReport(p, tol)
    for x in sample_points(count, seed):
        t0 = hecke_sigma_terms(p, x)
        t1 = hecke_sigma_terms(p, x + 1)
        g0, g1 = _total(t0), _total(t1)
        rep.rows.append(
            HeckeRow(x, abs(g1 - zp * g0), max(abs(g1), abs(g0)), max(_abs_sum(t0), _abs_sum(t1)))
        )
    return rep


def hecke_two_path_check(p: int, count: int = 20, seed: int = 1, tol: float = 1e-12) -> HeckeImageReport:
    """The closed formula against the generic double-coset operator with chi' = chi^p."""
    from .modgroup import apply_general_hecke

    general = apply_general_hecke(f_eval, p)
    rep = HeckeImageReport(p, tol)
    for x in sample_points(count, seed):
        terms = hecke_sigma_terms(p, x)
        a, b = _total(terms), general(x)
        rep.rows.append(HeckeRow(x, abs(a - b), max(abs(a), abs(b)), _abs_sum(terms)))
    return rep


# ---------------------------------------------------------------- cocycle probe

# base points are quadratic irrationals: their rational approximants have
# small partial quotients, keeping f away from the growth near cusps
DEFAULT_BASE_POINTS = (
    (math.sqrt(5) - 1) / 2,
    math.sqrt(2) - 1,
    -(math.sqrt(3) - 1) / 2,
    math.sqrt(7) - 2,
    -(math.sqrt(5) - 2),
    (math.sqrt(13) - 3) / 2,
    -(math.sqrt(6) - 2),
    math.sqrt(10) - 3,
    1 + (math.sqrt(2) - 1) / 2,
    -1 - (math.sqrt(3) - 1) / 3,
)
NEAR_SINGULAR = 1e-3


@dataclass
class ProbeChain:
    base: float
    points: list  # Fraction x_m
    values: list  # complex cocycle values
    diffs: list  # |h(x_m) - h(x_{m-1})|
    note: str = ""

    @property
    def decreasing(self) -> bool:
        return all(b < a for a, b in zip(self.diffs, self.diffs[1:]))


@dataclass
class ProbeReport:
    p: int | None
    chains: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        usable = [c for c in self.chains if not c.note]
        return bool(usable) and all(c.decreasing for c in usable)


def chain_points(x0: float, ms=range(2, 6)) -> list[Fraction]:
    """x_m = x0 + 10^-m rounded to a rational with denominator at most 10^((m+4)//2) <= 10^(m+2)."""
    return [Fraction(x0 + 10.0**-m).limit_denominator(10 ** ((m + 4) // 2)) for m in ms]


def cocycle(func, mult: Zeta24, x: Fraction) -> complex:
    """|2x+1|^-1 func(x/(2x+1)) - mult * func(x)."""
    den = 2 * x + 1
    if den == 0:
        raise ZeroDivisionError("x = -1/2 is the singular point")
    return func(x / den) / float(abs(den)) - zeta_to_cplx(mult) * func(x)


def cocycle_probe(p: int | None = None, base_points=DEFAULT_BASE_POINTS, ms=range(2, 6)) -> ProbeReport:
    """Difference sequences of the R-cocycle of f (or of T_p f) along rational chains."""
    if p is None:
        func, mult = f_eval, Zeta24(1)
    else:
        func, mult = (lambda x: hecke_sigma(p, x)), Zeta24(p)
    rep = ProbeReport(p)
    for x0 in base_points:
        if abs(2 * x0 + 1) < NEAR_SINGULAR:
            rep.chains.append(ProbeChain(x0, [], [], [], note="near-singular: skipped"))
            continue
        pts = chain_points(x0, ms)
        vals, note = [], ""
        for x in pts:
            if 2 * x + 1 == 0:
                note = "sample at -1/2 skipped"
                continue
            vals.append(cocycle(func, mult, x))
        diffs = [abs(b - a) for a, b in zip(vals, vals[1:])]
        rep.chains.append(ProbeChain(x0, pts, vals, diffs, note))
    return rep


def eigen_ratio_probe(p: int, count: int = 30, seed: int = 0, hmax: int = 20) -> list[tuple[Fraction, complex]]:
    """(x, T_p f(x) / f(x)) at seeded rationals; a report only, nothing is asserted."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        h = rng.randint(1, hmax)
        x = Fraction(rng.randint(-h, h), h)
        fx = f_eval(x)
        out.append((x, hecke_sigma(p, x) / fx if fx else complex("nan")))
    return out
