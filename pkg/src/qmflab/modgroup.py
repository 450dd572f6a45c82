"""Gamma_0(2), the multiplier system chi, and Hecke coset data for chi -> chi^p.

Gamma_0(2) is generated by T = (1 1; 0 1) and R = (1 0; 2 1) together with
-I = (R T^-1)^2.  The multiplier chi used throughout has chi(T) = chi(R) =
zeta_24, so chi of a word is zeta_24 to the weighted exponent sum.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Callable

from .exactnum import IDENTITY, Mat2Z, R, S, T, Zeta24

GENERATORS = {"T": T, "R": R}


class NotInGroupError(ValueError):
    pass


@dataclass(frozen=True)
class Word:
    """sign * prod(gen ** exp) over ``factors``, a tuple of (name, exp)."""

    sign: int
    factors: tuple = ()

    def to_matrix(self) -> Mat2Z:
        M = IDENTITY
        for name, e in self.factors:
            M = M @ GENERATORS[name] ** e
        return M if self.sign == 1 else -M

    def exponent_sums(self) -> tuple[int, int]:
        t = sum(e for g, e in self.factors if g == "T")
        r = sum(e for g, e in self.factors if g == "R")
        return t, r

    def __str__(self):
        body = " ".join(f"{g}^{e}" for g, e in self.factors) or "I"
        return body if self.sign == 1 else f"-{body}"


def _simplify(factors) -> tuple:
    out = []
    for g, e in factors:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            e2 = out[-1][1] + e
            out.pop()
            if e2:
                out.append((g, e2))
        else:
            out.append((g, e))
    return tuple(out)


def in_gamma0(M: Mat2Z, N: int) -> bool:
    return M.det == 1 and M.c % N == 0


def _nearest(num: int, den: int) -> int:
    """round(num / den), ties toward +infinity, exact."""
    return (2 * num + den) // (2 * den) if den > 0 else (-2 * num - den) // (-2 * den)


def decompose_gamma02(gamma: Mat2Z, strategy: str = "left", rng: random.Random | None = None) -> Word:
    """Write gamma in Gamma_0(2) as a signed word in T and R.

    ``strategy="left"`` reduces the first column by left multiplication,
    ``"right"`` reduces the bottom row by right multiplication.  With ``rng``
    a few random generator powers are stripped first, giving yet another
    valid word for the same matrix.
    """
    if not in_gamma0(gamma, 2):
        raise NotInGroupError(f"{gamma} is not in Gamma_0(2)")
    if strategy == "left":
        return _decompose_left(gamma, rng)
    if strategy == "right":
        return _decompose_right(gamma, rng)
    raise ValueError(f"unknown strategy {strategy!r}")


def _decompose_left(gamma, rng):
    # applied[i] = (g, e): M <- g^e M; at the end M = +-T^b,
    # so gamma = g1^-e1 ... gk^-ek (+-T^b)
    applied = []
    M = gamma
    if rng is not None:
        for _ in range(rng.randint(1, 4)):
            g, e = rng.choice("TR"), rng.randint(-3, 3)
            M = GENERATORS[g] ** e @ M
            applied.append((g, e))
    while M.c != 0:
        q = -_nearest(M.a, M.c)
        if q:
            M = T**q @ M
            applied.append(("T", q))
        if M.c == 0:
            break
        m = -_nearest(M.c, 2 * M.a)
        M = R**m @ M
        applied.append(("R", m))
    sign = 1 if M.a == 1 else -1
    b = M.b * sign
    factors = [(g, -e) for g, e in applied] + [("T", b)]
    return Word(sign, _simplify(factors))


def _decompose_right(gamma, rng):
    # M <- M g^e; at the end M = +-T^b, so gamma = (+-T^b) gk^-ek ... g1^-e1
    applied = []
    M = gamma
    if rng is not None:
        for _ in range(rng.randint(1, 4)):
            g, e = rng.choice("TR"), rng.randint(-3, 3)
            M = M @ GENERATORS[g] ** e
            applied.append((g, e))
    while M.c != 0:
        q = -_nearest(M.d, M.c)
        if q:
            M = M @ T**q
            applied.append(("T", q))
        if M.c == 0:
            break
        m = -_nearest(M.c, 2 * M.d)
        M = M @ R**m
        applied.append(("R", m))
    sign = 1 if M.a == 1 else -1
    b = M.b * sign
    factors = [("T", b)] + [(g, -e) for g, e in reversed(applied)]
    return Word(sign, _simplify(factors))


@dataclass(frozen=True)
class MultSys:
    """Exponents of chi(T) and chi(R) as powers of zeta_24."""

    t_exp: int = 1
    r_exp: int = 1

    def __pow__(self, p: int) -> "MultSys":
        return MultSys(self.t_exp * p % 24, self.r_exp * p % 24)


CHI = MultSys(1, 1)
TRIVIAL = MultSys(0, 0)


def chi_word(word: Word, ms: MultSys = CHI) -> Zeta24:
    t, r = word.exponent_sums()
    return Zeta24(ms.t_exp * t + ms.r_exp * r)


def chi_eval(gamma: Mat2Z, ms: MultSys = CHI, strategy: str = "left") -> Zeta24:
    return chi_word(decompose_gamma02(gamma, strategy), ms)


# ---------------------------------------------------------------- Gamma_0(M) cosets


def gamma0_index(M: int) -> int:
    """[SL2(Z) : Gamma_0(M)] = M prod_{q | M} (1 + 1/q)."""
    idx = Fraction(M)
    n = M
    q = 2
    while q * q <= n:
        if n % q == 0:
            idx *= Fraction(q + 1, q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        idx *= Fraction(n + 1, n)
    return int(idx)


def p1_normalize(u: int, v: int, N: int) -> tuple[int, int]:
    """Canonical representative of (u : v) in P^1(Z/N) modulo units."""
    u %= N
    v %= N
    if N == 1:
        return (0, 0)
    g = gcd(u, N)
    Ng = N // g
    # scale u to g with a unit s, s*u' = 1 mod N/g where u = g u'
    s0 = pow(u // g, -1, Ng) if Ng > 1 else 0
    s = s0
    while gcd(s, N) != 1:
        s += Ng
    v = v * s % N
    # the stabilizer of g is {t unit : t = 1 mod N/g}
    best = v
    t = 1
    for _ in range(g):
        if gcd(t, N) == 1:
            cand = v * t % N
            if cand < best:
                best = cand
        t += Ng
    return (g % N, best)


@dataclass
class CosetTable:
    """Right cosets Gamma_0(M) g <-> bottom rows (c : d) in P^1(Z/M)."""

    level: int
    points: list = field(default_factory=list)
    index: dict = field(default_factory=dict)
    reps: list = field(default_factory=list)
    action: dict = field(default_factory=dict)  # gen name -> list of point indices

    def point_of(self, M: Mat2Z) -> int:
        return self.index[p1_normalize(M.c, M.d, self.level)]

    def __len__(self):
        return len(self.points)


SL2_GENS = {"S": S, "T": T}


@lru_cache(maxsize=64)
def coset_table(M: int) -> CosetTable:
    """Breadth-first transversal of Gamma_0(M) in SL2(Z) over the generators S, T."""
    tab = CosetTable(M)
    start = p1_normalize(0, 1, M)
    tab.points.append(start)
    tab.index[start] = 0
    tab.reps.append(IDENTITY)
    queue = deque([0])
    while queue:
        i = queue.popleft()
        rep = tab.reps[i]
        for g in SL2_GENS.values():
            nxt = rep @ g
            key = p1_normalize(nxt.c, nxt.d, M)
            if key not in tab.index:
                tab.index[key] = len(tab.points)
                tab.points.append(key)
                tab.reps.append(nxt)
                queue.append(tab.index[key])
    for name, g in SL2_GENS.items():
        tab.action[name] = [tab.point_of(rep @ g) for rep in tab.reps]
    return tab


def schreier_generators(M: int) -> list[Mat2Z]:
    """Schreier generators rep_i g rep_{i.g}^-1 of Gamma_0(M), without I and repeats."""
    if M < 1:
        raise ValueError("level must be positive")
    tab = coset_table(M)
    out = []
    seen = set()
    for i, rep in enumerate(tab.reps):
        for name, g in SL2_GENS.items():
            j = tab.action[name][i]
            gen = rep @ g @ tab.reps[j].inverse()
            if gen == IDENTITY or gen in seen:
                continue
            seen.add(gen)
            out.append(gen)
    return out


# ---------------------------------------------------------------- compatibility


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % q for q in range(2, isqrt(n) + 1))


def conjugate_by_alpha(gamma: Mat2Z, p: int) -> Mat2Z:
    """alpha^-1 gamma alpha for alpha = diag(1, p): (a, p b; c / p, d)."""
    if gamma.c % p:
        raise ValueError(f"{gamma} has c not divisible by {p}")
    return Mat2Z(gamma.a, p * gamma.b, gamma.c // p, gamma.d)


@dataclass
class CompatReport:
    p: int
    pairs: list  # (gamma, chi(gamma), chi(conj)^p)
    spot_checks: int
    spot_failures: list

    @property
    def passed(self) -> bool:
        return all(l == r for _, l, r in self.pairs) and not self.spot_failures


def compat_pair(gamma: Mat2Z, p: int, ms: MultSys = CHI) -> tuple[Zeta24, Zeta24]:
    return chi_eval(gamma, ms), chi_eval(conjugate_by_alpha(gamma, p), ms) ** p


def compat_check(p: int, spot: int = 50, seed: int = 0) -> CompatReport:
    """chi(gamma) = chi(alpha^-1 gamma alpha)^p on generators of Gamma_0(2p).

    Both sides are characters of gamma, so equality on a generating set
    gives equality on the whole group; ``spot`` random products of
    generators are checked as well.
    """
    if not is_prime(p) or p < 5:
        raise ValueError(f"p must be a prime >= 5, got {p}")
    gens = schreier_generators(2 * p)
    pairs = []
    for g in gens:
        lhs, rhs = compat_pair(g, p)
        pairs.append((g, lhs, rhs))
    rng = random.Random(seed * 1000003 + p)
    failures = []
    for _ in range(spot):
        M = IDENTITY
        for _ in range(rng.randint(2, 5)):
            g = rng.choice(gens)
            M = M @ (g if rng.random() < 0.5 else g.inverse())
        lhs, rhs = compat_pair(M, p)
        if lhs != rhs:
            failures.append((M, lhs, rhs))
    return CompatReport(p, pairs, spot, failures)


LISTED_GAMMA0_10 = (
    Mat2Z(1, 1, 0, 1),
    Mat2Z(3, -1, 10, -3),
    Mat2Z(19, -7, 30, -11),
    Mat2Z(11, -5, 20, -9),
    Mat2Z(7, -5, 10, -7),
)


# ---------------------------------------------------------------- Hecke cosets


def coset_reps(p: int) -> dict[str, Mat2Z]:
    """Representatives of Gamma_0(2) \\ Gamma_0(2) diag(1, p) Gamma_0(2), keyed '0'..'p-1', 'inf'."""
    if p % 2 == 0:
        raise ValueError("p must be odd (p does not divide 2)")
    reps = {str(j): Mat2Z(1, j, 0, p) for j in range(p)}
    reps["inf"] = Mat2Z(p, 0, 0, 1)
    return reps


def beta_inf_factorization(p: int) -> tuple[Mat2Z, Mat2Z, Mat2Z]:
    """(g1, alpha, g2) with beta_inf = g1 alpha g2, g1 = -T^m R^-1, g2 = T^m R^-1, m = (p+1)/2."""
    m = (p + 1) // 2
    g2 = T**m @ R.inverse()
    return -g2, Mat2Z(1, 0, 0, p), g2


def c_values(p: int, ms: MultSys = CHI, ms_prime: MultSys | None = None) -> dict[str, Zeta24]:
    """c(beta_j) = chi(g1) chi'(g2) from the factorizations beta_j = g1 alpha g2."""
    if ms_prime is None:
        ms_prime = ms**p
    out = {str(j): chi_eval(T**j, ms_prime) for j in range(p)}
    g1, _, g2 = beta_inf_factorization(p)
    out["inf"] = chi_eval(g1, ms) * chi_eval(g2, ms_prime)
    return out


def c_values_closed(p: int) -> dict[str, Zeta24]:
    """c(beta_inf) = (-1)^((p^2-1)/24), c(beta_j) = zeta_24^(p j) for chi' = chi^p."""
    if (p * p - 1) % 24:
        raise ValueError(f"24 does not divide p^2 - 1 for p = {p}")
    out = {str(j): Zeta24(p * j) for j in range(p)}
    out["inf"] = Zeta24(12 * ((p * p - 1) // 24))
    return out


def apply_general_hecke(
    f: Callable[[Fraction], complex],
    p: int,
    weight: int = 1,
    ms: MultSys = CHI,
    ms_prime: MultSys | None = None,
    c: dict | None = None,
) -> Callable[[Fraction], complex]:
    """x -> sum_j c(beta_j)^-1 |c_j x + d_j|^-weight f(beta_j x)."""
    reps = coset_reps(p)
    cv = c if c is not None else c_values(p, ms, ms_prime)
    terms = [(M, cv[key].inverse().to_complex()) for key, M in reps.items()]

    def g(x):
        x = Fraction(x)
        total = 0j
        for M, coef in terms:
            den = M.c * x + M.d
            if den == 0:
                raise ZeroDivisionError(f"{x} is a pole of {M}")
            total += coef * float(abs(den)) ** (-weight) * f(M.mobius(x))
        return total

    return g
