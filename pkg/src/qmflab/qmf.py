"""Weight -w quantum modular forms on SL2(Z) backed by Dedekind symbols.

Forms are callables on Q.  Because equality of functions on Q is not
decidable, two forms "agree" when they agree exactly on a fixed sample set
(see :func:`sample_rationals`); polynomial identities are checked exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .dedekind import (
    GcdSymbol,
    PowerSymbol,
    ReconstructedSymbol,
    Symbol,
    beta,
    divisor_triples,
    hecke_symbol,
    reconstruct,
    symbol_parity,
)
from .polyspace import (
    HomPoly,
    basis_U,
    in_W,
    interpolate_hompoly,
    parity_project,
    rank,
)

STRUCTURED_POINTS = tuple(
    Fraction(x) for x in ("0", "1", "-1", "1/2", "-1/2", "1/3", "-1/3")
)


def sample_rationals(count: int = 200, hmax: int = 10**4, seed: int = 0) -> list[Fraction]:
    """Deterministic test points: the structured points plus ``count`` seeded rationals."""
    rng = random.Random(seed)
    pts = list(STRUCTURED_POINTS)
    for _ in range(count):
        h = rng.randint(1, hmax)
        k = rng.randint(-3 * h, 3 * h)
        pts.append(Fraction(k, h))
    return pts


class QForm:
    """A function on Q of weight -w."""

    weight: int

    def __call__(self, x) -> Fraction:
        return self._eval(Fraction(x))

    def _eval(self, x: Fraction) -> Fraction:
        raise NotImplementedError


class SymbolForm(QForm):
    """x = k/h  ->  h**(-w) E(h, k)."""

    def __init__(self, symbol: Symbol):
        self.weight = symbol.weight
        self.symbol = symbol

    def _eval(self, x):
        h, k = x.denominator, x.numerator
        return self.symbol(h, k) / Fraction(h) ** self.weight

    def __repr__(self):
        return f"psi({self.symbol!r})"


class GcdPowerForm(QForm):
    """c * (gcd(h, k) / h)**w at x = k/h."""

    def __init__(self, c, w: int):
        self.weight = w
        self.c = Fraction(c)

    def _eval(self, x):
        # x is already in lowest terms, so gcd(h, k) / h = 1 / h
        return self.c / Fraction(x.denominator) ** self.weight

    def __repr__(self):
        return f"gcd_power({self.c}, w={self.weight})"


class HeckeForm(QForm):
    """sum over ad = n, 0 <= b < d of d**w f((a x + b) / d)."""

    def __init__(self, base: QForm, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.weight = base.weight
        self.base = base
        self.n = n
        self._terms = tuple(divisor_triples(n))

    def _eval(self, x):
        f, w = self.base, self.weight
        return sum(
            (Fraction(d) ** w * f((a * x + b) / d) for a, d, b in self._terms),
            Fraction(0),
        )

    def __repr__(self):
        return f"T_{self.n}({self.base!r})"


class ParityForm(QForm):
    """(f(x) +- f(-x)) / 2."""

    def __init__(self, base: QForm, sign: str):
        if sign not in ("+", "-"):
            raise ValueError("sign must be '+' or '-'")
        self.weight = base.weight
        self.base = base
        self.sign = sign

    def _eval(self, x):
        a, b = self.base(x), self.base(-x)
        return (a + b) / 2 if self.sign == "+" else (a - b) / 2


def psi(E: Symbol) -> SymbolForm:
    return SymbolForm(E)


def lemma13_form(c, w: int) -> GcdPowerForm:
    return GcdPowerForm(c, w)


def hecke_qform(f: QForm, n: int) -> HeckeForm:
    return HeckeForm(f, n)


def qform_parity(f: QForm, sign: str) -> ParityForm:
    return ParityForm(f, sign)


def period_value(f: QForm, x) -> Fraction:
    """f(x) - x**w f(-1/x) for x != 0."""
    x = Fraction(x)
    return f(x) - x**f.weight * f(-1 / x)


def hmap(f: QForm) -> HomPoly:
    """H(f)(h, k) = h**w f(k/h) - k**w f(-h/k) as an exact polynomial.

    Interpolated at x = 1..w+2 and verified at x = -1..-w; raises
    NotPolynomialError if the period function is not a polynomial.
    """
    w = f.weight

    def H(h, k):
        return Fraction(h) ** w * f(Fraction(k, h)) - Fraction(k) ** w * f(Fraction(-h, k))

    checks = [(1, -j) for j in range(1, w + 1)]
    return interpolate_hompoly(w, H, checks=checks)


def agree(f: QForm, g: QForm, points) -> list[Fraction]:
    """Points where f and g differ (empty list means agreement)."""
    return [x for x in points if f(x) != g(x)]


def gcd_power_mismatches(f: QForm, hmax: int = 50) -> list[Fraction]:
    """Rationals k/h with h <= hmax, -h <= k <= 2h where f differs from f(0) (gcd/h)^w."""
    closed = lemma13_form(f(0), f.weight)
    bad = []
    for h in range(1, hmax + 1):
        for k in range(-h, 2 * h + 1):
            x = Fraction(k, h)
            if f(x) != closed(x):
                bad.append(x)
    return bad


@dataclass
class DiagramReport:
    weight: int
    checks: list = field(default_factory=list)  # (name, passed, detail)

    def add(self, name: str, passed: bool, detail: str = ""):
        self.checks.append((name, bool(passed), detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)


def check_diagram(w: int, points=None) -> DiagramReport:
    """Verify H∘Ψ = β, the parity splitting, and injectivity of Ψ on a basis, exactly."""
    if points is None:
        points = sample_rationals(40, hmax=500, seed=w)
    rep = DiagramReport(w)
    basis = basis_U(w, "both")
    symbols = [reconstruct(g, 0) for g in basis]

    for i, (g, E) in enumerate(zip(basis, symbols)):
        b = beta(E)
        H = hmap(psi(E))
        rep.add(f"beta(E_{i}) = g_{i}", b == g)
        rep.add(f"H(psi(E_{i})) = beta(E_{i})", H == b)
        rep.add(f"H(psi(E_{i})) in W_{w}", in_W(H))

    # parity: projecting before or after every map gives the same answer
    for i, E in enumerate(symbols + [reconstruct(HomPoly.p0(w), 1)]):
        f = psi(E)
        for sign in ("+", "-"):
            Es = symbol_parity(E, sign)
            fs = qform_parity(f, sign)
            rep.add(
                f"psi(E_{i}^{sign}) = psi(E_{i})^{sign}",
                not agree(psi(Es), fs, points),
            )
            rep.add(
                f"H(psi(E_{i})^{sign}) = beta(E_{i})^{sign}",
                hmap(fs) == parity_project(beta(E), sign),
            )
            rep.add(
                f"psi(E_{i}^{sign}) has parity {sign}",
                all(psi(Es)(-x) == (1 if sign == "+" else -1) * psi(Es)(x) for x in points),
            )
    odd = basis_U(w, "-")
    rep.add(f"U_{w}^- dimension", True, f"{len(odd)} (vacuous odd branch)" if not odd else str(len(odd)))

    # injectivity of psi on span(basis symbols, G_w)
    family = symbols + [GcdSymbol(w)]
    matrix = [[psi(E)(x) for x in points] for E in family]
    r = rank(matrix)
    rep.add("psi injective on basis + G_w", r == len(family), f"rank {r} of {len(family)}")
    return rep


def compatibility_mismatches(E: Symbol, n: int, points) -> list[Fraction]:
    """Points where psi(T_n E) and T_n psi(E) differ."""
    return agree(psi(hecke_symbol(E, n)), hecke_qform(psi(E), n), points)


def kernel_forms(w: int, parity: str = "both") -> list[ReconstructedSymbol]:
    """Symbols spanning the kernel of H∘Ψ inside span(U_w basis reconstructions, G_w).

    Found by exact linear algebra on the coefficient vectors of hmap.  With
    parity "-" only the odd reconstructions are used (G_w is even).
    """
    from .polyspace import nullspace

    basis = basis_U(w, parity)
    images = [hmap(psi(reconstruct(g, 0))) for g in basis]
    images.append(hmap(psi(GcdSymbol(w))) if parity != "-" else HomPoly.zero(w))
    rows = [[img.coeffs[i] for img in images] for i in range(w + 1)]
    out = []
    for lam in nullspace(rows, len(images)):
        g = HomPoly.zero(w)
        for coef, b in zip(lam, basis):
            g = g + b * coef
        out.append(reconstruct(g, lam[-1] if parity != "-" else 0))
    return out


def builtin_independence(w: int, points=None) -> int:
    """Rank of psi(F_w), psi(G_w) sampled on ``points`` (2 means linearly independent)."""
    if points is None:
        points = sample_rationals(20, hmax=100, seed=w)
    return rank([[psi(E)(x) for x in points] for E in (PowerSymbol(w), GcdSymbol(w))])
