"""Dedekind symbols of even weight w with polynomial reciprocity.

A symbol is a function E(h, k) on h >= 1, k in Z with

    E(h, k + h) = E(h, k)                  (periodicity)
    E(h, k) - E(k, -h) = g(h, k)           (reciprocity, h, k > 0)
    E(c h, c k) = c**w E(h, k)             (homogeneity, c > 0)

Given g in U_w and the value E(1, 0) the symbol is determined and evaluated
by Euclidean descent.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import gcd, lcm

from .polyspace import (
    HomPoly,
    T_LOWER,
    interpolate_hompoly,
    parity_project,
    slash,
)
from .exactnum import IDENTITY, T


class ReciprocityError(ValueError):
    """The polynomial does not lie in U_w."""


def reciprocity_defects(g: HomPoly) -> list[str]:
    """Names of the U_w conditions that g violates (empty if g is in U_w)."""
    bad = []
    three_term = slash(g, T) + slash(g, T_LOWER) - slash(g, IDENTITY)
    if not three_term.is_zero():
        bad.append("g(h+k, k) + g(h, h+k) = g(h, k)")
    if sum(g.coeffs) != 0:
        bad.append("g(1, 1) = 0")
    return bad


def validate_reciprocity(g: HomPoly) -> bool:
    return not reciprocity_defects(g)


class Symbol:
    """Base class: a weight-w Dedekind symbol evaluated by ``E(h, k)``."""

    weight: int

    def __call__(self, h: int, k: int) -> Fraction:
        if h <= 0:
            raise ValueError(f"first argument must be positive, got h={h}")
        return self._eval(int(h), int(k))

    def _eval(self, h: int, k: int) -> Fraction:
        raise NotImplementedError

    def eval(self, h: int, k: int) -> Fraction:
        return self(h, k)

    @property
    def c0(self) -> Fraction:
        """The normalizing value E(1, 0)."""
        return self(1, 0)


class ReconstructedSymbol(Symbol):
    """The symbol with reciprocity polynomial ``recip`` and E(1, 0) = c0."""

    def __init__(self, recip: HomPoly, c0=0):
        self.weight = recip.weight
        self.recip = recip
        self._c0 = Fraction(c0)
        # recip = (1/den) * sum num_i h^i k^(w-i) with integer num_i
        self._den = lcm(*(Fraction(c).denominator for c in recip.coeffs))
        self._num = tuple(int(Fraction(c) * self._den) for c in recip.coeffs)
        # memo: coprime (h, k mod h) -> integer sum of numerators along the descent
        self._memo: dict[tuple[int, int], int] = {}
        self._lock = threading.Lock()

    @property
    def c0(self) -> Fraction:
        return self._c0

    def _g_num(self, h: int, k: int) -> int:
        num = self._num
        w = self.weight
        acc = num[w]
        kp = 1
        for i in range(w - 1, -1, -1):
            kp *= k
            acc = acc * h + num[i] * kp
        return acc

    def _descent(self, h: int, k: int) -> int:
        """sum of den*g over the Euclidean chain from coprime (h, k), 0 <= k < h."""
        memo = self._memo
        path = []
        total = 0
        while True:
            hit = memo.get((h, k))
            if hit is not None:
                total = hit
                break
            if k == 0:  # coprime forces h == 1
                total = 0
                break
            path.append(((h, k), self._g_num(h, k)))
            h, k = k, (-h) % k
        updates = {}
        for key, gv in reversed(path):
            total += gv
            updates[key] = total
        if updates:
            with self._lock:
                memo.update(updates)
        return total

    def _eval(self, h, k):
        g = gcd(h, k)
        h0, k0 = h // g, (k // g) % (h // g)
        s = self._descent(h0, k0)
        return Fraction(g) ** self.weight * (self._c0 + Fraction(s, self._den))

    def eval_cold(self, h: int, k: int) -> Fraction:
        """Evaluate by plain recursion without the memo (used to audit caching)."""
        if h <= 0:
            raise ValueError("h must be positive")
        g = gcd(h, k)
        h, k = h // g, (k // g) % (h // g)
        acc = Fraction(0)
        while k:
            acc += self.recip(h, k)
            h, k = k, (-h) % k
        return Fraction(g) ** self.weight * (self._c0 + acc)

    def clear_cache(self):
        with self._lock:
            self._memo.clear()

    def __repr__(self):
        return f"ReconstructedSymbol(w={self.weight}, c0={self._c0}, recip={self.recip})"


def reconstruct(g: HomPoly, c0=0) -> ReconstructedSymbol:
    """The unique symbol with reciprocity g and E(1, 0) = c0."""
    bad = reciprocity_defects(g)
    if bad:
        raise ReciprocityError("not a reciprocity polynomial; fails " + " and ".join(bad))
    return ReconstructedSymbol(g, c0)


class PowerSymbol(Symbol):
    """F_w(h, k) = h**w."""

    def __init__(self, w: int):
        self.weight = w

    def _eval(self, h, k):
        return Fraction(h**self.weight)

    def __repr__(self):
        return f"F_{self.weight}"


class GcdSymbol(Symbol):
    """G_w(h, k) = gcd(h, k)**w."""

    def __init__(self, w: int):
        self.weight = w

    def _eval(self, h, k):
        return Fraction(gcd(h, k) ** self.weight)

    def __repr__(self):
        return f"G_{self.weight}"


def builtin_F(w: int) -> PowerSymbol:
    return PowerSymbol(w)


def builtin_G(w: int) -> GcdSymbol:
    return GcdSymbol(w)


def divisor_triples(n: int):
    """(a, d, b) with ad = n, d > 0 and 0 <= b < d."""
    for d in range(1, n + 1):
        if n % d == 0:
            a = n // d
            for b in range(d):
                yield a, d, b


class HeckeSymbol(Symbol):
    """(T_n E)(h, k) = sum over ad = n, 0 <= b < d of E(d h, a k + b h)."""

    def __init__(self, base: Symbol, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.weight = base.weight
        self.base = base
        self.n = n
        self._terms = tuple(divisor_triples(n))
        self._recip = None

    def _eval(self, h, k):
        E = self.base
        return sum((E(d * h, a * k + b * h) for a, d, b in self._terms), Fraction(0))

    @property
    def recip(self) -> HomPoly:
        if self._recip is None:
            self._recip = beta(self)
        return self._recip

    def materialize(self) -> ReconstructedSymbol:
        """An equivalent eagerly reconstructed symbol."""
        return reconstruct(self.recip, self(1, 0))

    def __repr__(self):
        return f"T_{self.n}({self.base!r})"


def hecke_symbol(E: Symbol, n: int) -> HeckeSymbol:
    return HeckeSymbol(E, n)


def beta(E: Symbol) -> HomPoly:
    """The reciprocity polynomial E(h, k) - E(k, -h), recovered by interpolation."""
    w = E.weight
    checks = [(2, 2 * j - 1) for j in range(1, w + 1)]
    return interpolate_hompoly(w, lambda h, k: E(h, k) - E(k, -h), checks=checks)


def symbol_parity(E: Symbol, sign: str) -> ReconstructedSymbol:
    """The even or odd part (E(h, k) +- E(h, -k)) / 2 as a reconstructed symbol."""
    g = beta(E) if not isinstance(E, ReconstructedSymbol) else E.recip
    c0 = E.c0 if sign == "+" else 0
    return reconstruct(parity_project(g, sign), c0)
