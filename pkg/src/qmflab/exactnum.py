"""Exact scalars: rationals, powers of the 24th root of unity, 2x2 integer matrices.

Rationals are :class:`fractions.Fraction` (arbitrary precision, always reduced).
Complex values are plain Python ``complex``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

Rat = Fraction
Cplx = complex


def rat_normalize(num: int, den: int) -> Fraction:
    """Reduced fraction with positive denominator. Raises ZeroDivisionError if den == 0."""
    if den == 0:
        raise ZeroDivisionError("rational with zero denominator")
    return Fraction(num, den)


def parse_rat(text) -> Fraction:
    """Parse ``"3"``, ``"-7/12"`` or an int/Fraction into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return rat_normalize(int(num), int(den))
    return Fraction(int(s))


def format_rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# exact values on the axes so that exp=6 gives 1j and not 6e-17+1j
_AXIS = {0: 1 + 0j, 6: 1j, 12: -1 + 0j, 18: -1j}


@dataclass(frozen=True)
class Zeta24:
    """The value zeta_24**exp with zeta_24 = exp(2 pi i / 24)."""

    exp: int = 0

    def __post_init__(self):
        object.__setattr__(self, "exp", self.exp % 24)

    def __mul__(self, other: "Zeta24") -> "Zeta24":
        return Zeta24(self.exp + other.exp)

    def __pow__(self, n: int) -> "Zeta24":
        return Zeta24(self.exp * n)

    def inverse(self) -> "Zeta24":
        return Zeta24(-self.exp)

    def to_complex(self) -> complex:
        return zeta_to_cplx(self)

    def __str__(self):
        return f"zeta24^{self.exp}"

    @classmethod
    def parse(cls, text: str) -> "Zeta24":
        head, _, e = text.partition("^")
        if head != "zeta24" or not e:
            raise ValueError(f"not a zeta24 power: {text!r}")
        return cls(int(e))


ONE24 = Zeta24(0)
ZETA24 = Zeta24(1)


def zeta_to_cplx(z: Zeta24) -> complex:
    if z.exp in _AXIS:
        return _AXIS[z.exp]
    return cmath.exp(2j * math.pi * z.exp / 24)


@dataclass(frozen=True)
class Mat2Z:
    """Integer matrix (a b; c d)."""

    a: int
    b: int
    c: int
    d: int

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, o: "Mat2Z") -> "Mat2Z":
        return Mat2Z(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    __mul__ = __matmul__

    def __neg__(self) -> "Mat2Z":
        return Mat2Z(-self.a, -self.b, -self.c, -self.d)

    def adjugate(self) -> "Mat2Z":
        return Mat2Z(self.d, -self.b, -self.c, self.a)

    def inverse(self) -> "Mat2Z":
        """Inverse in SL2(Z); only defined for determinant 1."""
        if self.det != 1:
            raise ValueError(f"{self} is not invertible over Z with det 1")
        return self.adjugate()

    def __pow__(self, n: int) -> "Mat2Z":
        base = self if n >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(n)):
            out = out @ base
        return out

    def mobius(self, x: Fraction) -> Fraction:
        """(a x + b) / (c x + d) for rational x; ZeroDivisionError at the pole."""
        x = Fraction(x)
        return (self.a * x + self.b) / (self.c * x + self.d)

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)

    def __str__(self):
        return f"({self.a},{self.b};{self.c},{self.d})"

    @classmethod
    def parse(cls, text: str) -> "Mat2Z":
        parts = [int(t) for t in text.replace(";", ",").split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected four integers a,b,c,d: {text!r}")
        return cls(*parts)


def mat_mul(m1: Mat2Z, m2: Mat2Z) -> Mat2Z:
    return m1 @ m2


IDENTITY = Mat2Z(1, 0, 0, 1)
MINUS_I = Mat2Z(-1, 0, 0, -1)
S = Mat2Z(0, -1, 1, 0)
T = Mat2Z(1, 1, 0, 1)
U = Mat2Z(1, -1, 1, 0)
R = Mat2Z(1, 0, 2, 1)
