"""Hecke operators on period polynomials via the Manin matrix set Man_n."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactnum import Mat2Z
from .polyspace import HomPoly, basis_W, slash


def is_manin(M: Mat2Z, n: int) -> bool:
    a, b, c, d = M.as_tuple()
    if a * d - b * c != n:
        return False
    if not (a > abs(c) and d > abs(b) and b * c <= 0):
        return False
    # the boundary rules compare with a/2, d/2; doubled to stay in integers
    if b == 0 and not (-a < 2 * c <= a):
        return False
    if c == 0 and not (-d < 2 * b <= d):
        return False
    return True


@dataclass(frozen=True)
class ManinSet:
    n: int
    mats: tuple

    def __iter__(self):
        return iter(self.mats)

    def __len__(self):
        return len(self.mats)


@lru_cache(maxsize=None)
def manin_set(n: int) -> ManinSet:
    """All matrices of Man_n, sorted by (a, b, c, d).

    Since bc <= 0 we have ad = n + bc <= n, which bounds a and d; then
    |b| < d and |c| < a.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    mats = []
    for a in range(1, n + 1):
        for d in range(1, n // a + 1):
            excess = a * d - n  # = bc <= 0
            for b in range(-(d - 1), d):
                if b == 0:
                    if excess != 0:
                        continue
                    cs = range(-(a - 1), a)
                else:
                    if excess % b:
                        continue
                    cs = (excess // b,)
                for c in cs:
                    M = Mat2Z(a, b, c, d)
                    if abs(c) < a and is_manin(M, n):
                        mats.append(M)
    return ManinSet(n, tuple(sorted(mats, key=Mat2Z.as_tuple)))


def tilde_T(n: int, P: HomPoly) -> HomPoly:
    """Sum of P|M over M in Man_n."""
    out = HomPoly.zero(P.weight)
    for M in manin_set(n):
        out = out + slash(P, M)
    return out


class NotEigenvectorError(ValueError):
    pass


def proportionality(v: HomPoly, image: HomPoly):
    """The scalar lam with image == lam * v, or raise NotEigenvectorError."""
    i0 = next((i for i, c in enumerate(v.coeffs) if c != 0), None)
    if i0 is None:
        raise ValueError("zero vector has no eigenvalue")
    lam = image.coeffs[i0] / v.coeffs[i0]
    if image != v * lam:
        raise NotEigenvectorError("image is not proportional to the vector")
    return lam


def eigenvalue_on_line(n: int, w: int, parity: str) -> Fraction:
    """Eigenvalue of tilde_T(n) on a one-dimensional W_w^parity."""
    basis = basis_W(w, parity)
    if len(basis) != 1:
        raise ValueError(f"W_{w}^{parity} has dimension {len(basis)}, expected 1")
    v = basis[0]
    return Fraction(proportionality(v, tilde_T(n, v)))
