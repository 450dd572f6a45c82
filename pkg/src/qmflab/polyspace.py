"""Homogeneous two-variable polynomials, the slash action, and the spaces W_w, U_w.

A :class:`HomPoly` of weight ``w`` stores ``coeffs[i]`` = coefficient of
``X**i * Y**(w - i)``.  The same vectors describe polynomials ``g(h, k)`` in
the Dedekind-symbol variables under ``X <-> h``, ``Y <-> k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Sequence

from .exactnum import IDENTITY, Mat2Z, S, T, U

PARITIES = ("+", "-", "both")


@dataclass(frozen=True)
class HomPoly:
    weight: int
    coeffs: tuple

    def __post_init__(self):
        if self.weight < 0:
            raise ValueError("weight must be non-negative")
        if len(self.coeffs) != self.weight + 1:
            raise ValueError(
                f"weight {self.weight} needs {self.weight + 1} coefficients, got {len(self.coeffs)}"
            )
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @classmethod
    def zero(cls, w: int) -> "HomPoly":
        return cls(w, (Fraction(0),) * (w + 1))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable) -> "HomPoly":
        cs = tuple(Fraction(c) for c in coeffs)
        return cls(len(cs) - 1, cs)

    @classmethod
    def monomial(cls, w: int, i: int, c=1) -> "HomPoly":
        """c * X**i * Y**(w-i)."""
        cs = [Fraction(0)] * (w + 1)
        cs[i] = Fraction(c)
        return cls(w, tuple(cs))

    @classmethod
    def p0(cls, w: int) -> "HomPoly":
        """X**w - Y**w."""
        return cls.monomial(w, w) - cls.monomial(w, 0)

    def __call__(self, x, y):
        # homogeneous Horner: sum c_i x^i y^(w-i)
        acc = self.coeffs[self.weight]
        ypow = 1
        for i in range(self.weight - 1, -1, -1):
            ypow = ypow * y
            acc = acc * x + self.coeffs[i] * ypow
        return acc

    def __add__(self, other: "HomPoly") -> "HomPoly":
        _check_same_weight(self, other)
        return HomPoly(self.weight, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        _check_same_weight(self, other)
        return HomPoly(self.weight, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "HomPoly":
        return HomPoly(self.weight, tuple(-a for a in self.coeffs))

    def __mul__(self, scalar) -> "HomPoly":
        return HomPoly(self.weight, tuple(scalar * a for a in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def one_variable(self, x):
        """The period-function reading g(x) = P(1, x)."""
        return self(1, x)

    def __str__(self):
        terms = []
        w = self.weight
        for i in range(w, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "*".join(
                s for s in (_power("X", i), _power("Y", w - i)) if s
            ) or "1"
            terms.append(f"({c})*{mono}")
        return " + ".join(terms) if terms else "0"


def _power(v, e):
    if e == 0:
        return ""
    return v if e == 1 else f"{v}^{e}"


def _check_same_weight(p, q):
    if p.weight != q.weight:
        raise ValueError(f"weight mismatch: {p.weight} vs {q.weight}")


@lru_cache(maxsize=4096)
def _slash_matrix(w: int, m: Mat2Z) -> tuple:
    """Integer matrix A with slash(P, m).coeffs[j] = sum_i A[i][j] * P.coeffs[i].

    Row i holds the coefficients of (aX+bY)^i (cX+dY)^(w-i).
    """
    a, b, c, d = m.as_tuple()
    rows = []
    for i in range(w + 1):
        # (aX+bY)^i as coefficients by power of X
        left = [comb(i, s) * a**s * b ** (i - s) for s in range(i + 1)]
        right = [comb(w - i, t) * c**t * d ** (w - i - t) for t in range(w - i + 1)]
        row = [0] * (w + 1)
        for s, ls in enumerate(left):
            if ls:
                for t, rt in enumerate(right):
                    row[s + t] += ls * rt
        rows.append(tuple(row))
    return tuple(rows)


def slash(P: HomPoly, M: Mat2Z) -> HomPoly:
    """(P|M)(X, Y) = P(aX + bY, cX + dY)."""
    w = P.weight
    A = _slash_matrix(w, M)
    out = [0] * (w + 1)
    for i, ci in enumerate(P.coeffs):
        if ci == 0:
            continue
        row = A[i]
        for j in range(w + 1):
            if row[j]:
                out[j] += ci * row[j]
    return HomPoly(w, tuple(out))


def parity_project(P: HomPoly, sign: str) -> HomPoly:
    """(P(X, Y) +- P(X, -Y)) / 2: keep the even or odd powers of Y."""
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    keep = 0 if sign == "+" else 1
    w = P.weight
    return HomPoly(
        w, tuple(c if (w - i) % 2 == keep else c * 0 for i, c in enumerate(P.coeffs))
    )


def is_parity(P: HomPoly, sign: str) -> bool:
    return parity_project(P, sign) == P


# ---------------------------------------------------------------- linear algebra


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : rows @ v = 0}, returned in reduced echelon form.

    Each basis vector has first nonzero entry 1, and the list is ordered by
    the position of that entry.
    """
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    if not basis:
        return []
    echelon, _ = rref(basis)
    return echelon


def solve_vandermonde(nodes: Sequence, values: Sequence) -> list[Fraction]:
    """Exact coefficients c_0..c_n of the polynomial through (nodes[i], values[i])."""
    n = len(nodes)
    rows = [[Fraction(x) ** j for j in range(n)] + [Fraction(v)] for x, v in zip(nodes, values)]
    red, pivots = rref(rows)
    if pivots != list(range(n)):
        raise ValueError("interpolation nodes are not distinct")
    return [red[j][n] for j in range(n)]


class NotPolynomialError(ValueError):
    """Raised when sampled values are inconsistent with a degree-w polynomial."""


def interpolate_hompoly(
    w: int,
    sample: Callable[[int, int], Fraction],
    nodes: Sequence[tuple[int, int]] | None = None,
    checks: Sequence[tuple[int, int]] | None = None,
) -> HomPoly:
    """Recover a weight-w HomPoly P from values P(h, k) = sample(h, k).

    Interpolation uses (1, j) for j = 1..w+2 by default (one redundant node)
    and the result is verified at ``checks``.
    """
    if nodes is None:
        nodes = [(1, j) for j in range(1, w + 3)]
    vals = [Fraction(sample(h, k)) for h, k in nodes]
    if any(h != 1 for h, _ in nodes):
        raise ValueError("interpolation nodes must have first coordinate 1")
    ks = [k for _, k in nodes]
    # P(1, k) = sum_i c_i k^(w-i): univariate in k of degree <= w
    uni = solve_vandermonde(ks[: w + 1], vals[: w + 1])
    P = HomPoly(w, tuple(uni[w - i] for i in range(w + 1)))
    for (h, k), v in zip(nodes[w + 1 :], vals[w + 1 :]):
        if P(h, k) != v:
            raise NotPolynomialError(f"value at {(h, k)} is off the interpolant")
    for h, k in checks or ():
        if P(h, k) != Fraction(sample(h, k)):
            raise NotPolynomialError(f"value at {(h, k)} is off the interpolant")
    return P


# ---------------------------------------------------------------- the spaces


def _check_weight(w):
    if w < 2 or w % 2:
        raise ValueError(f"weight must be an even integer >= 2, got {w}")


def _operator_rows(w: int, terms: Iterable[tuple[int, Mat2Z]]) -> list[list[Fraction]]:
    """Rows of the matrix of P -> sum_j coef_j * (P|M_j) (acting on coefficient vectors)."""
    mat = [[0] * (w + 1) for _ in range(w + 1)]
    for coef, M in terms:
        A = _slash_matrix(w, M)
        for i in range(w + 1):
            for j in range(w + 1):
                mat[j][i] += coef * A[i][j]
    return mat


def _parity_rows(w: int, parity: str) -> list[list[int]]:
    if parity == "both":
        return []
    drop = 1 if parity == "+" else 0  # power of Y with the wrong parity
    rows = []
    for i in range(w + 1):
        if (w - i) % 2 == drop:
            row = [0] * (w + 1)
            row[i] = 1
            rows.append(row)
    return rows


def _basis_from_rows(w: int, rows) -> list[HomPoly]:
    return [HomPoly(w, tuple(v)) for v in nullspace(rows, w + 1)]


U2 = U @ U
T_LOWER = Mat2Z(1, 0, 1, 1)


def W_conditions(w: int) -> list[list]:
    return _operator_rows(w, [(1, IDENTITY), (1, S)]) + _operator_rows(
        w, [(1, IDENTITY), (1, U), (1, U2)]
    )


def U_conditions(w: int) -> list[list]:
    # g(h+k, k) + g(h, h+k) - g(h, k) = 0 and g(1, 1) = 0
    return _operator_rows(w, [(1, T), (1, T_LOWER), (-1, IDENTITY)]) + [[1] * (w + 1)]


@lru_cache(maxsize=None)
def _basis_W(w, parity):
    return tuple(_basis_from_rows(w, W_conditions(w) + _parity_rows(w, parity)))


@lru_cache(maxsize=None)
def _basis_U(w, parity):
    return tuple(_basis_from_rows(w, U_conditions(w) + _parity_rows(w, parity)))


def basis_W(w: int, parity: str = "both") -> list[HomPoly]:
    """Exact basis of W_w = ker(1+S) ∩ ker(1+U+U^2), optionally restricted by parity."""
    _check_weight(w)
    if parity not in PARITIES:
        raise ValueError(f"parity must be one of {PARITIES}")
    return list(_basis_W(w, parity))


def basis_U(w: int, parity: str = "both") -> list[HomPoly]:
    """Exact basis of the polynomial reciprocity space U_w."""
    _check_weight(w)
    if parity not in PARITIES:
        raise ValueError(f"parity must be one of {PARITIES}")
    return list(_basis_U(w, parity))


def in_W(P: HomPoly) -> bool:
    return (P + slash(P, S)).is_zero() and (P + slash(P, U) + slash(P, U2)).is_zero()


def dim_cuspforms(k: int) -> int:
    """dim S_k(SL2(Z)) for even k >= 4."""
    if k < 4 or k % 2:
        raise ValueError(f"k must be even and >= 4, got {k}")
    d = k // 12
    return d - 1 if k % 12 == 2 else d


def coordinates(P: HomPoly, basis: Sequence[HomPoly]) -> list[Fraction] | None:
    """Exact coordinates of P in the span of ``basis``, or None if P is outside it."""
    n = len(basis)
    w = P.weight
    rows = [[b.coeffs[i] for b in basis] + [P.coeffs[i]] for i in range(w + 1)]
    red, pivots = rref(rows)
    if n in pivots:
        return None
    sol = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        sol[pc] = red[r][n]
    return sol
