"""Exact and floating-point spectral tools for small integer matrices.

The float route (:func:`eigenvalues_sym`) is LAPACK's symmetric solver with a
residual certificate.  The exact route goes through fraction-free (Bareiss)
determinants and an integer characteristic polynomial; it certifies ties
and violations that the float route can only suggest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

__all__ = [
    "Spectrum",
    "CharPoly",
    "EigensolverError",
    "int_rows",
    "bareiss_det",
    "eigenvalues_sym",
    "char_poly",
    "pseudo_det",
    "det_shifted",
    "edge_form_matrix",
    "max_abs_column_sum",
    "spectral_potential",
    "certified_equal",
    "exceeds_exactly",
    "below_exactly",
]

DEFAULT_TOL = 1e-10


class EigensolverError(RuntimeError):
    def __init__(self, message: str, residual: float = math.inf):
        super().__init__(message)
        self.residual = residual


def int_rows(m, symmetric: bool = False) -> list[list[int]]:
    """Validate a square integer matrix and return it as nested Python ints."""
    arr = np.asarray(m)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    rows = [[int(x) for x in row] for row in arr.tolist()]
    for i, row in enumerate(arr.tolist()):
        for j, x in enumerate(row):
            if x != rows[i][j]:
                raise ValueError(f"entry ({i}, {j}) = {x!r} is not an integer")
    if symmetric:
        n = len(rows)
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i + 1}, {j + 1})")
    return rows


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Gaussian elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues with the worst normalized eigenpair residual."""

    values: np.ndarray
    residual_bound: float

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def tolist(self) -> list[float]:
        return [float(x) for x in self.values]


def eigenvalues_sym(m, tol: float = DEFAULT_TOL) -> Spectrum:
    """Eigenvalues of a symmetric matrix with a residual certificate.

    ``residual_bound`` is ``max_k |M v_k - lam_k v_k| / max(1, |M|_2)``; for a
    symmetric matrix each computed eigenvalue lies within that residual
    (unnormalized) of a true one.
    """
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix is not symmetric")
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver failed: {exc}") from exc
    scale = max(1.0, float(np.max(np.abs(w))) if len(w) else 0.0)
    res = float(np.max(np.linalg.norm(a @ v - v * w, axis=0))) / scale if len(w) else 0.0
    if not res <= tol:
        raise EigensolverError(f"residual {res:.3e} exceeds tolerance {tol:.1e}", res)
    return Spectrum(w, res)


class CharPoly:
    """Monic integer polynomial ``det(xI - M)``; ``coeffs[j]`` multiplies ``x**j``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int]):
        self.coeffs = tuple(int(c) for c in coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return isinstance(other, CharPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"CharPoly({list(self.coeffs)})"

    @property
    def nullity(self) -> int:
        """Multiplicity of the root 0."""
        for j, c in enumerate(self.coeffs):
            if c:
                return j
        return self.degree

    def shifted(self, b) -> list:
        """Coefficients of ``p(x + b)`` (exact; Fractions when ``b`` is)."""
        c = list(self.coeffs)
        n = len(c)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                c[j] = c[j] + b * c[j + 1]
        return c

    @staticmethod
    def _variations(coeffs) -> int:
        signs = [c > 0 for c in coeffs if c != 0]
        return sum(1 for s, t in zip(signs, signs[1:]) if s != t)

    # Descartes' rule is exact for polynomials with only real roots, which is
    # the case for characteristic polynomials of symmetric matrices.
    def roots_above(self, b) -> int:
        return self._variations(self.shifted(b))

    def roots_below(self, b) -> int:
        c = self.shifted(b)
        return self._variations([x if j % 2 == 0 else -x for j, x in enumerate(c)])

    def roots_at(self, b) -> int:
        c = self.shifted(b)
        return next((j for j, x in enumerate(c) if x != 0), len(c) - 1)

    def has_no_negative_roots(self) -> bool:
        return self.roots_below(0) == 0


def _interpolate_integer(values: Sequence[int]) -> list[int]:
    """Monomial coefficients of the integer polynomial with ``p(i) = values[i]``."""
    n = len(values)
    diffs = list(values)
    newton = []
    for k in range(n):
        newton.append(diffs[0])
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    coeffs = [0] * n
    falling = [1]  # x (x-1) ... (x-k+1)
    fact = 1
    for k, dk in enumerate(newton):
        if k:
            fact *= k
        q, r = divmod(dk, fact)
        if r:
            raise ArithmeticError("interpolated polynomial is not integral")
        for j, c in enumerate(falling):
            coeffs[j] += q * c
        nxt = [0] * (len(falling) + 1)
        for j, c in enumerate(falling):
            nxt[j + 1] += c
            nxt[j] -= k * c
        falling = nxt
    return coeffs


def char_poly(m) -> CharPoly:
    """Exact ``det(xI - M)`` by evaluating at ``x = 0..n`` and interpolating."""
    rows = int_rows(m)
    n = len(rows)
    values = []
    for b in range(n + 1):
        shifted = [[(b if i == j else 0) - x for j, x in enumerate(row)] for i, row in enumerate(rows)]
        values.append(bareiss_det(shifted))
    return CharPoly(_interpolate_integer(values))


def det_shifted(m, s: int) -> int:
    """Exact ``det(sI + M)``; with ``s = 1`` and a Kirchhoff matrix this counts rooted spanning forests."""
    rows = int_rows(m)
    return bareiss_det([[x + (s if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(rows)])


def pseudo_det(m, cp: CharPoly | None = None) -> int:
    """Product of the nonzero eigenvalues of a positive semi-definite matrix, exactly."""
    if cp is None:
        int_rows(m, symmetric=True)
        cp = char_poly(m)
    if not cp.has_no_negative_roots():
        raise ValueError("pseudo-determinant requires a positive semi-definite matrix")
    j = cp.nullity
    if j == cp.degree:
        return 1
    return abs(cp.coeffs[j])


def edge_form_matrix(f) -> np.ndarray:
    """``F F^T``: the edge-by-edge companion of ``K = F^T F``."""
    f = np.asarray(f, dtype=np.int64)
    return f @ f.T


def max_abs_column_sum(m) -> int:
    a = np.abs(np.asarray(m, dtype=np.int64))
    return int(a.sum(axis=0).max()) if a.size else 0


def spectral_potential(m, z: float, pseudo: bool = False, spectrum: Spectrum | None = None) -> float:
    """``(1/n) sum log(lam_k - z)``, over nonzero eigenvalues when ``pseudo``.

    At ``z = 0`` with ``pseudo`` the value is computed from the exact
    pseudo-determinant.
    """
    rows = int_rows(m, symmetric=True)
    n = len(rows)
    if pseudo:
        cp = char_poly(rows)
        if z == 0:
            return math.log(pseudo_det(rows, cp)) / n
        lam = (spectrum or eigenvalues_sym(rows)).values[cp.nullity:]
    else:
        if z == 0:
            d = bareiss_det(rows)
            if d <= 0:
                raise ValueError("z = 0 lies in the spectrum; use pseudo=True")
            return math.log(d) / n
        lam = (spectrum or eigenvalues_sym(rows)).values
    shifted = np.asarray(lam, dtype=float) - z
    if np.any(shifted <= 0):
        raise ValueError(f"z = {z} is not below the (nonzero) spectrum")
    return float(np.sum(np.log(shifted))) / n


def certified_equal(cp: CharPoly, eig: float, b, band: float = 1e-6) -> bool:
    """An eigenvalue equals ``b`` iff ``p(b) == 0`` exactly and the float is within ``band``."""
    return abs(eig - float(b)) <= band and cp(_exact(b)) == 0


def exceeds_exactly(cp: CharPoly, k: int, b) -> bool:
    """Whether the k-th smallest eigenvalue (1-based) is strictly above ``b``."""
    return cp.roots_above(_exact(b)) >= cp.degree - k + 1


def below_exactly(cp: CharPoly, k: int, b) -> bool:
    """Whether the k-th smallest eigenvalue (1-based) is strictly below ``b``."""
    return cp.roots_below(_exact(b)) >= k


def _exact(b):
    if isinstance(b, (int, np.integer)):
        return int(b)
    if isinstance(b, Rational):
        return Fraction(b)
    return Fraction(b).limit_denominator(10**12)
