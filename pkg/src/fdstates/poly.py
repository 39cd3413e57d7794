"""
Orthogonal polynomial families used by the closed-form state expressions.

Three families are supported:

* probabilists' Hermite ``He_n``: ``He_{n+1} = x He_n - n He_{n-1}``
* Meixner-Sheffer ``G_n``: ``G_{n+1} = x G_n - 2n(2n-1) G_{n-1}`` (from n = 1)
* generalized Laguerre ``L_n^a`` for any real ``a``

Both Hermite and Meixner-Sheffer are monic with a symmetric Jacobi matrix,
so their roots are obtained as eigenvalues of that matrix and then
polished by Newton steps on the orthonormal form of the polynomial.
"""
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import factorial
from typing import Optional

import numpy as np

from .errors import RootConvergenceError
from .kernels import orthonormal_table

ROOT_TOL = 1e-12
_NEWTON_MAX_ITER = 50


class PolyFamily(str, Enum):
    HERMITE_HE = "HermiteHe"
    MEIXNER_SHEFFER = "MeixnerSheffer"
    LAGUERRE_GEN = "LaguerreGen"


@dataclass(frozen=True)
class PolyTable:
    """Roots of one polynomial of a family, with degree metadata."""

    family: PolyFamily
    degree: int
    roots: np.ndarray
    params: Optional[float] = None

    def residuals(self):
        """Relative root residuals, |P(r)| / (|P'(r)| max(1, |r|))."""
        if self.family is PolyFamily.HERMITE_HE:
            off = hermite_offdiag(self.degree)
        elif self.family is PolyFamily.MEIXNER_SHEFFER:
            off = meixner_sheffer_offdiag(self.degree)
        else:
            raise NotImplementedError("residuals only for Hermite / Meixner-Sheffer")
        return _relative_residual(self.roots, off, self.degree)


def _check_degree(n):
    if int(n) != n or n < 0:
        raise ValueError(f"degree must be a nonnegative integer, got {n!r}")
    return int(n)


def hermite_he(n, x):
    """Probabilists' Hermite polynomial He_n(x) by upward recurrence.

    Works elementwise on arrays.
    """
    n = _check_degree(n)
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = x.copy()
    for k in range(1, n):
        prev, cur = cur, x * cur - k * prev
    return cur if cur.ndim else float(cur)


def meixner_sheffer(n, x):
    """Meixner-Sheffer polynomial G_n(x); G_2 = x^2 - 2, G_3 = x^3 - 14x."""
    return _meixner_sheffer_with_derivative(n, x)[0]


def meixner_sheffer_derivative(n, x):
    """x-derivative G'_n(x) from the differentiated recurrence."""
    return _meixner_sheffer_with_derivative(n, x)[1]


def _meixner_sheffer_with_derivative(n, x):
    n = _check_degree(n)
    x = np.asarray(x, dtype=float)
    g_prev, g = np.ones_like(x), x.copy()
    d_prev, d = np.zeros_like(x), np.ones_like(x)
    if n == 0:
        g, d = g_prev, d_prev
    else:
        for k in range(1, n):
            b = 2 * k * (2 * k - 1)
            g_prev, g, d_prev, d = g, x * g - b * g_prev, d, g + x * d - b * d_prev
    if g.ndim:
        return g, d
    return float(g), float(d)


def laguerre_gen(n, a, x):
    """Generalized Laguerre L_n^a(x) for arbitrary real ``a``.

    Uses the three-term recurrence in n. For strongly negative ``a``
    (e.g. a = -n-1) that recurrence passes through intermediate values many
    orders of magnitude above the result; when the explicit power sum has
    terms of one sign it carries no cancellation and is used instead.
    """
    n = _check_degree(n)
    x = np.asarray(x, dtype=float)
    terms = _laguerre_terms(n, a, x)
    signs = np.sign(terms)
    coherent = np.all((signs >= 0) | (terms == 0), axis=0) | np.all(signs <= 0, axis=0)
    out = np.where(coherent, terms.sum(axis=0), _laguerre_recurrence(n, a, x))
    return out if out.ndim else float(out)


def _laguerre_recurrence(n, a, x):
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 1.0 + a - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + a - x) * cur - (k + a) * prev) / (k + 1)
    return cur


def _laguerre_terms(n, a, x):
    """Terms binom(n+a, n-k) (-x)^k / k!, k = 0..n; binomials as plain products."""
    terms = np.empty((n + 1,) + x.shape)
    for k in range(n + 1):
        binom = 1.0
        for i in range(1, n - k + 1):
            binom *= (a + k + i) / i
        terms[k] = binom * (-x) ** k / factorial(k)
    return terms


def hermite_offdiag(nmax):
    """Jacobi off-diagonal sqrt(b_k) for He, index k = 0..nmax (entry 0 unused)."""
    return np.sqrt(np.arange(nmax + 1, dtype=float))


def meixner_sheffer_offdiag(nmax):
    """Jacobi off-diagonal sqrt(2k(2k-1)) for G, index k = 0..nmax."""
    k = np.arange(nmax + 1, dtype=float)
    return np.sqrt(2 * k * (2 * k - 1))


def hermite_orthonormal(nmax, x):
    """Table ``h[n, i] = He_n(x_i) / sqrt(n!)`` for n = 0..nmax, plus derivatives."""
    x = np.ascontiguousarray(x, dtype=float)
    return orthonormal_table(x, hermite_offdiag(nmax + 1), nmax)


def meixner_sheffer_orthonormal(nmax, x):
    """Table ``g[n, i] = G_n(x_i) / sqrt((2n)!)`` for n = 0..nmax, plus derivatives."""
    x = np.ascontiguousarray(x, dtype=float)
    return orthonormal_table(x, meixner_sheffer_offdiag(nmax + 1), nmax)


def _relative_residual(roots, offdiag, n):
    vals, ders = orthonormal_table(np.ascontiguousarray(roots), offdiag, n)
    return np.abs(vals[n]) / (np.abs(ders[n]) * np.maximum(1.0, np.abs(roots)))


def _jacobi_roots(offdiag, n):
    if n < 1:
        raise ValueError("root degree must be >= 1")
    J = np.diag(offdiag[1:n], 1)
    roots = np.linalg.eigvalsh(J + J.T)
    for _ in range(_NEWTON_MAX_ITER):
        vals, ders = orthonormal_table(roots, offdiag, n)
        step = vals[n] / ders[n]
        roots = roots - step
        if np.all(np.abs(step) <= 4 * np.finfo(float).eps * np.maximum(1.0, np.abs(roots))):
            break
    else:
        raise RootConvergenceError(f"Newton polish did not converge for degree {n}")
    roots = np.sort(roots)
    # enforce exact symmetry about zero
    roots = 0.5 * (roots - roots[::-1])
    res = _relative_residual(roots, offdiag, n)
    if res.max() > ROOT_TOL:
        raise RootConvergenceError(
            f"root residual {res.max():.3g} exceeds {ROOT_TOL:g} at degree {n}"
        )
    roots.setflags(write=False)
    return roots


@lru_cache(maxsize=None)
def hermite_he_roots(n):
    """All roots of He_n, ascending, symmetric about zero (cached, read-only)."""
    n = _check_degree(n)
    return _jacobi_roots(hermite_offdiag(n), n)


@lru_cache(maxsize=None)
def meixner_sheffer_roots(n):
    """All roots of G_n, ascending, symmetric about zero (cached, read-only)."""
    n = _check_degree(n)
    return _jacobi_roots(meixner_sheffer_offdiag(n), n)


def poly_table(family, degree, params=None):
    family = PolyFamily(family)
    if family is PolyFamily.HERMITE_HE:
        roots = hermite_he_roots(degree)
    elif family is PolyFamily.MEIXNER_SHEFFER:
        roots = meixner_sheffer_roots(degree)
    else:
        raise NotImplementedError("Laguerre roots are not needed by any construction")
    return PolyTable(family, degree, roots, params)
