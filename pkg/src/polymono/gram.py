"""Gram-matrix parameterization of a univariate polynomial.

A polynomial ``s(x)`` of degree ``d`` is written as ``m(x)^T (G + L(alpha)) m(x)``
with monomial vector ``m(x) = (1, x, ..., x^sigma)``. ``G`` is one fixed Gram
matrix; ``L(alpha) = sum(alpha_i * L_i)`` spans every symmetric matrix whose
quadratic form vanishes identically, i.e. every anti-diagonal sums to zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polynomial import Polynomial


def sigma_for_degree(d: int) -> int:
    if d < 0:
        raise ValueError(f"degree must be non-negative, got {d}")
    return d // 2 if d % 2 == 0 else (d + 1) // 2


def null_dimension(sigma: int) -> int:
    return (sigma + 1) * (sigma + 2) // 2 - (2 * sigma + 1)


def base_gram(s: Polynomial) -> np.ndarray:
    """Even powers on the diagonal, odd powers split over the adjacent pair."""
    sigma = sigma_for_degree(s.degree)
    g = np.zeros((sigma + 1, sigma + 1))
    for k, c in enumerate(s.coeffs):
        if k % 2 == 0:
            g[k // 2, k // 2] = c
        else:
            i, j = (k - 1) // 2, (k + 1) // 2
            g[i, j] = g[j, i] = c / 2.0
    return g


def _antidiagonal_positions(sigma: int, k: int) -> list[tuple[int, int]]:
    return [(i, k - i) for i in range(max(0, k - sigma), k // 2 + 1)]


def null_basis(sigma: int) -> list[np.ndarray]:
    """Canonical basis of the matrices with zero anti-diagonal sums.

    On each anti-diagonal the upper-triangle positions are ordered by row.
    Every consecutive pair contributes one matrix: +1 on the symmetric pair
    farther from the diagonal, compensated on the nearer position (-1 on a
    symmetric pair, -2 on a diagonal entry).
    """
    if sigma < 0:
        raise ValueError(f"sigma must be non-negative, got {sigma}")
    n = sigma + 1
    basis = []
    for k in range(2 * sigma + 1):
        pos = _antidiagonal_positions(sigma, k)
        for (i0, j0), (i1, j1) in zip(pos, pos[1:]):
            m = np.zeros((n, n))
            m[i0, j0] = m[j0, i0] = 1.0
            if i1 == j1:
                m[i1, i1] = -2.0
            else:
                m[i1, j1] = m[j1, i1] = -1.0
            basis.append(m)
    return basis


def quadratic_form_poly(m) -> Polynomial:
    """Polynomial ``m(x)^T M m(x)``: coefficient k is the k-th anti-diagonal sum."""
    a = np.asarray(m, dtype=float)
    n = a.shape[0]
    coeffs = [0.0] * (2 * n - 1)
    for i in range(n):
        for j in range(n):
            coeffs[i + j] += a[i, j]
    return Polynomial(coeffs)


@dataclass(frozen=True)
class GramParam:
    """All Gram matrices of ``source``: ``base + sum(alpha_i * basis[i])``."""

    sigma: int
    base: np.ndarray
    basis: tuple[np.ndarray, ...]
    source: Polynomial

    @classmethod
    def of(cls, s: Polynomial) -> GramParam:
        sigma = sigma_for_degree(s.degree)
        return cls(sigma, base_gram(s), tuple(null_basis(sigma)), s)

    @property
    def m(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return self.sigma + 1

    def assemble(self, alpha=()) -> np.ndarray:
        return assemble(self, alpha)

    def basis_matrix(self) -> np.ndarray:
        """Basis stacked as columns of vectorized matrices, shape (dim*dim, m)."""
        if not self.basis:
            return np.zeros((self.dim * self.dim, 0))
        return np.column_stack([b.ravel() for b in self.basis])

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma,
            "G": [[float(v) for v in row] for row in self.base],
            "basis": [[[float(v) for v in row] for row in b] for b in self.basis],
        }


def assemble(gp: GramParam, alpha=()) -> np.ndarray:
    alpha = np.atleast_1d(np.asarray(alpha, dtype=float))
    if alpha.size != gp.m:
        raise ValueError(f"expected {gp.m} alpha values, got {alpha.size}")
    out = gp.base.copy()
    for a, b in zip(alpha, gp.basis):
        out += a * b
    return out
