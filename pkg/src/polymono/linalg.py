"""Small dense symmetric matrices: Jacobi eigensolver, PSD tests and norms.

Matrices are plain ``numpy`` arrays. :func:`sym_matrix` is the validating
entry point for external data; internal code symmetrizes defensively.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (off-diagonal residual {residual:.3e})")
        self.residual = residual


class EigenDecomposition(NamedTuple):
    eigvals: np.ndarray  # descending
    eigvecs: np.ndarray  # column i pairs with eigvals[i]


def symmetrize(m) -> np.ndarray:
    a = np.array(m, dtype=float)
    return 0.5 * (a + a.T)


def sym_matrix(rows: Sequence[Sequence[float]], tol: float = 1e-12) -> np.ndarray:
    """Validate a square, finite, symmetric matrix and return it symmetrized."""
    a = np.array(rows, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    if np.max(np.abs(a - a.T)) > tol * max(1.0, np.max(np.abs(a))):
        raise ValueError("matrix is not symmetric")
    return symmetrize(a)


def to_json(m: np.ndarray) -> dict:
    return {"n": int(m.shape[0]), "rows": [[float(v) for v in row] for row in m]}


def from_json(obj: dict) -> np.ndarray:
    m = sym_matrix(obj["rows"])
    if "n" in obj and int(obj["n"]) != m.shape[0]:
        raise ValueError(f"declared n={obj['n']} does not match {m.shape[0]} rows")
    return m


def _off(a: list[list[float]]) -> float:
    n = len(a)
    return math.sqrt(sum(2.0 * a[i][j] ** 2 for i in range(n) for j in range(i + 1, n)))


def sym_eigen(m) -> EigenDecomposition:
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Eigenvalues are returned in descending order. Each eigenvector is signed
    so that its largest-magnitude component (first one on ties) is positive,
    which keeps downstream splits reproducible.
    """
    sm = symmetrize(m)
    n = sm.shape[0]
    # plain lists: for n <= 8 this is much faster than numpy row operations
    a = sm.tolist()
    v = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    scale = math.sqrt(sum(x * x for row in a for x in row))
    target = JACOBI_TOL * scale

    for _ in range(JACOBI_MAX_SWEEPS):
        if _off(a) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if apq == 0.0:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                a[p][p] -= t * apq
                a[q][q] += t * apq
                a[p][q] = a[q][p] = 0.0
                for r in range(n):
                    if r != p and r != q:
                        g, h = a[r][p], a[r][q]
                        a[r][p] = a[p][r] = g - s * (h + g * tau)
                        a[r][q] = a[q][r] = h + s * (g - h * tau)
                    g, h = v[r][p], v[r][q]
                    v[r][p] = g - s * (h + g * tau)
                    v[r][q] = h + s * (g - h * tau)
    else:
        resid = _off(a)
        if resid > target:
            raise ConvergenceError(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps", resid)

    vals = np.array([a[i][i] for i in range(n)])
    vecs = np.array(v)
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    vecs = vecs[:, order]
    for i in range(n):
        col = np.abs(vecs[:, i])
        lead = int(np.argmax(col >= col.max() - 1e-12))
        if vecs[lead, i] < 0.0:
            vecs[:, i] = -vecs[:, i]
    return EigenDecomposition(vals, vecs)


def min_eigenvalue(m) -> float:
    return float(sym_eigen(m).eigvals[-1])


def reconstruct(eigvals: np.ndarray, eigvecs: np.ndarray) -> np.ndarray:
    return symmetrize((eigvecs * eigvals) @ eigvecs.T)


def psd_project(m) -> np.ndarray:
    """Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped)."""
    vals, vecs = sym_eigen(m)
    return reconstruct(np.maximum(vals, 0.0), vecs)


def is_psd(m, tol: float = 1e-8) -> bool:
    return min_eigenvalue(m) >= -tol * max(1.0, frobenius_norm(m))


def frobenius_norm(m) -> float:
    return float(np.sqrt(np.sum(np.asarray(m, dtype=float) ** 2)))


def induced_one_norm(m) -> float:
    """Maximum absolute column sum."""
    return float(np.max(np.sum(np.abs(np.asarray(m, dtype=float)), axis=0)))


def entrywise_one_norm(m) -> float:
    return float(np.sum(np.abs(np.asarray(m, dtype=float))))
