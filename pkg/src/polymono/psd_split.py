"""Splitting symmetric matrices into differences of PSD matrices.

``eigen_split`` is the constructive split from the spectral decomposition.
``solve_split_sdp`` searches the whole Gram family ``G + L(alpha)`` for the
split minimizing a norm objective; ``certify_monotone`` looks for a PSD (or
NSD) member of the family.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq, minimize

from . import linalg
from .gram import GramParam, assemble

log = logging.getLogger(__name__)

OBJECTIVES = ("frobenius", "one-norm", "one-norm-entrywise")

ADMM_RHO = 1.0
ADMM_TOL = 1e-9
ADMM_MAX_ITER = 20_000
NM_XATOL = 1e-7


class SolverWarning(UserWarning):
    """The iteration cap was reached; the best split found is returned."""


def eigen_split(a) -> tuple[np.ndarray, np.ndarray]:
    """``A = U - V`` with U the positive and V the negated negative spectral part."""
    vals, vecs = linalg.sym_eigen(a)
    u = linalg.reconstruct(np.maximum(vals, 0.0), vecs)
    v = linalg.reconstruct(-np.minimum(vals, 0.0), vecs)
    return u, v


def shift_split(u, v, r) -> tuple[np.ndarray, np.ndarray]:
    """Add the same PSD matrix to both halves; the difference is unchanged."""
    r = linalg.symmetrize(r)
    if linalg.min_eigenvalue(r) < -1e-10:
        raise ValueError("shift matrix is not positive semidefinite")
    return linalg.symmetrize(u) + r, linalg.symmetrize(v) + r


def objective_value(objective: str, u, v) -> float:
    norm = _NORMS[objective]
    return norm(u) + norm(v)


_NORMS: dict[str, Callable[[np.ndarray], float]] = {
    "frobenius": linalg.frobenius_norm,
    "one-norm": linalg.induced_one_norm,
    "one-norm-entrywise": linalg.entrywise_one_norm,
}


@dataclass(frozen=True)
class PsdSplit:
    alpha: tuple[float, ...]
    U: np.ndarray
    V: np.ndarray
    feas_residual: float
    min_eig_U: float
    min_eig_V: float
    objective_value: float
    method: str
    converged: bool = True
    iterations: int = 0

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "alpha": list(self.alpha),
            "U": linalg.to_json(self.U),
            "V": linalg.to_json(self.V),
            "feas_residual": self.feas_residual,
            "min_eig_U": self.min_eig_U,
            "min_eig_V": self.min_eig_V,
            "objective_value": self.objective_value,
            "converged": self.converged,
            "iterations": self.iterations,
        }


@dataclass(frozen=True)
class MonotonicityCertificate:
    direction: str
    alpha: tuple[float, ...]
    min_eig: float
    gram: np.ndarray = field(repr=False)

    def to_json(self) -> dict:
        return {
            "direction": self.direction,
            "alpha": list(self.alpha),
            "min_eig": self.min_eig,
            "gram": linalg.to_json(self.gram),
        }


def make_split(gp: GramParam, alpha, u, v, method: str, objective: str,
               converged: bool = True, iterations: int = 0) -> PsdSplit:
    a = assemble(gp, alpha)
    u, v = linalg.symmetrize(u), linalg.symmetrize(v)
    return PsdSplit(
        alpha=tuple(float(x) for x in np.atleast_1d(alpha)),
        U=u,
        V=v,
        feas_residual=linalg.frobenius_norm(u - v - a),
        min_eig_U=linalg.min_eigenvalue(u),
        min_eig_V=linalg.min_eigenvalue(v),
        objective_value=objective_value(objective, u, v),
        method=method,
        converged=converged,
        iterations=iterations,
    )


def _repair(a: np.ndarray, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Project U, set V = U - A, then shift both by V's negative part so the
    # pair is exactly feasible.
    u = linalg.psd_project(u)
    v = u - a
    return shift_split(u, v, linalg.psd_project(-v))


# -- Nelder-Mead over alpha --------------------------------------------------

def _nelder_mead(fun, m: int, xatol: float, start=None) -> tuple[np.ndarray, float, bool]:
    """Minimize ``fun`` over R^m from ``start`` with +1/-1 coordinate simplices."""
    best = np.zeros(m) if start is None else np.asarray(start, dtype=float)
    best_f = fun(best)
    ok = True
    for step in (1.0, -1.0, 1.0, -1.0):
        simplex = np.vstack([best] + [best + step * e for e in np.eye(m)])
        res = minimize(
            fun, best, method="Nelder-Mead",
            options={"initial_simplex": simplex, "xatol": xatol, "fatol": np.inf,
                     "maxiter": 4000 * max(m, 1), "maxfev": 8000 * max(m, 1)},
        )
        ok = ok and bool(res.success)
        if res.fun < best_f - 1e-14 * max(1.0, abs(best_f)):
            best, best_f = np.asarray(res.x), float(res.fun)
        elif step < 0:
            break
    return best, best_f, ok


def _frobenius_value(gp: GramParam):
    # Only the spectrum is needed during the search, so LAPACK is used here;
    # the final split goes through the Jacobi solver.
    def fun(alpha):
        vals = np.linalg.eigvalsh(assemble(gp, alpha))
        return float(np.linalg.norm(np.maximum(vals, 0.0)) + np.linalg.norm(np.minimum(vals, 0.0)))
    return fun


def _solve_frobenius_nm(gp: GramParam) -> PsdSplit:
    # For a fixed alpha the spectral split is optimal for ||U||_F + ||V||_F:
    # any feasible U dominates A's positive part in the Loewner order on that
    # part's range. Only alpha needs a numerical search.
    if gp.m == 0:
        alpha = np.zeros(0)
        ok = True
    else:
        alpha, _, ok = _nelder_mead(_frobenius_value(gp), gp.m, NM_XATOL)
    u, v = eigen_split(assemble(gp, alpha))
    return make_split(gp, alpha, u, v, "sdp-frobenius", "frobenius", converged=ok)


# -- ADMM over (alpha, U, V) -------------------------------------------------

def _prox_frobenius(x: np.ndarray, lam: float) -> np.ndarray:
    nrm = np.linalg.norm(x)
    return x * max(0.0, 1.0 - lam / nrm) if nrm > 0 else x.copy()


def _prox_entrywise(x: np.ndarray, lam: float) -> np.ndarray:
    return np.sign(x) * np.maximum(np.abs(x) - lam, 0.0)


def _prox_induced_one(x: np.ndarray, lam: float) -> np.ndarray:
    # Moreau: prox of the max-column-l1 norm is x minus the projection onto
    # the dual ball {sum_j max_i |y_ij| <= lam}. Each column of the projection
    # is clipped at a level tau_j that is water-filled from a common multiplier.
    ax = np.abs(x)
    if ax.max(axis=0).sum() <= lam:
        return np.zeros_like(x)
    srt = -np.sort(-ax, axis=0)
    csum = np.cumsum(srt, axis=0)
    k = np.arange(1, x.shape[0] + 1)[:, None]

    def levels(mu):
        return np.maximum(0.0, ((csum - mu) / k).max(axis=0))

    mu = brentq(lambda t: levels(t).sum() - lam, 0.0, csum[-1].max(), xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return x - np.sign(x) * np.minimum(ax, levels(mu)[None, :])


_PROX = {
    "frobenius": _prox_frobenius,
    "one-norm": _prox_induced_one,
    "one-norm-entrywise": _prox_entrywise,
}


def admm_split(gp: GramParam, objective: str, rho: float = ADMM_RHO, tol: float = ADMM_TOL,
               max_iter: int = ADMM_MAX_ITER):
    """Consensus ADMM on min J(U) + J(V) s.t. U - V = G + L(alpha), U, V PSD.

    The affine block (U, V, alpha) is a least-squares projection; the norm and
    PSD-cone copies of U and V have closed-form proxes. ``rho`` is the initial
    penalty and is rebalanced every 10 iterations. Returns the raw
    ``(alpha, U, V, converged, iterations)`` before any feasibility repair.
    """
    prox = _PROX[objective]
    g = gp.base
    bmat = gp.basis_matrix()
    bpinv = np.linalg.pinv(bmat) if gp.m else np.zeros((0, g.size))
    scale = max(1.0, linalg.frobenius_norm(g))
    tol = tol * scale

    u, v = eigen_split(g)
    u1, u2, v1, v2 = u.copy(), u.copy(), v.copy(), v.copy()
    l1, l2, l3, l4 = (np.zeros_like(g) for _ in range(4))
    alpha = np.zeros(gp.m)
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        ub = linalg.symmetrize((u1 - l1 + u2 - l2) / 2.0)
        vb = linalg.symmetrize((v1 - l3 + v2 - l4) / 2.0)
        d = ub - vb - g
        alpha = bpinv @ d.ravel()
        if gp.m:
            d = d - (bmat @ alpha).reshape(g.shape)
        u, v = ub - d / 2.0, vb + d / 2.0

        old = (u1, u2, v1, v2)
        u1 = prox(u + l1, 1.0 / rho)
        u2 = linalg.psd_project(u + l2)
        v1 = prox(v + l3, 1.0 / rho)
        v2 = linalg.psd_project(v + l4)
        l1 = l1 + u - u1
        l2 = l2 + u - u2
        l3 = l3 + v - v1
        l4 = l4 + v - v2

        primal = np.sqrt(sum(np.sum((p - q) ** 2) for p, q in ((u, u1), (u, u2), (v, v1), (v, v2))))
        dual = rho * np.sqrt(sum(np.sum((p - q) ** 2) for p, q in zip(old, (u1, u2, v1, v2))))
        if primal <= tol and dual <= tol:
            converged = True
            break
        # residual balancing; scaled duals follow rho
        if it % 10 == 0 and (primal > 10.0 * dual or dual > 10.0 * primal):
            f = 2.0 if primal > dual else 0.5
            rho *= f
            l1, l2, l3, l4 = l1 / f, l2 / f, l3 / f, l4 / f
    log.debug("admm %s: %d iterations, converged=%s", objective, it, converged)
    return alpha, u2, v2, converged, it


def _solve_admm(gp: GramParam, objective: str, **kw) -> PsdSplit:
    alpha, u, _, converged, it = admm_split(gp, objective, **kw)
    a = assemble(gp, alpha)
    u, v = _repair(a, u)
    # never return something worse than the spectral split at the same alpha
    eu, ev = eigen_split(a)
    if objective_value(objective, eu, ev) < objective_value(objective, u, v):
        u, v = eu, ev
    return make_split(gp, alpha, u, v, "sdp-" + objective, objective,
                      converged=converged, iterations=it)


def solve_split_sdp(gp: GramParam, objective: str = "frobenius", solver: str | None = None,
                    **admm_options) -> PsdSplit:
    """Minimize ``J(U) + J(V)`` over ``alpha`` and PSD splits of ``G + L(alpha)``.

    ``solver`` is ``"nelder-mead"`` (frobenius only; spectral split inside) or
    ``"admm"``; the default picks Nelder-Mead for frobenius and ADMM otherwise.
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}; expected one of {OBJECTIVES}")
    solver = solver or ("nelder-mead" if objective == "frobenius" else "admm")
    if gp.m == 0 and not np.any(gp.base):
        z = np.zeros_like(gp.base)
        return make_split(gp, (), z, z, "sdp-" + objective, objective)
    if solver == "nelder-mead":
        if objective != "frobenius":
            raise ValueError("the nelder-mead solver only handles the frobenius objective")
        split = _solve_frobenius_nm(gp)
    elif solver == "admm":
        split = _solve_admm(gp, objective, **admm_options)
    else:
        raise ValueError(f"unknown solver {solver!r}")
    if not split.converged:
        warnings.warn(f"{split.method}: iteration cap reached, returning best split found",
                      SolverWarning, stacklevel=2)
    return split


def split_eigen(gp: GramParam) -> PsdSplit:
    """Spectral split of the base Gram matrix (alpha = 0), no optimization."""
    alpha = np.zeros(gp.m)
    u, v = eigen_split(assemble(gp, alpha))
    return make_split(gp, alpha, u, v, "eigen", "frobenius")


def certify_monotone(gp: GramParam, direction: str = "increasing") -> MonotonicityCertificate | None:
    """Search for alpha with ``S*(G + L(alpha))`` PSD, S = +1 (increasing) / -1.

    ``None`` only means no certificate was found; it does not prove the
    polynomial is non-monotone.
    """
    if direction not in ("increasing", "decreasing"):
        raise ValueError(f"direction must be 'increasing' or 'decreasing', got {direction!r}")
    sign = 1.0 if direction == "increasing" else -1.0

    def neg_min_eig(alpha):
        return -linalg.min_eigenvalue(sign * assemble(gp, alpha))

    if gp.m == 0:
        alpha = np.zeros(0)
    else:
        alpha, _, _ = _nelder_mead(neg_min_eig, gp.m, 1e-12)
    mat = assemble(gp, alpha)
    lam = linalg.min_eigenvalue(sign * mat)
    if lam < -1e-8 * max(1.0, linalg.frobenius_norm(mat)):
        return None
    return MonotonicityCertificate(direction, tuple(float(x) for x in alpha), lam, mat)
