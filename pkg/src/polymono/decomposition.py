"""Mixed-monotone decomposition functions for univariate polynomials.

``decompose`` builds the global polynomial decomposition ``g(x, y) = q(x) - r(y)``
where ``q'`` and ``r'`` are quadratic forms of PSD matrices ``U`` and ``V``
with ``U - V`` a Gram matrix of ``p'``. ``jacobian_decomposition`` is the
classic local alternative ``g(x, y) = p(x) + L (x - y)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .gram import GramParam, quadratic_form_poly
from .polynomial import Polynomial
from .psd_split import OBJECTIVES, PsdSplit, certify_monotone, solve_split_sdp, split_eigen

METHODS = ("eigen",) + OBJECTIVES

ROOT_SCAN_CELLS = 4096
ROOT_TOL = 1e-10


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise ValueError(f"interval bounds must be finite, got [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise ValueError(f"interval lower bound {self.lo} exceeds upper bound {self.hi}")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __iter__(self):
        return iter((self.lo, self.hi))


@dataclass(frozen=True)
class DecompositionFunction:
    q: Polynomial
    r: Polynomial
    witness_U: np.ndarray | None
    witness_V: np.ndarray | None
    method: str
    source: Polynomial
    split: PsdSplit | None = field(default=None, repr=False)

    def __call__(self, x, y):
        return self.q(x) - self.r(y)

    @classmethod
    def from_pair(cls, q: Polynomial, r: Polynomial, source: Polynomial | None = None,
                  method: str = "given") -> DecompositionFunction:
        """Wrap given ``q`` and ``r``; PSD witnesses are searched for, not trusted."""
        witnesses = []
        for s in (q.derivative(), r.derivative()):
            cert = certify_monotone(GramParam.of(s), "increasing")
            witnesses.append(None if cert is None else cert.gram)
        return cls(q, r, witnesses[0], witnesses[1], method, source if source is not None else q - r)

    def to_json(self) -> dict:
        out = {
            "method": self.method,
            "source": self.source.to_json(),
            "q": self.q.to_json(),
            "r": self.r.to_json(),
        }
        if self.split is not None:
            s = self.split.to_json()
            out.update(alpha=s.pop("alpha"), U=s.pop("U"), V=s.pop("V"), split=s)
        else:
            out.update(
                alpha=[],
                U=None if self.witness_U is None else linalg.to_json(self.witness_U),
                V=None if self.witness_V is None else linalg.to_json(self.witness_V),
            )
        return out


def evaluate_g(df, x, y):
    return df(x, y)


def decompose(p: Polynomial, method: str = "frobenius") -> DecompositionFunction:
    """Polynomial decomposition of ``p`` valid on the whole real line."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    gp = GramParam.of(p.derivative())
    split = split_eigen(gp) if method == "eigen" else solve_split_sdp(gp, method)
    q = quadratic_form_poly(split.U).antiderivative(p(0.0))
    r = quadratic_form_poly(split.V).antiderivative(0.0)
    return DecompositionFunction(q, r, split.U, split.V, split.method, p, split)


@dataclass(frozen=True)
class JacobianDecomposition:
    p: Polynomial
    L: float
    domain: Interval

    def __call__(self, x, y):
        return self.p(x) + self.L * np.subtract(x, y)

    def to_json(self) -> dict:
        return {"method": "jacobian", "p": self.p.to_json(), "L": self.L,
                "domain": [self.domain.lo, self.domain.hi]}


def _scan_grid(domain: Interval, cells: int = ROOT_SCAN_CELLS) -> np.ndarray:
    return np.linspace(domain.lo, domain.hi, cells + 1)


def real_roots_in_interval(p: Polynomial, domain: Interval) -> list[float]:
    """Sign-change roots of ``p`` in ``domain`` by grid scan and bisection.

    Even-multiplicity (touching) roots are only found if they land on a grid
    point; callers that need extrema also evaluate the scan grid.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    xs = _scan_grid(domain)
    if domain.width == 0.0:
        return [domain.lo] if p(domain.lo) == 0.0 else []
    fs = p(xs)
    roots = [float(x) for x, f in zip(xs, fs) if f == 0.0]
    for i in np.nonzero(fs[:-1] * fs[1:] < 0.0)[0]:
        a, b, fa = float(xs[i]), float(xs[i + 1]), float(fs[i])
        for _ in range(200):
            mid = 0.5 * (a + b)
            fm = p(mid)
            if abs(fm) <= ROOT_TOL and b - a <= 1e-12 * max(1.0, abs(mid)) or mid in (a, b):
                break
            if fm == 0.0:
                a = b = mid
                break
            if (fm < 0.0) == (fa < 0.0):
                a, fa = mid, fm
            else:
                b = mid
        roots.append(0.5 * (a + b))
    roots.sort()
    out: list[float] = []
    for x in roots:
        if not out or x - out[-1] > 1e-8:
            out.append(x)
    return out


def extremum_candidates(p: Polynomial, domain: Interval) -> np.ndarray:
    """Endpoints, interior critical points and the scan grid of ``domain``."""
    pts = [domain.lo, domain.hi]
    dp = p.derivative()
    if not dp.is_zero():
        pts += real_roots_in_interval(dp, domain)
    return np.concatenate([np.array(pts), _scan_grid(domain)])


def jacobian_decomposition(p: Polynomial, domain: Interval) -> JacobianDecomposition:
    """``g(x, y) = p(x) + L (x - y)`` with ``L = max |p'|`` over ``domain``."""
    dp = p.derivative()
    cand = extremum_candidates(dp, domain)
    return JacobianDecomposition(p, float(np.max(np.abs(dp(cand)))), domain)


@dataclass
class ValidationReport:
    embedding_residual: float
    q_prime_min: float
    witness_U_min_eig: float | None
    r_prime_min: float
    witness_V_min_eig: float | None
    embedding_ok: bool
    increasing_ok: bool
    decreasing_ok: bool

    @property
    def ok(self) -> bool:
        return self.embedding_ok and self.increasing_ok and self.decreasing_ok

    def to_json(self) -> dict:
        return {
            "embedding_residual": self.embedding_residual,
            "q_prime_min": self.q_prime_min,
            "witness_U_min_eig": self.witness_U_min_eig,
            "r_prime_min": self.r_prime_min,
            "witness_V_min_eig": self.witness_V_min_eig,
            "embedding_ok": self.embedding_ok,
            "increasing_ok": self.increasing_ok,
            "decreasing_ok": self.decreasing_ok,
            "ok": self.ok,
        }


def _coeff_residual(a: Polynomial, b: Polynomial) -> float:
    d = a - b
    return max(abs(c) for c in d.coeffs) / max(1.0, max(abs(c) for c in b.coeffs))


def _monotone_check(s: Polynomial, witness, samples: np.ndarray) -> tuple[float, float | None, bool]:
    vals = s(samples)
    # rounding scale of Horner at each sample
    mags = Polynomial([abs(c) for c in s.coeffs])(np.abs(samples))
    sample_ok = bool(np.all(vals >= -1e-8 * (1.0 + mags)))
    if witness is None:
        return float(vals.min()), None, False
    lam = linalg.min_eigenvalue(witness)
    witness_ok = (lam >= -1e-8 * max(1.0, linalg.frobenius_norm(witness))
                  and _coeff_residual(quadratic_form_poly(witness), s) <= 1e-8)
    return float(vals.min()), lam, sample_ok and witness_ok


def validate(df: DecompositionFunction, samples: int = 10_000, span: float = 10.0) -> ValidationReport:
    """Check embedding, increase in x and decrease in y for ``df``."""
    xs = np.linspace(-span, span, samples)
    emb = _coeff_residual(df.q - df.r, df.source)
    qmin, ulam, inc_ok = _monotone_check(df.q.derivative(), df.witness_U, xs)
    rmin, vlam, dec_ok = _monotone_check(df.r.derivative(), df.witness_V, xs)
    return ValidationReport(emb, qmin, ulam, rmin, vlam, emb <= 1e-8, inc_ok, dec_ok)
