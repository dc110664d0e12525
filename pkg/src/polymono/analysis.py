"""Tightness of decomposition functions.

The tight envelope (min/max of ``p`` over the interval spanned by the two
arguments) is the narrowest decomposition possible and serves as the yardstick.
Width profiles sample ``g(z + a, z - b)`` and ``g(z - b, z + a)`` on a grid of
centres ``z``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .decomposition import DecompositionFunction, Interval, extremum_candidates
from .polynomial import Polynomial

Evaluator = Callable[[np.ndarray, np.ndarray], np.ndarray]

FIG_OFFSETS_EXAMPLE1 = (1.0, 0.5)
FIG_OFFSETS_LEGENDRE = (0.25, 0.3)
FIG_GRID = 201

LEGENDRE4 = Polynomial([3 / 8, 0.0, -15 / 4, 0.0, 35 / 8])

# Published 4-significant-figure decompositions of the fourth Legendre
# polynomial: q-coefficients and r-coefficients, ascending degree.
REFERENCE_COEFFS = {
    "legendre4-frobenius": (
        (0.375, 0.9206, -1.875, 0.4897, 2.1875, 0.8109),
        (0.0, 0.9206, 1.875, 0.4897, -2.1875, 0.8109),
    ),
    "legendre4-one-norm": (
        (0.375, 8.1767, -1.875, 1.2672, 2.1875, 1.1353),
        (0.0, 8.1767, 1.875, 1.2672, -2.1875, 1.1353),
    ),
    "quadratic-example": (
        (1.0, 0.5, 0.5, 1 / 6),
        (0.0, 0.5, -0.5, 1 / 6),
    ),
    "reach-example": (
        (0.0, 0.7163, 0.2781, 0.03599),
        (0.0, 0.0163, -0.0419, 0.03599),
    ),
}

REFERENCE_SOURCES = {
    "legendre4-frobenius": LEGENDRE4,
    "legendre4-one-norm": LEGENDRE4,
    "quadratic-example": Polynomial([1.0, 0.0, 1.0]),
    "reach-example": Polynomial([0.0, 0.7, 0.32]),
}


def reference_decomposition(name: str) -> DecompositionFunction:
    """A published decomposition as a :class:`DecompositionFunction`.

    ``source`` is ``q - r``. The printed digits are rounded: for
    ``reach-example`` this leaves ``q'`` slightly negative near x = -2.6, so
    that one does not validate.
    """
    q, r = (Polynomial(c) for c in REFERENCE_COEFFS[name])
    return DecompositionFunction.from_pair(q, r, q - r, method="reference:" + name)


class TightEnvelope:
    """The tight decomposition of ``p``: inf over [x, y] if x <= y, else sup over [y, x]."""

    method = "tight"

    def __init__(self, p: Polynomial):
        self.p = p

    def __call__(self, x, y):
        if np.isscalar(x) and np.isscalar(y):
            return tight_envelope(self.p, x, y)
        xs, ys = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return np.array([tight_envelope(self.p, a, b) for a, b in zip(xs.ravel(), ys.ravel())]).reshape(xs.shape)


def tight_envelope(p: Polynomial, x: float, y: float) -> float:
    if x == y:
        return float(p(x))
    vals = p(extremum_candidates(p, Interval(min(x, y), max(x, y))))
    return float(vals.min() if x < y else vals.max())


@dataclass(frozen=True)
class WidthProfile:
    z: np.ndarray
    g_hi: np.ndarray
    g_lo: np.ndarray
    a: float
    b: float

    @property
    def width(self) -> np.ndarray:
        return self.g_hi - self.g_lo

    @property
    def n(self) -> int:
        return len(self.z)

    def to_csv(self, fh=None) -> str | None:
        own = fh is None
        fh = io.StringIO() if own else fh
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["z", "g_hi", "g_lo", "width"])
        for row in zip(self.z, self.g_hi, self.g_lo, self.width):
            w.writerow(["%.12g" % v for v in row])
        return fh.getvalue() if own else None


def width_profile(g: Evaluator, z_lo: float, z_hi: float, a: float, b: float, n: int) -> WidthProfile:
    """Sample ``g(z+a, z-b)`` (upper) and ``g(z-b, z+a)`` (lower) for n centres."""
    if not z_lo < z_hi:
        raise ValueError("z_lo must be below z_hi")
    if n < 2:
        raise ValueError("need at least two grid points")
    if not a > -b:
        raise ValueError("offsets must satisfy a > -b")
    z = np.linspace(z_lo, z_hi, n)
    hi = np.asarray(g(z + a, z - b), dtype=float)
    lo = np.asarray(g(z - b, z + a), dtype=float)
    prof = WidthProfile(z, hi, lo, float(a), float(b))
    if np.any(prof.width < -1e-9):
        raise ArithmeticError("upper curve fell below lower curve; evaluator is not a decomposition")
    return prof


@dataclass(frozen=True)
class Dominance:
    inside: np.ndarray  # per-row: A's interval within B's
    fraction_inside: float
    mean_width_ratio: float

    def to_json(self) -> dict:
        return {"fraction_inside": self.fraction_inside, "mean_width_ratio": self.mean_width_ratio}


def compare(pa: WidthProfile, pb: WidthProfile, tol: float = 1e-9) -> Dominance:
    if pa.n != pb.n or not np.array_equal(pa.z, pb.z) or (pa.a, pa.b) != (pb.a, pb.b):
        raise ValueError("profiles were sampled on different grids or offsets")
    inside = (pa.g_hi <= pb.g_hi + tol) & (pa.g_lo >= pb.g_lo - tol)
    wb = pb.width
    ratio = np.divide(pa.width, wb, out=np.ones_like(wb), where=wb > 1e-12)
    return Dominance(inside, float(inside.mean()), float(ratio.mean()))
