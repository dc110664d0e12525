"""Interval over-approximation of reachable sets of ``x[k+1] = f(x[k]) + u[k]``.

The embedding system propagates an upper and a lower bound through a
decomposition function ``g`` of ``f``; Monte Carlo trajectories check the
result empirically.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass

import numpy as np

from .decomposition import Interval
from .polynomial import Polynomial

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReachSpec:
    f: Polynomial
    u_bounds: Interval
    x0_bounds: Interval
    steps: int

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError(f"steps must be at least 1, got {self.steps}")

    @classmethod
    def from_json(cls, obj: dict) -> ReachSpec:
        return cls(Polynomial.from_json(obj["f"]), Interval(*obj["u"]), Interval(*obj["x0"]), int(obj["steps"]))

    def to_json(self) -> dict:
        return {"f": self.f.to_json(), "u": list(self.u_bounds), "x0": list(self.x0_bounds),
                "steps": self.steps}


@dataclass(frozen=True)
class ReachTube:
    lower: np.ndarray
    upper: np.ndarray
    truncated: bool = False

    @property
    def steps(self) -> int:
        return len(self.lower) - 1

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def to_csv(self, fh=None) -> str | None:
        own = fh is None
        fh = io.StringIO() if own else fh
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "x_lo", "x_hi"])
        for k, (lo, hi) in enumerate(zip(self.lower, self.upper)):
            w.writerow([k, "%.12g" % lo, "%.12g" % hi])
        return fh.getvalue() if own else None


def propagate_embedding(g, spec: ReachSpec) -> ReachTube:
    """Iterate ``hi <- g(hi, lo) + u_hi``, ``lo <- g(lo, hi) + u_lo`` for ``spec.steps`` steps.

    Stops early (``truncated=True``) if the bounds overflow to non-finite values.
    """
    lo, hi = spec.x0_bounds
    lower, upper = [lo], [hi]
    truncated = False
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(spec.steps):
            hi, lo = g(hi, lo) + spec.u_bounds.hi, g(lo, hi) + spec.u_bounds.lo
            if not (np.isfinite(hi) and np.isfinite(lo)):
                truncated = True
                log.warning("tube diverged after %d steps; truncating", len(lower) - 1)
                break
            if lo > hi:
                raise ArithmeticError(f"lower bound {lo} exceeds upper bound {hi}; g is not a decomposition")
            lower.append(float(lo))
            upper.append(float(hi))
    return ReachTube(np.array(lower), np.array(upper), truncated)


def sample_trajectories(spec: ReachSpec, samples: int, seed: int = 0) -> np.ndarray:
    """Random trajectories, shape ``(samples, steps + 1)``.

    Trajectory i draws ``x[0]`` then ``u[0..N-1]`` uniformly from its own PCG64
    stream, spawned from ``SeedSequence(seed)``, so results do not depend on
    the order trajectories are generated in.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    out = np.empty((samples, spec.steps + 1))
    children = np.random.SeedSequence(seed).spawn(samples)
    with np.errstate(over="ignore", invalid="ignore"):
        for i, child in enumerate(children):
            rng = np.random.Generator(np.random.PCG64(child))
            x = rng.uniform(spec.x0_bounds.lo, spec.x0_bounds.hi)
            u = rng.uniform(spec.u_bounds.lo, spec.u_bounds.hi, size=spec.steps)
            out[i, 0] = x
            for k in range(spec.steps):
                x = spec.f(x) + u[k]
                out[i, k + 1] = x
    return out


@dataclass(frozen=True)
class ContainmentReport:
    violations: np.ndarray        # per step
    tightness_ratio: np.ndarray   # per step; nan where the sample spread is ~0

    @property
    def total_violations(self) -> int:
        return int(self.violations.sum())

    def to_json(self) -> dict:
        return {
            "total_violations": self.total_violations,
            "violations": [int(v) for v in self.violations],
            "tightness_ratio": [None if np.isnan(r) else float(r) for r in self.tightness_ratio],
        }


def containment_report(tube: ReachTube, trajectories: np.ndarray, slack: float = 1e-9) -> ContainmentReport:
    traj = np.asarray(trajectories, dtype=float)
    if traj.shape[1] != tube.steps + 1:
        raise ValueError(f"trajectories cover {traj.shape[1] - 1} steps, tube covers {tube.steps}")
    below = traj < tube.lower[None, :] - slack
    above = traj > tube.upper[None, :] + slack
    violations = (below | above).sum(axis=0)
    spread = traj.max(axis=0) - traj.min(axis=0)
    ratio = np.full(spread.shape, np.nan)
    ok = spread > 1e-12
    ratio[ok] = tube.width[ok] / spread[ok]
    return ContainmentReport(violations, ratio)
