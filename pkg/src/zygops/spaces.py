"""Weights, norms, and supremum estimation on the unit disk.

Suprema over the disk are proxied by a geometric radial grid r_k = 1 - 2^-k
with a fixed number of angular samples per circle.  The grid estimate never
exceeds the true supremum; profile diagnostics (per-level sups and a
log-slope over the last levels) classify each estimate as converged,
diverging, or indeterminate.  Finiteness of a supremum is not decidable
numerically, so the verdicts are heuristics and every consumer treats them
as such.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import UnsupportedWeightError
from .functions import AnalyticMap

TAU_DIVERGENCE = 0.05     # log-slope above this reads as divergence
PLATEAU_REL_TOL = 1e-3    # last two level sups this close reads as converged
_FLOOR = 1e-300

CONVERGED = "converged"
DIVERGING = "diverging"
INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class Weight:
    """Radial weight: standard (1-|z|^2)^alpha or logarithmic 1/log(2/(1-|z|^2))."""

    kind: str                # "alpha" | "log"
    alpha: float = math.nan

    @staticmethod
    def standard(alpha: float) -> "Weight":
        if not (alpha > 0 and math.isfinite(alpha)):
            raise UnsupportedWeightError(f"standard weight needs alpha > 0, got {alpha}")
        return Weight("alpha", float(alpha))

    @staticmethod
    def logarithmic() -> "Weight":
        return Weight("log")

    def eval(self, z) -> np.ndarray:
        one_minus = 1.0 - np.abs(np.asarray(z, dtype=np.complex128)) ** 2
        if self.kind == "alpha":
            return one_minus**self.alpha
        if self.kind == "log":
            return 1.0 / np.log(2.0 / one_minus)
        raise UnsupportedWeightError(f"unknown weight kind {self.kind!r}")

    @property
    def label(self) -> str:
        return f"alpha:{self.alpha:g}" if self.kind == "alpha" else "log"


def weight_eval(weight: Weight, z):
    """Value of the weight at z (scalar or array); positive on the open disk."""
    out = weight.eval(z)
    return float(out) if np.ndim(z) == 0 else out


@dataclass(frozen=True)
class SpaceParams:
    """Target/source space selector: Bloch-alpha, Zygmund-alpha, or weighted-type."""

    family: str              # "bloch" | "zygmund" | "weighted"
    alpha: float = math.nan
    weight: Weight | None = None

    def __post_init__(self):
        if self.family in ("bloch", "zygmund"):
            if not (self.alpha > 0 and math.isfinite(self.alpha)):
                raise ValueError(f"{self.family} space needs alpha > 0")
        elif self.family == "weighted":
            if self.weight is None:
                raise ValueError("weighted-type space needs a weight")
        else:
            raise ValueError(f"unknown space family {self.family!r}")


@dataclass(frozen=True)
class DiskGrid:
    """Radial levels r_k = 1 - 2^-k (k = 0..kmax) with `angular` samples per circle."""

    kmax: int = 14
    angular: int = 256

    def __post_init__(self):
        if not 1 <= self.kmax <= 24:
            raise ValueError("kmax out of range")
        if not 1 <= self.angular <= 8192:
            raise ValueError("angular count out of range")

    @property
    def radii(self) -> np.ndarray:
        return 1.0 - 2.0 ** -np.arange(0, self.kmax + 1)

    def circle(self, r: float) -> np.ndarray:
        if r == 0.0:
            return np.zeros(1, dtype=np.complex128)
        angles = 2.0 * np.pi * np.arange(self.angular) / self.angular
        return r * np.exp(1j * angles)

    def levels(self):
        for k, r in enumerate(self.radii):
            yield k, float(r), self.circle(float(r))

    def all_points(self) -> np.ndarray:
        return np.concatenate([pts for _, _, pts in self.levels()])


def profile_slope(level_sups) -> float:
    """Least-squares slope of log(sup) against level index over the last 4 levels."""
    vals = np.asarray(level_sups, dtype=np.float64)
    tail = vals[-4:] if vals.shape[0] >= 4 else vals
    if tail.shape[0] < 2 or np.all(tail <= _FLOOR):
        return 0.0
    y = np.log(np.maximum(tail, _FLOOR))
    x = np.arange(tail.shape[0], dtype=np.float64)
    return float(np.polyfit(x, y, 1)[0])


def classify_profile(level_sups, tau_div: float = TAU_DIVERGENCE) -> tuple:
    """(verdict, slope) for a per-level sup profile."""
    vals = np.asarray(level_sups, dtype=np.float64)
    if vals.size == 0 or np.max(vals) <= _FLOOR:
        return CONVERGED, 0.0
    slope = profile_slope(vals)
    if slope > tau_div:
        return DIVERGING, slope
    if abs(slope) <= tau_div and vals.shape[0] >= 2:
        a, b = vals[-2], vals[-1]
        if abs(b - a) < PLATEAU_REL_TOL * max(abs(a), abs(b), _FLOOR):
            return CONVERGED, slope
    return INDETERMINATE, slope


@dataclass(frozen=True)
class SupremumEstimate:
    """Grid supremum with its per-level profile and a convergence verdict.

    `value` is the max over all levels and probe circles; it under-estimates
    the true supremum.  `slope` is the log-slope of the level profile;
    verdicts: diverging (slope > tau), converged (flat and settled),
    indeterminate otherwise.
    """

    value: float
    per_level: tuple = ()
    probes: tuple = ()
    verdict: str = CONVERGED
    slope: float = 0.0

    @property
    def is_diverging(self) -> bool:
        return self.verdict == DIVERGING

    @property
    def finite_looking(self) -> bool:
        """Converged, or a non-growing profile (decaying tails are finite)."""
        return self.verdict == CONVERGED or self.slope <= 0.0

    def to_payload(self) -> dict:
        return {
            "value": self.value,
            "verdict": self.verdict,
            "slope": self.slope,
            "per_level": [[r, s] for r, s in self.per_level],
            "probes": [[r, s] for r, s in self.probes],
        }


def supremum_estimate(integrand, grid: DiskGrid, extra_radii=()) -> SupremumEstimate:
    """Estimate sup over the disk of a nonnegative `integrand(points)`.

    `integrand` maps a complex array to a real array.  `extra_radii` adds
    probe circles (e.g. known 1-D maximizers) that feed the value but not the
    slope diagnostics.
    """
    level_data = []
    for _, r, pts in grid.levels():
        vals = np.asarray(integrand(pts), dtype=np.float64)
        level_data.append((r, float(np.max(vals)) if vals.size else 0.0))
    probe_data = []
    for r in extra_radii:
        if not 0.0 <= r < 1.0:
            raise ValueError(f"probe radius {r} outside [0, 1)")
        vals = np.asarray(integrand(grid.circle(float(r))), dtype=np.float64)
        probe_data.append((float(r), float(np.max(vals))))
    sups = [s for _, s in level_data]
    verdict, slope = classify_profile(sups)
    value = max([s for _, s in level_data] + [s for _, s in probe_data])
    return SupremumEstimate(
        value=value,
        per_level=tuple(level_data),
        probes=tuple(probe_data),
        verdict=verdict,
        slope=slope,
    )


@dataclass(frozen=True)
class NormEstimate:
    """Norm = point evaluations at 0 plus a weighted-sup seminorm."""

    total: float
    point_part: float
    seminorm: SupremumEstimate

    @property
    def verdict(self) -> str:
        return self.seminorm.verdict

    def to_payload(self) -> dict:
        return {
            "total": self.total,
            "point_part": self.point_part,
            "seminorm": self.seminorm.to_payload(),
        }


def hnorm_weighted(f: AnalyticMap, weight: Weight, grid: DiskGrid, extra_radii=()) -> SupremumEstimate:
    """sup of weight(z) |f(z)| (the weighted-type space norm)."""
    return supremum_estimate(lambda pts: weight.eval(pts) * np.abs(f.eval_many(pts)),
                             grid, extra_radii)


def bloch_seminorm(f: AnalyticMap, alpha: float, grid: DiskGrid, extra_radii=()) -> SupremumEstimate:
    """sup of (1-|z|^2)^alpha |f'(z)|."""
    def integrand(pts):
        j = f.jet_many(pts, 1)
        return (1.0 - np.abs(pts) ** 2) ** alpha * np.abs(j[1])
    return supremum_estimate(integrand, grid, extra_radii)


def bloch_norm(f: AnalyticMap, alpha: float, grid: DiskGrid, extra_radii=()) -> NormEstimate:
    semi = bloch_seminorm(f, alpha, grid, extra_radii)
    point = abs(f.eval(0.0))
    return NormEstimate(total=point + semi.value, point_part=point, seminorm=semi)


def zygmund_seminorm(f: AnalyticMap, alpha: float, grid: DiskGrid, extra_radii=()) -> SupremumEstimate:
    """sup of (1-|z|^2)^alpha |f''(z)|."""
    def integrand(pts):
        j = f.jet_many(pts, 2)
        return (1.0 - np.abs(pts) ** 2) ** alpha * 2.0 * np.abs(j[2])
    return supremum_estimate(integrand, grid, extra_radii)


def zygmund_norm(f: AnalyticMap, alpha: float, grid: DiskGrid, extra_radii=()) -> NormEstimate:
    """|f(0)| + |f'(0)| + zygmund_seminorm."""
    semi = zygmund_seminorm(f, alpha, grid, extra_radii)
    j0 = f.jet(0.0, 1)
    point = abs(j0.coeffs[0]) + abs(j0.coeffs[1])
    return NormEstimate(total=point + semi.value, point_part=float(point), seminorm=semi)


def space_norm(f: AnalyticMap, params: SpaceParams, grid: DiskGrid,
               extra_radii=()) -> NormEstimate:
    """Norm of f in the space selected by `params`."""
    if params.family == "bloch":
        return bloch_norm(f, params.alpha, grid, extra_radii)
    if params.family == "zygmund":
        return zygmund_norm(f, params.alpha, grid, extra_radii)
    est = hnorm_weighted(f, params.weight, grid, extra_radii)
    return NormEstimate(total=est.value, point_part=0.0, seminorm=est)


LITTLE_SPACE_TOL = 1e-4


@dataclass(frozen=True)
class LittleSpaceProfile:
    """Boundary profile of (1-|z|^2)^alpha |f''(z)|; diagnostic only."""

    per_level: tuple
    in_little_space: bool

    def to_payload(self) -> dict:
        return {"per_level": [[r, s] for r, s in self.per_level],
                "in_little_space": self.in_little_space}


def little_space_profile(f: AnalyticMap, alpha: float, grid: DiskGrid) -> LittleSpaceProfile:
    """Diagnostic only: a decreasing tail that is under 1e-4 or decaying
    decisively (log-slope < -tau) reads as vanishing at the boundary."""
    levels = []
    for _, r, pts in grid.levels():
        j = f.jet_many(pts, 2)
        vals = (1.0 - np.abs(pts) ** 2) ** alpha * 2.0 * np.abs(j[2])
        levels.append((r, float(np.max(vals))))
    tail = [s for _, s in levels[-3:]]
    slope = profile_slope([s for _, s in levels])
    in_little = (len(tail) == 3 and tail[0] >= tail[1] >= tail[2]
                 and (tail[2] < LITTLE_SPACE_TOL or slope < -TAU_DIVERGENCE))
    return LittleSpaceProfile(per_level=tuple(levels), in_little_space=in_little)


@dataclass(frozen=True)
class GrowthBoundCheck:
    bound_id: str
    max_violation: float
    constant: float

    def to_payload(self) -> dict:
        return {"bound": self.bound_id, "max_violation": self.max_violation,
                "constant": self.constant}


def _derivative_growth_constant(n: int, alpha: float) -> float:
    # Cauchy-estimate constant: on |w - z| = (1-|z|)/2 the first derivative of
    # g = f' obeys |g'| <= S / rho^alpha, so |g^(n)| picks up (n-1)! 4^(alpha+n-1).
    # n = 1 is the space definition itself (constant 1, exact).
    if n == 1:
        return 1.0
    return math.factorial(n - 1) * 4.0 ** (alpha + n - 1)


def check_growth_bounds(f: AnalyticMap, alpha: float, grid: DiskGrid) -> list:
    """Pointwise growth bounds for functions with finite Zygmund-alpha norm.

    Checks the alpha-selected bounds on |f| and |f'| (valid as printed for
    alpha <= 3) and the derivative bounds
    |f^(n+1)(z)| <= C(n, alpha) ||f|| / (1-|z|^2)^(alpha+n-1) for n = 1..4.
    Returns the positive part of (left - right) maximized over the grid;
    violations are reported, never raised.
    """
    norm = zygmund_norm(f, alpha, grid).total
    checks = []

    pts = np.concatenate([p for _, _, p in grid.levels()])
    order = 5
    jets_all = f.jet_many(pts, order)
    fact = np.array([math.factorial(k) for k in range(order + 1)])
    derivs = jets_all * fact[:, None]
    absz = np.abs(pts)
    one_minus_sq = 1.0 - absz**2
    one_minus = 1.0 - absz

    fv, f1 = np.abs(derivs[0]), np.abs(derivs[1])

    def record(bound_id, lhs, rhs, constant=1.0):
        violation = float(np.max(lhs - rhs)) if lhs.size else 0.0
        checks.append(GrowthBoundCheck(bound_id, max(violation, 0.0), constant))

    if 0.0 < alpha < 1.0:
        c = 2.0 / (1.0 - alpha)
        record("deriv_bound_small_alpha", f1, np.full_like(f1, c * norm), c)
        record("value_bound_small_alpha", fv, np.full_like(fv, c * norm), c)
    elif alpha == 1.0:
        record("deriv_bound_alpha_one", f1, 2.0 * norm * np.log(2.0 / one_minus), 2.0)
        record("value_bound_alpha_one", fv, np.full_like(fv, norm), 1.0)
    else:
        c = 2.0 / (alpha - 1.0)
        record("deriv_bound_large_alpha", f1, c * norm / one_minus ** (alpha - 1.0), c)
        if alpha < 2.0:
            c = 2.0 / ((alpha - 1.0) * (2.0 - alpha))
            record("value_bound_alpha_12", fv, np.full_like(fv, c * norm), c)
        elif alpha == 2.0:
            record("value_bound_alpha_two", fv, 2.0 * norm * np.log(2.0 / one_minus), 2.0)
        else:
            c = 2.0 / ((alpha - 1.0) * (alpha - 2.0))
            record("value_bound_huge_alpha", fv, c * norm / one_minus ** (alpha - 2.0), c)

    for n in range(1, 5):
        c = _derivative_growth_constant(n, alpha)
        lhs = np.abs(derivs[n + 1])
        rhs = c * norm / one_minus_sq ** (alpha + n - 1.0)
        record(f"derivative_bound_n{n}", lhs, rhs, c)

    return checks


def monomial_norm(n: int, weight: Weight) -> float:
    """Exact 1-D maximization of sup_r r^n w(r): the ||z^n|| oracle.

    Standard weight: the maximizer is r* = sqrt(n/(n+2 alpha)), giving
    (n/(n+2a))^(n/2) (2a/(n+2a))^a, evaluated in log space.  Logarithmic
    weight: the stationary point of r^n / log(2/(1-r^2)) is found by root
    finding in s = 1-r^2.
    """
    if n < 0:
        raise ValueError("monomial degree must be nonnegative")
    if weight.kind == "alpha":
        a = weight.alpha
        if n == 0:
            return 1.0
        return math.exp(0.5 * n * (math.log(n) - math.log(n + 2 * a))
                        + a * (math.log(2 * a) - math.log(n + 2 * a)))
    if weight.kind == "log":
        if n == 0:
            return 1.0 / math.log(2.0)
        def dlog(s):
            return -(0.5 * n) / (1.0 - s) + 1.0 / (s * math.log(2.0 / s))
        s_star = brentq(dlog, 1e-300, 1.0 - 1e-12, xtol=1e-312, rtol=1e-15)
        return math.exp(0.5 * n * math.log1p(-s_star)) / math.log(2.0 / s_star)
    raise UnsupportedWeightError(f"unknown weight kind {weight.kind!r}")


def monomial_norm_maximizer(n: int, alpha: float) -> float:
    """Radius attaining sup r^n (1-r^2)^alpha; useful as a probe circle."""
    if n == 0:
        return 0.0
    return math.sqrt(n / (n + 2.0 * alpha))
