"""The rational and logarithmic test-function families.

Seven families drive the characterizations.  With w = 1 - conj(a) z and a a
disk parameter:

    f_a = (1-|a|^2)^2 / w^alpha
    g_a = (1-|a|^2)^3 / w^(alpha+1)
    h_a = (1-|a|^2)^4 / w^(alpha+2)

and three combinations k_a, l_a, m_a of f, g, h whose coefficients force two
of the derivatives of order n, n+1, n+2 to vanish at z = a, leaving the third
with an explicit closed form.  In the alpha = 1 setting there are fixed-
coefficient combinations (3, -3, 1) and (8, -7, 2) plus a logarithmic family
t_a whose derivatives at a grow like log(1/(1-|a|^2)).

Every derivative identity here has an independent oracle: the rising
factorial gives the k-th derivative of each building block at z = a as

    (q)_k conj(a)^k (1-|a|^2)^(2-alpha-k)

with q = alpha, alpha+1, alpha+2, so a combination's derivative is a dot
product of coefficient vectors.  Combination coefficients themselves solve a
2x3 homogeneous linear system (see `klm_null_direction`).
"""

from __future__ import annotations

import math

import numpy as np

from ._parallel import parallel_map
from .errors import DegenerateParameterError, DomainError
from .functions import (
    AnalyticMap,
    ExpressionMap,
    LinearCombinationMap,
    RationalPowerMap,
    complex_payload,
)
from .spaces import DiskGrid, zygmund_norm
from .special import rising_factorial

FGH_PREFACTOR_POWERS = {"f": 2, "g": 3, "h": 4}
AUDIT_LEVELS = (0.5, 0.9, 0.99, 0.999)
AUDIT_ANGLES = 8


def _check_parameter(a: complex) -> complex:
    a = complex(a)
    if not abs(a) < 1.0:
        raise DomainError(f"family parameter must satisfy |a| < 1, got |a| = {abs(a)}")
    return a


def make_fgh(which: str, a: complex, alpha: float) -> RationalPowerMap:
    """One of the three rational families; exact rising-factorial jets."""
    if which not in FGH_PREFACTOR_POWERS:
        raise ValueError(f"which must be f, g, or h, got {which!r}")
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    a = _check_parameter(a)
    p = FGH_PREFACTOR_POWERS[which]
    q = alpha + (p - 2)
    fam = RationalPowerMap(scale=(1.0 - abs(a) ** 2) ** p, s=np.conj(a), power=q)
    fam.catalog_id = which
    fam.catalog_params = {"a": complex_payload(a), "alpha": alpha}
    fam.display = f"{which}_a(a={a:g}, alpha={alpha:g})"
    return fam


def klm_coefficients(which: str, alpha: float, n: int) -> tuple:
    """The (f, g, h) coefficients of k_a, l_a, m_a."""
    if which == "k":
        return (alpha + n, -2.0 * alpha, alpha * (alpha + 1) / (alpha + n + 1))
    if which == "l":
        return ((alpha + n) * (alpha + n + 2), -alpha * (2 * alpha + 2 * n + 3),
                alpha * (alpha + 1))
    if which == "m":
        return (alpha + n + 1, -2.0 * alpha, alpha * (alpha + 1) / (alpha + n + 2))
    raise ValueError(f"which must be k, l, or m, got {which!r}")


def make_klm(which: str, a: complex, alpha: float, n: int) -> LinearCombinationMap:
    """Combination of f_a, g_a, h_a with the vanishing-derivative pattern."""
    if n < 1:
        raise ValueError("n must be >= 1 for the k/l/m families")
    a = _check_parameter(a)
    coeffs = klm_coefficients(which, alpha, n)
    fam = LinearCombinationMap(
        list(zip(coeffs, (make_fgh(w, a, alpha) for w in "fgh"))),
        display=f"{which}_a(a={a:g}, alpha={alpha:g}, n={n})",
    )
    fam.catalog_id = which
    fam.catalog_params = {"a": complex_payload(a), "alpha": alpha, "n": n}
    return fam


LOG_FAMILY_COEFFS = {"k_log": (3.0, -3.0, 1.0), "l_log": (8.0, -7.0, 2.0)}

_T_SOURCE = ("((conj(a)*z - 1)*((1 + log(1/(1 - conj(a)*z)))^2 + 1))"
             "/(conj(a)*log(1/(1 - conj(a)*a)))")


class _TFamilyMap(ExpressionMap):
    """The logarithmic family t_a; jets go through the jet-lifted log."""

    def __init__(self, a: complex):
        a = _check_parameter(a)
        if a == 0:
            raise DegenerateParameterError("t family is undefined at a = 0")
        super().__init__(_T_SOURCE, params={"a": a})
        self._a = a
        self.catalog_id = "t"
        self.catalog_params = {"a": complex_payload(a)}
        self.display = f"t_a(a={a:g})"

    def _jet_coeffs(self, z, order):
        # branch guard for log(1/(1 - conj(a) z)); unreachable for |a|,|z| < 1
        base = 1.0 - np.conj(self._a) * np.asarray(z, dtype=np.complex128)
        if np.any(np.real(base) <= 1e-12):
            raise DomainError("log branch guard: Re(1 - conj(a) z) <= 1e-12")
        return super()._jet_coeffs(z, order)


def make_log_family(which: str, a: complex) -> AnalyticMap:
    """The alpha = 1 families: k_log, l_log (rational) and t (logarithmic)."""
    if which == "t":
        return _TFamilyMap(a)
    if which not in LOG_FAMILY_COEFFS:
        raise ValueError(f"which must be k_log, l_log, or t, got {which!r}")
    a = _check_parameter(a)
    coeffs = LOG_FAMILY_COEFFS[which]
    fam = LinearCombinationMap(
        list(zip(coeffs, (make_fgh(w, a, 1.0) for w in "fgh"))),
        display=f"{which}_a(a={a:g})",
    )
    fam.catalog_id = which
    fam.catalog_params = {"a": complex_payload(a)}
    return fam


def make_family(family_id: str, a: complex, alpha: float | None = None,
                n: int | None = None) -> AnalyticMap:
    """Construct any catalog family by id (CLI entry point)."""
    if family_id in FGH_PREFACTOR_POWERS:
        if alpha is None:
            raise ValueError(f"family {family_id!r} needs alpha")
        return make_fgh(family_id, a, alpha)
    if family_id in ("k", "l", "m"):
        if alpha is None or n is None:
            raise ValueError(f"family {family_id!r} needs alpha and n")
        return make_klm(family_id, a, alpha, n)
    if family_id in ("k_log", "l_log", "t"):
        return make_log_family(family_id, a)
    raise ValueError(f"unknown family id {family_id!r}")


# ---------------------------------------------------------------------------
# Independent derivative oracles (rising-factorial algebra, no jets involved)

def fgh_derivative_at_parameter(which: str, a: complex, alpha: float, k: int) -> complex:
    """Exact f/g/h k-th derivative at z = a."""
    a = _check_parameter(a)
    p = FGH_PREFACTOR_POWERS[which]
    q = alpha + (p - 2)
    return (rising_factorial(q, k) * np.conj(a) ** k
            * (1.0 - abs(a) ** 2) ** (2.0 - alpha - k))


def combination_derivative_at_parameter(coeffs, a: complex, alpha: float, k: int) -> complex:
    """k-th derivative at z = a of c1 f_a + c2 g_a + c3 h_a."""
    a = _check_parameter(a)
    combo = sum(c * rising_factorial(alpha + i, k) for i, c in enumerate(coeffs))
    return combo * np.conj(a) ** k * (1.0 - abs(a) ** 2) ** (2.0 - alpha - k)


def klm_derivative_at_parameter(which: str, a: complex, alpha: float, n: int, k: int) -> complex:
    return combination_derivative_at_parameter(klm_coefficients(which, alpha, n), a, alpha, k)


def log_family_derivative_at_parameter(which: str, a: complex, k: int) -> complex:
    return combination_derivative_at_parameter(LOG_FAMILY_COEFFS[which], a, 1.0, k)


def t_derivative_at_parameter(a: complex, k: int) -> complex:
    """Closed forms for t_a', t_a'', t_a''' at z = a."""
    a = _check_parameter(a)
    if a == 0:
        raise DegenerateParameterError("t family is undefined at a = 0")
    big_l = math.log(1.0 / (1.0 - abs(a) ** 2))
    d = 1.0 - abs(a) ** 2
    if k == 1:
        return complex(big_l)
    if k == 2:
        return 2.0 * np.conj(a) / d
    if k == 3:
        return 2.0 * np.conj(a) ** 2 / d**2 * (1.0 + 1.0 / big_l)
    raise ValueError("closed forms recorded for k = 1, 2, 3 only")


def klm_null_direction(which: str, alpha: float, n: int) -> np.ndarray:
    """Solve the vanishing pattern as a linear system (coefficient oracle).

    Each family kills two derivative orders at z = a; the rows
    ((alpha)_k, (alpha+1)_k, (alpha+2)_k) for those orders span the
    constraints, and the family coefficients must lie along the null
    direction (their cross product).
    """
    orders = {"k": (n, n + 1), "l": (n, n + 2), "m": (n + 1, n + 2)}[which]
    rows = [np.array([rising_factorial(alpha + i, k) for i in range(3)]) for k in orders]
    return np.cross(rows[0], rows[1])


# ---------------------------------------------------------------------------
# Uniform norm audits

class UniformNormAudit:
    """Max Zygmund norm of a family over parameter circles approaching |a| = 1."""

    def __init__(self, family_id: str, per_level: list, slope: float, uniformly_bounded: bool):
        self.family_id = family_id
        self.per_level = per_level      # [(|a|, max norm over angles), ...]
        self.slope = slope
        self.uniformly_bounded = uniformly_bounded
        self.max_value = max(v for _, v in per_level)

    def to_payload(self) -> dict:
        return {
            "family": self.family_id,
            "per_level": [[r, v] for r, v in self.per_level],
            "slope": self.slope,
            "uniformly_bounded": self.uniformly_bounded,
            "max_value": self.max_value,
        }


def uniform_norm_audit(family_id: str, alpha: float, n: int | None, grid: DiskGrid,
                       levels=AUDIT_LEVELS, angles: int = AUDIT_ANGLES,
                       tau: float = 0.05) -> UniformNormAudit:
    """Zygmund-alpha norms of family(a) across |a| levels; flags growth trends."""

    def norm_at(a: complex) -> float:
        fam = make_family(family_id, a, alpha=alpha, n=n)
        return zygmund_norm(fam, alpha, grid).total

    per_level = []
    for r in levels:
        samples = [r * np.exp(2j * np.pi * k / angles) for k in range(angles)]
        values = parallel_map(norm_at, samples)
        per_level.append((r, float(max(values))))
    # trend over the boundary tail; the approach from small |a| is irrelevant
    sups = np.array([v for _, v in per_level])[-3:]
    if np.all(sups <= 1e-300) or sups.shape[0] < 2:
        slope = 0.0
    else:
        slope = float(np.polyfit(np.arange(len(sups)), np.log(np.maximum(sups, 1e-300)), 1)[0])
    return UniformNormAudit(family_id, per_level, slope, uniformly_bounded=slope <= tau)
