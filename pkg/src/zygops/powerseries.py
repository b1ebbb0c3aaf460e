"""Power series with coefficient-wise arithmetic on the unit disk.

Backs the Series kind of analytic function and the coefficient expansions of
the rational test families.  Coefficients live in a complex numpy vector
(c[j] multiplies z^j); the nominal radius of convergence is 1.  Evaluation is
Horner form, so for |z| <= r < 1 the truncation error of a series with
bounded coefficients is controlled by the geometric tail r^(J+1)/(1-r).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .special import gamma_ratio


@dataclass(frozen=True)
class PowerSeries:
    coeffs: np.ndarray  # c[0] .. c[J]
    radius: float = 1.0

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.coeffs, dtype=np.complex128))
        if arr.ndim != 1 or arr.shape[0] < 1:
            raise ValueError("power series needs at least one coefficient")
        if not (np.all(np.isfinite(arr.real)) and np.all(np.isfinite(arr.imag))):
            raise DomainError("non-finite series coefficients")
        object.__setattr__(self, "coeffs", arr)

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = max(self.order, other.order) + 1
        out = np.zeros(n, dtype=np.complex128)
        out[: self.order + 1] += self.coeffs
        out[: other.order + 1] += other.coeffs
        return PowerSeries(out)

    def scale(self, c) -> "PowerSeries":
        return PowerSeries(self.coeffs * c)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        return PowerSeries(np.convolve(self.coeffs, other.coeffs))

    def differentiate(self) -> "PowerSeries":
        """d/dz: shifts coefficients and multiplies by the index."""
        if self.order == 0:
            return PowerSeries(np.zeros(1, dtype=np.complex128))
        j = np.arange(1, self.order + 1)
        return PowerSeries(self.coeffs[1:] * j)

    def evaluate(self, z):
        """Horner evaluation at a point or array of points."""
        z_arr = np.asarray(z, dtype=np.complex128)
        acc = np.full(z_arr.shape, self.coeffs[-1], dtype=np.complex128)
        for c in self.coeffs[-2::-1]:
            acc = acc * z_arr + c
        if np.ndim(z) == 0:
            return complex(acc)
        return acc


def geometric_series(ratio: complex, terms: int) -> PowerSeries:
    """Series of 1/(1 - ratio*z) truncated to `terms` coefficients."""
    j = np.arange(terms)
    return PowerSeries(np.asarray(ratio, dtype=np.complex128) ** j)


def rational_family_series(a: complex, alpha: float, prefactor_power: int, terms: int) -> PowerSeries:
    """Taylor coefficients of (1-|a|^2)^p / (1 - conj(a) z)^alpha about 0.

    Coefficient j is (1-|a|^2)^p * Gamma(j+alpha)/(j! Gamma(alpha)) * conj(a)^j.
    """
    if not abs(a) < 1.0:
        raise DomainError("family parameter must satisfy |a| < 1")
    pref = (1.0 - abs(a) ** 2) ** prefactor_power
    j = np.arange(terms)
    coeffs = pref * gamma_ratio(j, alpha) * np.conj(a) ** j
    return PowerSeries(coeffs)
