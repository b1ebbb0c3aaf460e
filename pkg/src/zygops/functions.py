"""Evaluable analytic functions on the unit disk.

An AnalyticMap produces values and jets (all derivatives up to a requested
order) at interior points.  Three backings exist:

* closed-form catalog entries (rational powers, polynomials, linear
  combinations) with exact derivative formulas,
* compiled expression trees, evaluated through jet-lifted arithmetic,
* truncated power series.

Evaluation accepts a scalar or an array of points; array evaluation is the
hot path for disk-grid suprema, so the implementations are vectorized over
the trailing axes.
"""

from __future__ import annotations

import math

import numpy as np

from . import expressions as ex
from . import jets
from .errors import DomainError, OrderTooLargeError
from .jets import Jet
from .powerseries import PowerSeries

DEFAULT_MAX_JET_ORDER = 64

# No analytic continuation beyond this radius; keeps every formula safely
# inside the open disk.
INTERIOR_LIMIT = 1.0 - 1e-9


def _check_points(z) -> np.ndarray:
    z_arr = np.asarray(z, dtype=np.complex128)
    if not (np.all(np.isfinite(z_arr.real)) and np.all(np.isfinite(z_arr.imag))):
        raise DomainError("non-finite evaluation point")
    if np.any(np.abs(z_arr) > INTERIOR_LIMIT):
        raise DomainError("evaluation point outside the open unit disk")
    return z_arr


def complex_payload(value: complex) -> list:
    return [float(np.real(value)), float(np.imag(value))]


class AnalyticMap:
    """Base class; subclasses implement `_jet_coeffs` and `_structural_payload`."""

    display: str = "<analytic map>"
    # test-family constructors stamp these so reports cite the family instead
    # of its internal representation
    catalog_id: str | None = None
    catalog_params: dict | None = None

    def _jet_coeffs(self, z: np.ndarray, order: int) -> np.ndarray:
        raise NotImplementedError

    def jet_many(self, z, order: int) -> np.ndarray:
        """Coefficient array of shape (order+1, *batch) at validated points."""
        if order < 0:
            raise ValueError("jet order must be nonnegative")
        z_arr = _check_points(z)
        out = self._jet_coeffs(z_arr, order)
        if not (np.all(np.isfinite(out.real)) and np.all(np.isfinite(out.imag))):
            raise DomainError(f"non-finite jet for {self.display}")
        return out

    def jet(self, z, order: int) -> Jet:
        z_arr = _check_points(np.asarray(z, dtype=np.complex128))
        if z_arr.ndim != 0:
            raise ValueError("jet() takes a single point; use jet_many for arrays")
        coeffs = self.jet_many(z_arr, order)
        return Jet(complex(z_arr), coeffs.reshape(order + 1))

    def eval(self, z) -> complex:
        return self.jet(z, 0).value

    def eval_many(self, z) -> np.ndarray:
        return self.jet_many(z, 0)[0]

    def to_payload(self) -> dict:
        if self.catalog_id is not None:
            return {"kind": "closed_form", "catalog": self.catalog_id,
                    "params": dict(self.catalog_params or {})}
        return self._structural_payload()

    def _structural_payload(self) -> dict:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.display})"


def jet_eval(f: AnalyticMap, z, order: int, max_order: int = DEFAULT_MAX_JET_ORDER) -> Jet:
    """Taylor jet of f at z: coeffs[k] * k! = f^(k)(z).

    Raises DomainError outside the disk or at singularities, and
    OrderTooLargeError above `max_order`.
    """
    if order > max_order:
        raise OrderTooLargeError(f"jet order {order} exceeds maximum {max_order}")
    return f.jet(z, order)


class ExpressionMap(AnalyticMap):
    """Analytic map compiled from expression source with bound parameters."""

    def __init__(self, source, params: dict | None = None):
        if isinstance(source, str):
            self.tree = ex.parse_expression(source)
            self.source = ex.to_source(self.tree)
        else:
            self.tree = source
            self.source = ex.to_source(source)
        self.params = {k: complex(v) for k, v in (params or {}).items()}
        unbound = ex.parameter_names(self.tree) - set(self.params)
        if unbound:
            raise DomainError(f"unbound parameters: {sorted(unbound)}")
        self.display = self.source

    def _jet_coeffs(self, z, order):
        coeffs = ex.eval_jet(self.tree, z, order, self.params)
        target = (order + 1,) + np.shape(z)
        return np.broadcast_to(coeffs, target) if coeffs.shape != target else coeffs

    def _structural_payload(self):
        return {
            "kind": "expression",
            "expr": self.source,
            "params": {k: complex_payload(v) for k, v in sorted(self.params.items())},
        }


class RationalPowerMap(AnalyticMap):
    """c * (1 - s z)^(-q): the building block of the test families.

    The k-th derivative has the rising-factorial closed form
    c * q(q+1)...(q+k-1) * s^k * (1 - s z)^(-(q+k)).
    """

    def __init__(self, scale: complex, s: complex, power: float):
        if abs(s) > 1.0:
            raise DomainError("pole parameter must satisfy |s| <= 1")
        self.scale = complex(scale)
        self.s = complex(s)
        self.power = float(power)
        self.display = f"({self.scale:g})*(1-({self.s:g})*z)^(-{self.power:g})"

    def _jet_coeffs(self, z, order):
        base = 1.0 - self.s * z
        if np.any(np.abs(base) <= jets.SINGULARITY_TOL):
            raise DomainError("rational power evaluated at its pole")
        out = np.zeros((order + 1,) + np.shape(z), dtype=np.complex128)
        # base^(-q) with principal log; q may be any real
        term = self.scale * np.exp(-self.power * np.log(base))
        out[0] = term
        for k in range(1, order + 1):
            term = term * (self.power + k - 1) * self.s / (k * base)
            out[k] = term
        return out

    def derivative_closed_form(self, z, k: int):
        """Independent oracle: f^(k)(z) by the rising-factorial formula."""
        z_arr = np.asarray(z, dtype=np.complex128)
        base = 1.0 - self.s * z_arr
        rf = 1.0
        for i in range(k):
            rf *= self.power + i
        return self.scale * rf * self.s**k * np.exp(-(self.power + k) * np.log(base))

    def _structural_payload(self):
        return {
            "kind": "closed_form",
            "catalog": "rational_power",
            "params": {
                "scale": complex_payload(self.scale),
                "s": complex_payload(self.s),
                "power": self.power,
            },
        }


class PolynomialMap(AnalyticMap):
    """Polynomial sum c[j] z^j with exact binomial-shift jets."""

    def __init__(self, coeffs, display: str | None = None):
        arr = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128))
        if arr.ndim != 1:
            raise ValueError("polynomial coefficients must be a vector")
        self.coeffs = arr
        self.display = display if display is not None else self._default_display()

    def _default_display(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            c_txt = f"{c.real:g}" if c.imag == 0 else f"({c:g})"
            parts.append(c_txt if j == 0 else (f"{c_txt}*z" if j == 1 else f"{c_txt}*z^{j}"))
        return " + ".join(parts) if parts else "0"

    def _jet_coeffs(self, z, order):
        deg = self.coeffs.shape[0] - 1
        out = np.zeros((order + 1,) + np.shape(z), dtype=np.complex128)
        # jet[k] = sum_j c_j binom(j, k) z^(j-k), Horner over j
        for k in range(min(order, deg) + 1):
            acc = np.zeros(np.shape(z), dtype=np.complex128)
            for j in range(deg, k - 1, -1):
                acc = acc * z + self.coeffs[j] * math.comb(j, k)
            out[k] = acc
        return out

    def _structural_payload(self):
        return {
            "kind": "closed_form",
            "catalog": "polynomial",
            "params": {"coeffs": [complex_payload(c) for c in self.coeffs]},
        }


class LinearCombinationMap(AnalyticMap):
    """Finite linear combination of analytic maps (used by the k/l/m families)."""

    def __init__(self, terms, display: str | None = None):
        self.terms = [(complex(c), m) for c, m in terms]
        if not self.terms:
            raise ValueError("linear combination needs at least one term")
        self.display = display or " + ".join(f"({c:g})*{m.display}" for c, m in self.terms)

    def _jet_coeffs(self, z, order):
        acc = None
        for c, m in self.terms:
            part = c * m._jet_coeffs(z, order)
            acc = part if acc is None else acc + part
        return acc

    def _structural_payload(self):
        return {
            "kind": "closed_form",
            "catalog": "linear_combination",
            "params": {"terms": [[complex_payload(c), m.to_payload()] for c, m in self.terms]},
        }


class SeriesMap(AnalyticMap):
    """Analytic map backed by a truncated power series about 0."""

    def __init__(self, series: PowerSeries, display: str | None = None):
        self.series = series
        self.display = display or f"series[{series.order + 1} terms]"

    def _jet_coeffs(self, z, order):
        c = self.series.coeffs
        deg = c.shape[0] - 1
        out = np.zeros((order + 1,) + np.shape(z), dtype=np.complex128)
        for k in range(min(order, deg) + 1):
            acc = np.zeros(np.shape(z), dtype=np.complex128)
            for j in range(deg, k - 1, -1):
                acc = acc * z + c[j] * math.comb(j, k)
            out[k] = acc
        return out

    def _structural_payload(self):
        return {
            "kind": "series",
            "params": {"coeffs": [complex_payload(c) for c in self.series.coeffs]},
        }


def identity_map() -> PolynomialMap:
    return PolynomialMap((0.0, 1.0), display="z")


def constant_map(c) -> PolynomialMap:
    return PolynomialMap((c,), display=f"{c:g}")
