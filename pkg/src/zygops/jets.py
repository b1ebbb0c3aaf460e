"""Truncated-Taylor jet arithmetic.

A jet of order K at a point z0 is the coefficient vector
c[k] = f^(k)(z0) / k!, k = 0..K.  Propagating jets through arithmetic gives
every derivative up to order K exactly (to floating point), which is how the
toolkit obtains f^(n), f^(n+1), f^(n+2) for arbitrary n without symbolic
differentiation.

The primitives below operate on raw numpy coefficient arrays whose leading
axis is the order axis; any trailing axes are broadcast batch dimensions, so
one call evaluates a whole disk grid at once.  The `Jet` class is a thin
scalar wrapper used by the public API and by tests that assemble chain rules
by hand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# |denominator| or |log argument| at or below this is treated as a singularity.
SINGULARITY_TOL = 1e-300


def jconst(value, order: int, batch_shape: tuple = ()) -> np.ndarray:
    out = np.zeros((order + 1,) + batch_shape, dtype=np.complex128)
    out[0] = value
    return out


def jvar(z, order: int) -> np.ndarray:
    """Jet of the identity map at z (z may be an array)."""
    z_arr = np.asarray(z, dtype=np.complex128)
    out = np.zeros((order + 1,) + z_arr.shape, dtype=np.complex128)
    out[0] = z_arr
    if order >= 1:
        out[1] = 1.0
    return out


def jadd(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a + b


def jsub(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a - b


def jneg(a: np.ndarray) -> np.ndarray:
    return -a


def jscale(a: np.ndarray, c) -> np.ndarray:
    return a * c


def jmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Truncated Cauchy product: out[k] = sum_{i<=k} a[i] b[k-i]."""
    order = a.shape[0] - 1
    shape = np.broadcast_shapes(a.shape[1:], b.shape[1:])
    out = np.zeros((order + 1,) + shape, dtype=np.complex128)
    for k in range(order + 1):
        out[k] = np.sum(a[: k + 1] * b[k::-1], axis=0)
    return out


def jdiv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Series division a / b; requires |b[0]| above the singularity floor."""
    if np.any(np.abs(b[0]) <= SINGULARITY_TOL):
        raise DomainError("division by (near-)zero in jet arithmetic")
    order = a.shape[0] - 1
    shape = np.broadcast_shapes(a.shape[1:], b.shape[1:])
    out = np.zeros((order + 1,) + shape, dtype=np.complex128)
    out[0] = a[0] / b[0]
    for k in range(1, order + 1):
        acc = a[k] - np.sum(out[:k] * b[k:0:-1], axis=0)
        out[k] = acc / b[0]
    return out


def jlog(a: np.ndarray) -> np.ndarray:
    """Principal-branch log of a jet; requires |a[0]| above the floor."""
    if np.any(np.abs(a[0]) <= SINGULARITY_TOL):
        raise DomainError("log of (near-)zero in jet arithmetic")
    order = a.shape[0] - 1
    out = np.zeros(a.shape, dtype=np.complex128)
    out[0] = np.log(a[0])
    # from a * L' = a':  k a[0] L[k] = k a[k] - sum_{j=1}^{k-1} j L[j] a[k-j]
    for k in range(1, order + 1):
        acc = k * a[k]
        for j in range(1, k):
            acc = acc - j * out[j] * a[k - j]
        out[k] = acc / (k * a[0])
    return out


def jexp(a: np.ndarray) -> np.ndarray:
    order = a.shape[0] - 1
    out = np.zeros(a.shape, dtype=np.complex128)
    out[0] = np.exp(a[0])
    # from E' = a' E:  k E[k] = sum_{j=1}^{k} j a[j] E[k-j]
    for k in range(1, order + 1):
        acc = np.zeros_like(out[0])
        for j in range(1, k + 1):
            acc = acc + j * a[j] * out[k - j]
        out[k] = acc / k
    return out


def jpow_int(a: np.ndarray, p: int) -> np.ndarray:
    """Integer power by binary exponentiation (negative p via division)."""
    order = a.shape[0] - 1
    if p < 0:
        return jdiv(jconst(1.0, order, a.shape[1:]), jpow_int(a, -p))
    result = jconst(1.0, order, a.shape[1:])
    base = a
    while p:
        if p & 1:
            result = jmul(result, base)
        base = jmul(base, base) if p > 1 else base
        p >>= 1
    return result


def jpow_real(a: np.ndarray, q: float) -> np.ndarray:
    """Real power via exp(q log a), principal branch."""
    return jexp(jscale(jlog(a), q))


def jcompose(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """Jet of f(g(.)) given `outer` = jet of f at w = inner[0] and `inner` = jet of g.

    `outer` must carry at least as many coefficients as `inner`; the result is
    truncated to the order of `inner`.  Evaluated in Horner form on the
    zero-constant part of `inner`.
    """
    order = inner.shape[0] - 1
    if outer.shape[0] < order + 1:
        raise ValueError("outer jet has too few coefficients for composition")
    shape = np.broadcast_shapes(outer.shape[1:], inner.shape[1:])
    delta = np.array(np.broadcast_to(inner, (order + 1,) + shape), dtype=np.complex128)
    delta[0] = 0.0
    out = jconst(0.0, order, shape)
    out[0] = outer[order]
    for k in range(order - 1, -1, -1):
        out = jmul(out, delta)
        out[0] = out[0] + outer[k]
    return out


def derivative_shift(coeffs: np.ndarray, n: int) -> np.ndarray:
    """Jet of f^(n) from the jet of f: out[k] = coeffs[k+n] (k+n)!/k!."""
    if n == 0:
        return coeffs
    order = coeffs.shape[0] - 1
    if n > order:
        raise ValueError(f"cannot shift by {n}: jet has order {order}")
    ks = np.arange(order + 1 - n, dtype=np.float64)
    factor = np.ones_like(ks)
    for i in range(1, n + 1):
        factor *= ks + i
    shape = (slice(None),) + (None,) * (coeffs.ndim - 1)
    return coeffs[n:] * factor[shape]


def jet_derivatives(coeffs: np.ndarray) -> np.ndarray:
    """Convert jet coefficients to plain derivatives: out[k] = f^(k) = coeffs[k] k!."""
    order = coeffs.shape[0] - 1
    fact = np.array([math.factorial(k) for k in range(order + 1)], dtype=np.float64)
    shape = (slice(None),) + (None,) * (coeffs.ndim - 1)
    return coeffs * fact[shape]


@dataclass(frozen=True)
class Jet:
    """Order-K truncated Taylor expansion of an analytic function at `center`."""

    center: complex
    coeffs: np.ndarray  # shape (K+1,), complex128

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=np.complex128)
        if arr.ndim != 1 or arr.shape[0] < 1:
            raise ValueError("jet needs a 1-d coefficient vector of length >= 1")
        if not (np.all(np.isfinite(arr.real)) and np.all(np.isfinite(arr.imag))):
            raise DomainError("non-finite jet coefficients")
        object.__setattr__(self, "coeffs", arr)

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def value(self) -> complex:
        return complex(self.coeffs[0])

    def derivative(self, k: int) -> complex:
        """f^(k)(center)."""
        if not 0 <= k <= self.order:
            raise ValueError(f"derivative order {k} outside jet order {self.order}")
        return complex(self.coeffs[k] * math.factorial(k))

    def _coerce(self, other) -> np.ndarray:
        if isinstance(other, Jet):
            if other.center != self.center:
                raise ValueError("jet arithmetic requires a common center")
            if other.order != self.order:
                raise ValueError("jet arithmetic requires a common order")
            return other.coeffs
        return jconst(complex(other), self.order)

    def __add__(self, other):
        return Jet(self.center, jadd(self.coeffs, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Jet(self.center, jsub(self.coeffs, self._coerce(other)))

    def __rsub__(self, other):
        return Jet(self.center, jsub(self._coerce(other), self.coeffs))

    def __neg__(self):
        return Jet(self.center, jneg(self.coeffs))

    def __mul__(self, other):
        return Jet(self.center, jmul(self.coeffs, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Jet(self.center, jdiv(self.coeffs, self._coerce(other)))

    def __rtruediv__(self, other):
        return Jet(self.center, jdiv(self._coerce(other), self.coeffs))

    def log(self) -> "Jet":
        return Jet(self.center, jlog(self.coeffs))

    def exp(self) -> "Jet":
        return Jet(self.center, jexp(self.coeffs))

    def __pow__(self, p):
        if isinstance(p, int) or (isinstance(p, float) and p.is_integer()):
            return Jet(self.center, jpow_int(self.coeffs, int(p)))
        return Jet(self.center, jpow_real(self.coeffs, float(p)))
