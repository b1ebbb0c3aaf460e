import numpy as np
import pytest

from zygops import (
    DomainError,
    ExpressionMap,
    Jet,
    OrderTooLargeError,
    PolynomialMap,
    RationalPowerMap,
    jet_eval,
)
from zygops.jets import (
    derivative_shift,
    jcompose,
    jconst,
    jdiv,
    jexp,
    jlog,
    jmul,
    jpow_int,
    jpow_real,
    jvar,
)

from conftest import random_disk_points


def test_polynomial_jet_spot_values():
    j = jet_eval(PolynomialMap((0, 0, 1)), 0.5, 2)
    assert np.allclose(j.coeffs, [0.25, 1.0, 1.0])


def test_geometric_series_jet():
    j = jet_eval(ExpressionMap("1/(1-0.5*z)"), 0.0, 3)
    assert np.allclose(j.coeffs, [1.0, 0.5, 0.25, 0.125])


@pytest.mark.parametrize("dq", [0.0, 1.0, 2.0])
def test_rational_power_matches_rising_factorial(rng, dq):
    alpha = 1.7
    for _ in range(8):
        a = rng.uniform(0.1, 0.9) * np.exp(2j * np.pi * rng.uniform())
        z = complex(rng.uniform(0, 0.9) * np.exp(2j * np.pi * rng.uniform()))
        rp = RationalPowerMap(1.0, np.conj(a), alpha + dq)
        jet = jet_eval(rp, z, 8)
        for k in range(9):
            closed = rp.derivative_closed_form(z, k)
            assert abs(jet.derivative(k) - closed) <= 1e-12 * abs(closed)


def test_mul_div_inverse(rng):
    a = jconst(0.0, 6)
    a[:] = rng.normal(size=7) + 1j * rng.normal(size=7)
    b = jconst(0.0, 6)
    b[:] = rng.normal(size=7) + 1j * rng.normal(size=7)
    b[0] += 3.0  # keep away from the singular leading coefficient
    back = jmul(jdiv(a, b), b)
    assert np.allclose(back, a, atol=1e-12)


def test_log_exp_inverse(rng):
    a = jconst(0.0, 6)
    a[:] = 0.3 * (rng.normal(size=7) + 1j * rng.normal(size=7))
    a[0] = 2.0 + 0.5j
    assert np.allclose(jexp(jlog(a)), a, atol=1e-12)


def test_pow_int_matches_repeated_mul():
    a = jvar(0.3 + 0.1j, 5) + jconst(1.0, 5)
    assert np.allclose(jpow_int(a, 4), jmul(jmul(a, a), jmul(a, a)))
    assert np.allclose(jpow_int(a, -2), jdiv(jconst(1.0, 5), jmul(a, a)))


def test_pow_real_matches_int_for_integer_exponent():
    a = jconst(1.5, 5) + jvar(0.2, 5)
    assert np.allclose(jpow_real(a, 3.0), jpow_int(a, 3), atol=1e-12)


def test_compose_against_direct_evaluation():
    # F(w) = 1/(1-0.5 w) composed with g(z) = z^2 + 0.1
    g = PolynomialMap((0.1, 0, 1))
    outer = RationalPowerMap(1.0, 0.5, 1.0)
    z = 0.4 - 0.2j
    inner_jet = g.jet_many(np.asarray(z, dtype=complex), 5)
    outer_jet = outer.jet_many(np.asarray(g.eval(z), dtype=complex), 5)
    composed = jcompose(outer_jet, inner_jet)
    direct = ExpressionMap("1/(1-0.5*(z^2 + 0.1))").jet(z, 5)
    assert np.allclose(composed, direct.coeffs, atol=1e-13)


def test_derivative_shift():
    f = PolynomialMap((1, 2, 3, 4))  # 1 + 2z + 3z^2 + 4z^3
    jet = f.jet_many(np.asarray(0.2, dtype=complex), 3)
    shifted = derivative_shift(jet, 1)
    fprime = PolynomialMap((2, 6, 12)).jet_many(np.asarray(0.2, dtype=complex), 2)
    assert np.allclose(shifted, fprime)


def test_jet_class_arithmetic():
    z0 = 0.3
    f = jet_eval(PolynomialMap((0, 0, 1)), z0, 4)   # z^2
    g = jet_eval(PolynomialMap((1, 1)), z0, 4)      # 1 + z
    h = f * g + 2.0
    expect = jet_eval(PolynomialMap((2, 0, 1, 1)), z0, 4)  # 2 + z^2 + z^3
    assert np.allclose(h.coeffs, expect.coeffs)
    assert abs((f / g).derivative(1) - (2 * z0 * (1 + z0) - z0**2) / (1 + z0) ** 2) < 1e-14
    with pytest.raises(ValueError):
        f + jet_eval(PolynomialMap((0, 1)), 0.5, 4)


def test_jet_requires_finite_coefficients():
    with pytest.raises(DomainError):
        Jet(0.0, np.array([np.nan + 0j]))


def test_order_too_large():
    with pytest.raises(OrderTooLargeError):
        jet_eval(PolynomialMap((0, 1)), 0.0, 65)


def test_outside_disk_rejected():
    with pytest.raises(DomainError):
        jet_eval(PolynomialMap((0, 1)), 1.0 + 0j, 1)
    with pytest.raises(DomainError):
        jet_eval(PolynomialMap((0, 1)), 0.5 + 0.9j, 1)


def test_division_by_zero_jet():
    with pytest.raises(DomainError):
        jet_eval(ExpressionMap("1/z"), 0.0, 2)


def test_log_of_zero():
    with pytest.raises(DomainError):
        jet_eval(ExpressionMap("log(z)"), 0.0, 2)


def test_eval_shares_jet_code_path():
    f = RationalPowerMap(2.0, 0.4 + 0.1j, 1.3)
    for z in (0.0, 0.3 - 0.4j):
        assert f.eval(z) == f.jet(z, 0).value


def test_batch_matches_scalar(rng):
    f = ExpressionMap("(1 - conj(a)*z)^-1.5", params={"a": 0.4 + 0.2j})
    pts = random_disk_points(rng, 16)
    batch = f.jet_many(pts, 3)
    for i, z in enumerate(pts):
        single = f.jet(complex(z), 3)
        assert np.allclose(batch[:, i], single.coeffs, rtol=1e-14, atol=1e-300)
