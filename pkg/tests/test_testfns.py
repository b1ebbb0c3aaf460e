import math

import numpy as np
import pytest

from zygops import (
    DegenerateParameterError,
    DomainError,
    jet_eval,
    make_family,
    make_fgh,
    make_klm,
    make_log_family,
    uniform_norm_audit,
    zygmund_norm,
)
from zygops.functions import LinearCombinationMap
from zygops.special import gamma_ratio, rising_factorial
from zygops.testfns import (
    klm_coefficients,
    klm_derivative_at_parameter,
    klm_null_direction,
    log_family_derivative_at_parameter,
    t_derivative_at_parameter,
)

CASES = [(0.5, 1), (1.5, 2), (2.5, 3)]
A_GRID = [r * np.exp(2j * np.pi * k / 8) for r in (0.3, 0.6, 0.9) for k in range(8)]


def test_families_at_zero_parameter():
    for which in "fgh":
        fam = make_fgh(which, 0.0, 1.3)
        for z in (0.0, 0.5, -0.3 + 0.4j):
            assert abs(fam.eval(z) - 1.0) < 1e-15


def test_f_family_value_at_parameter():
    for a in (0.5, 0.5 + 0.3j, -0.8j):
        for alpha in (0.5, 1.7):
            fam = make_fgh("f", a, alpha)
            expect = (1 - abs(a) ** 2) ** (2 - alpha)
            assert abs(fam.eval(a) - expect) <= 1e-13 * expect


def test_taylor_coefficients_gamma_ratio():
    a, alpha = 0.5 + 0.3j, 1.7
    fam = make_fgh("f", a, alpha)
    jet = jet_eval(fam, 0.0, 30)
    for j in range(31):
        expect = (1 - abs(a) ** 2) ** 2 * gamma_ratio(j, alpha) * np.conj(a) ** j
        assert abs(jet.coeffs[j] - expect) <= 1e-9 * max(abs(expect), 1e-30)


def test_parameter_validation():
    with pytest.raises(DomainError):
        make_fgh("f", 1.0, 1.0)
    with pytest.raises(ValueError):
        make_fgh("q", 0.5, 1.0)
    with pytest.raises(ValueError):
        make_klm("k", 0.5, 1.0, 0)


@pytest.mark.parametrize("alpha,n", CASES)
def test_klm_vanishing_pattern(alpha, n):
    patterns = {"k": (n, n + 1), "l": (n, n + 2), "m": (n + 1, n + 2)}
    for a in A_GRID:
        scale = max(abs(klm_derivative_at_parameter(w, a, alpha, n, k))
                    for w in "klm" for k in range(n, n + 3)) + 1.0
        for which, orders in patterns.items():
            jet = jet_eval(make_klm(which, a, alpha, n), a, n + 2)
            for k in orders:
                assert abs(jet.derivative(k)) < 1e-9 * scale, (which, k)


@pytest.mark.parametrize("alpha,n", CASES)
def test_k_surviving_derivative(alpha, n):
    # k^(n+2)(a) = 2 alpha (alpha+1) ... (alpha+n) conj(a)^(n+2) / (1-|a|^2)^(alpha+n)
    for a in A_GRID[::4]:
        expect = (2.0 * rising_factorial(alpha, n + 1) * np.conj(a) ** (n + 2)
                  / (1 - abs(a) ** 2) ** (alpha + n))
        jet = jet_eval(make_klm("k", a, alpha, n), a, n + 2)
        assert abs(jet.derivative(n + 2) - expect) <= 1e-9 * abs(expect)


@pytest.mark.parametrize("alpha,n", CASES)
def test_l_surviving_derivative(alpha, n):
    # l^(n+1)(a) = -alpha (alpha+1) ... (alpha+n) conj(a)^(n+1) / (1-|a|^2)^(alpha+n-1)
    for a in A_GRID[::4]:
        expect = (-rising_factorial(alpha, n + 1) * np.conj(a) ** (n + 1)
                  / (1 - abs(a) ** 2) ** (alpha + n - 1))
        jet = jet_eval(make_klm("l", a, alpha, n), a, n + 2)
        assert abs(jet.derivative(n + 1) - expect) <= 1e-9 * abs(expect)


@pytest.mark.parametrize("alpha,n", CASES)
def test_m_surviving_derivative(alpha, n):
    # The (3-term combination) m-family survives at order n with constant
    # 2 (alpha)_n / (alpha+n+2); the reciprocal sometimes quoted does not
    # solve the linear system (the null-direction oracle settles it).
    for a in A_GRID[::4]:
        expect = (2.0 * rising_factorial(alpha, n) / (alpha + n + 2)
                  * np.conj(a) ** n / (1 - abs(a) ** 2) ** (alpha + n - 2))
        jet = jet_eval(make_klm("m", a, alpha, n), a, n + 2)
        assert abs(jet.derivative(n) - expect) <= 1e-9 * abs(expect)


@pytest.mark.parametrize("alpha,n", CASES)
def test_coefficients_solve_linear_system(alpha, n):
    for which in "klm":
        direction = klm_null_direction(which, alpha, n)
        coeffs = np.array(klm_coefficients(which, alpha, n))
        sine = (np.linalg.norm(np.cross(direction, coeffs))
                / (np.linalg.norm(direction) * np.linalg.norm(coeffs)))
        assert sine < 1e-12


def test_log_family_identities():
    for a in A_GRID:
        d = 1 - abs(a) ** 2
        jk = jet_eval(make_log_family("k_log", a), a, 3)
        scale = abs(6 * np.conj(a) ** 3 / d**2) + 1.0
        assert abs(jk.derivative(1)) < 1e-9 * scale
        assert abs(jk.derivative(2)) < 1e-9 * scale
        expect = 6.0 * np.conj(a) ** 3 / d**2
        assert abs(jk.derivative(3) - expect) <= 1e-9 * abs(expect)
        assert abs(log_family_derivative_at_parameter("k_log", a, 3) - expect) < 1e-12 * abs(expect)

        jl = jet_eval(make_log_family("l_log", a), a, 3)
        assert abs(jl.derivative(1)) < 1e-9 * scale
        assert abs(jl.derivative(3)) < 1e-9 * scale
        expect = -2.0 * np.conj(a) ** 2 / d  # first power of (1-|a|^2)
        assert abs(jl.derivative(2) - expect) <= 1e-9 * abs(expect)


def test_t_family_identities():
    for a in A_GRID:
        jt = jet_eval(make_log_family("t", a), complex(a), 3)
        big_l = math.log(1.0 / (1.0 - abs(a) ** 2))
        assert abs(jt.derivative(1) - big_l) <= 1e-9 * max(big_l, 1e-3)
        for k in (2, 3):
            expect = t_derivative_at_parameter(a, k)
            assert abs(jt.derivative(k) - expect) <= 1e-9 * abs(expect)


def test_t_family_rejects_zero_parameter():
    with pytest.raises(DegenerateParameterError):
        make_log_family("t", 0.0)


def test_make_family_dispatch():
    assert make_family("f", 0.5, alpha=1.0).catalog_id == "f"
    assert make_family("m", 0.5, alpha=1.0, n=2).catalog_id == "m"
    assert make_family("t", 0.5).catalog_id == "t"
    with pytest.raises(ValueError):
        make_family("nope", 0.5)
    with pytest.raises(ValueError):
        make_family("f", 0.5)  # missing alpha


def test_uniform_norm_audits(small_grid):
    audit = uniform_norm_audit("f", 1.0, None, small_grid)
    assert audit.uniformly_bounded
    audit_t = uniform_norm_audit("t", 1.0, None, small_grid)
    assert audit_t.uniformly_bounded
    audit_k = uniform_norm_audit("k", 1.5, 2, small_grid)
    assert audit_k.uniformly_bounded


def test_audit_homogeneity(small_grid):
    # doubling the family doubles every Zygmund norm sample exactly
    a = 0.7 * np.exp(0.5j)
    fam = make_fgh("f", a, 1.0)
    doubled = LinearCombinationMap([(2.0, fam)])
    n1 = zygmund_norm(fam, 1.0, small_grid).total
    n2 = zygmund_norm(doubled, 1.0, small_grid).total
    assert abs(n2 - 2.0 * n1) <= 1e-12 * n1


def test_families_vanish_on_compacts():
    zs = 0.5 * np.exp(2j * np.pi * np.arange(16) / 16)
    for which in "fgh":
        near = float(np.max(np.abs(make_fgh(which, 0.999, 1.0).eval_many(zs))))
        far = float(np.max(np.abs(make_fgh(which, 0.5, 1.0).eval_many(zs))))
        assert near < 1e-2 * far


def test_family_payloads():
    fam = make_klm("m", 0.5 + 0.1j, 1.5, 2)
    payload = fam.to_payload()
    assert payload == {"kind": "closed_form", "catalog": "m",
                       "params": {"a": [0.5, 0.1], "alpha": 1.5, "n": 2}}
