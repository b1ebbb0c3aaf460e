import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zygops import (
    DiskGrid,
    PolynomialMap,
    RationalPowerMap,
    Weight,
    bloch_norm,
    bloch_seminorm,
    check_growth_bounds,
    hnorm_weighted,
    little_space_profile,
    monomial_norm,
    monomial_norm_maximizer,
    weight_eval,
    zygmund_norm,
    zygmund_seminorm,
)
from zygops.spaces import CONVERGED, DIVERGING, INDETERMINATE, classify_profile
from zygops.testfns import make_fgh


def test_weight_values():
    assert weight_eval(Weight.standard(1.0), 0.0) == 1.0
    assert abs(weight_eval(Weight.logarithmic(), 0.0) - 1.0 / math.log(2.0)) < 1e-12
    z = math.sqrt(0.5)
    assert abs(weight_eval(Weight.standard(2.0), z) - 0.25) < 1e-14


def test_hnorm_constant(grid):
    est = hnorm_weighted(PolynomialMap((1.0,)), Weight.standard(0.7), grid)
    assert est.value == 1.0  # attained at z = 0


@pytest.mark.parametrize("n", [1, 2, 8, 32, 64])
@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
def test_hnorm_monomial_oracle(grid, n, alpha):
    w = Weight.standard(alpha)
    probe = monomial_norm_maximizer(n, alpha)
    est = hnorm_weighted(PolynomialMap([0] * n + [1]), w, grid, extra_radii=(probe,))
    oracle = monomial_norm(n, w)
    assert est.value <= oracle * (1 + 1e-12)  # grid never exceeds the true sup
    assert abs(est.value - oracle) <= 1e-6 * oracle


def test_hnorm_square_alpha_one(grid):
    est = hnorm_weighted(PolynomialMap((0, 0, 1)), Weight.standard(1.0), grid,
                         extra_radii=(monomial_norm_maximizer(2, 1.0),))
    assert abs(est.value - 0.25) < 1e-9  # sup r^2 (1-r^2) = 1/4


def test_bloch_examples(grid):
    est = bloch_seminorm(PolynomialMap((0, 1)), 0.8, grid)
    assert abs(est.value - 1.0) < 1e-12
    assert abs(bloch_norm(PolynomialMap((0, 1)), 0.8, grid).total - 1.0) < 1e-12

    est = bloch_seminorm(PolynomialMap((0, 0, 1)), 1.0, grid,
                         extra_radii=(1 / math.sqrt(3.0),))
    assert abs(est.value - 4.0 / (3.0 * math.sqrt(3.0))) < 1e-12

    c = 2.5 - 1j
    norm = bloch_norm(PolynomialMap((c,)), 1.0, grid)
    assert norm.seminorm.value == 0.0
    assert abs(norm.total - abs(c)) < 1e-15


def test_zygmund_examples(grid):
    est = zygmund_seminorm(PolynomialMap((0, 0, 1)), 1.3, grid)
    assert abs(est.value - 2.0) < 1e-12
    assert abs(zygmund_norm(PolynomialMap((0, 0, 1)), 1.3, grid).total - 2.0) < 1e-12

    est = zygmund_seminorm(PolynomialMap((0, 0, 0, 1)), 1.0, grid,
                           extra_radii=(1 / math.sqrt(3.0),))
    assert abs(est.value - 4.0 / math.sqrt(3.0)) < 1e-12

    norm = zygmund_norm(PolynomialMap((0.7, -2j)), 1.0, grid)
    assert norm.seminorm.value == 0.0
    assert abs(norm.total - (0.7 + 2.0)) < 1e-15


def test_all_three_norms_against_1d_oracle(grid):
    n, alpha = 9, 1.3
    mono = PolynomialMap([0] * n + [1])
    w = Weight.standard(alpha)
    h = hnorm_weighted(mono, w, grid, extra_radii=(monomial_norm_maximizer(n, alpha),))
    b = bloch_seminorm(mono, alpha, grid, extra_radii=(monomial_norm_maximizer(n - 1, alpha),))
    z = zygmund_seminorm(mono, alpha, grid, extra_radii=(monomial_norm_maximizer(n - 2, alpha),))
    assert abs(h.value - monomial_norm(n, w)) <= 1e-6 * monomial_norm(n, w)
    assert abs(b.value - n * monomial_norm(n - 1, w)) <= 1e-6 * b.value
    assert abs(z.value - n * (n - 1) * monomial_norm(n - 2, w)) <= 1e-6 * z.value


def test_monomial_norm_against_dense_scan():
    # validate the 1-D oracle itself with a brute-force scan
    for weight in (Weight.standard(0.7), Weight.logarithmic()):
        for n in (3, 25, 400):
            r = 1.0 - np.geomspace(1e-9, 1.0 - 1e-9, 300_000)
            vals = np.exp(n * np.log(r)) * weight.eval(r)
            dense = float(np.max(vals))
            oracle = monomial_norm(n, weight)
            assert dense <= oracle * (1 + 1e-9)
            assert dense >= oracle * (1 - 1e-6)


def test_monomial_norm_log_weight_huge_degree():
    # closed-form maximization stays stable at n = 10^6
    value = monomial_norm(10**6, Weight.logarithmic())
    assert 0.05 < value < 0.06


def test_grid_monotonicity():
    f = make_fgh("f", 0.7, 1.0)
    values = []
    for kmax in (6, 8, 10, 12, 14):
        grid = DiskGrid(kmax=kmax, angular=128)
        values.append(zygmund_seminorm(f, 1.0, grid).value)
    assert all(b >= a - 1e-15 for a, b in zip(values, values[1:]))


@given(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False))
@settings(max_examples=20, deadline=None)
def test_homogeneity(c):
    grid = DiskGrid(kmax=8, angular=32)
    f = PolynomialMap((0.3, -1.2, 0.8, 0.1j))
    scaled = PolynomialMap(np.array(f.coeffs) * c)
    n1 = zygmund_norm(f, 1.1, grid).total
    n2 = zygmund_norm(scaled, 1.1, grid).total
    assert abs(n2 - abs(c) * n1) <= 1e-12 * max(n1, 1.0) * max(abs(c), 1.0)


def test_triangle_inequality(rng):
    grid = DiskGrid(kmax=8, angular=32)
    for _ in range(20):
        fc = rng.normal(size=4) + 1j * rng.normal(size=4)
        gc = rng.normal(size=4) + 1j * rng.normal(size=4)
        nf = zygmund_norm(PolynomialMap(fc), 0.9, grid).total
        ng = zygmund_norm(PolynomialMap(gc), 0.9, grid).total
        nfg = zygmund_norm(PolynomialMap(fc + gc), 0.9, grid).total
        assert nfg <= nf + ng + 1e-12


def test_little_space_profiles(grid):
    assert little_space_profile(PolynomialMap((0, 0, 1)), 1.0, grid).in_little_space

    fa = make_fgh("f", 0.9, 1.0)
    assert little_space_profile(fa, 1.0, grid).in_little_space

    # f'' = (1-z)^(-alpha): constant-level boundary profile, not little
    alpha = 0.5
    f = RationalPowerMap(1.0 / ((1 - alpha) * (2 - alpha)), 1.0, alpha - 2.0)
    prof = little_space_profile(f, alpha, grid)
    assert not prof.in_little_space
    tail = [s for _, s in prof.per_level[-3:]]
    assert all(s > 1.0 for s in tail)  # level sups approach 2^alpha


def test_growth_bounds_examples(grid):
    # the alpha < 1 value bound has slack factor ~8 on z^2
    checks = check_growth_bounds(PolynomialMap((0, 0, 1)), 0.5, grid)
    by_id = {c.bound_id: c for c in checks}
    assert by_id["value_bound_small_alpha"].max_violation == 0.0
    assert by_id["derivative_bound_n1"].max_violation == 0.0  # definitional case

    fa = make_fgh("f", 0.6, 1.0)
    checks = check_growth_bounds(fa, 1.0, grid)
    norm = zygmund_norm(fa, 1.0, grid).total
    for c in checks:
        assert c.max_violation <= 1e-9 * (1.0 + norm), (c.bound_id, c.max_violation)


def test_classify_profile_verdicts():
    growing = [1.0 * 2**k for k in range(8)]
    verdict, slope = classify_profile(growing)
    assert verdict == DIVERGING and slope > 0.6

    flat = [3.0, 3.0, 3.0, 3.0, 3.0]
    verdict, slope = classify_profile(flat)
    assert verdict == CONVERGED and abs(slope) < 1e-12

    decaying = [2.0**-k for k in range(8)]
    verdict, slope = classify_profile(decaying)
    assert verdict == INDETERMINATE and slope < -0.6

    zeros = [0.0, 0.0, 0.0]
    assert classify_profile(zeros)[0] == CONVERGED


def test_supremum_payload_roundtrip(grid):
    est = zygmund_seminorm(PolynomialMap((0, 0, 1)), 1.0, grid, extra_radii=(0.5,))
    payload = est.to_payload()
    assert payload["value"] == est.value
    assert len(payload["per_level"]) == grid.kmax + 1
    assert payload["probes"][0][0] == 0.5


def test_space_norm_dispatch(small_grid):
    from zygops import SpaceParams, space_norm
    f = PolynomialMap((0, 0, 1))
    z = space_norm(f, SpaceParams("zygmund", 1.3), small_grid)
    assert abs(z.total - 2.0) < 1e-12
    b = space_norm(f, SpaceParams("bloch", 1.0), small_grid,
                   extra_radii=(1 / math.sqrt(3.0),))
    assert abs(b.total - 4.0 / (3.0 * math.sqrt(3.0))) < 1e-12
    w = space_norm(PolynomialMap((1.0,)),
                   SpaceParams("weighted", weight=Weight.standard(1.0)), small_grid)
    assert w.total == 1.0
    with pytest.raises(ValueError):
        SpaceParams("weighted")
    with pytest.raises(ValueError):
        SpaceParams("bloch", -1.0)
