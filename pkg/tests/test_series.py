import numpy as np
import pytest

from zygops import PowerSeries, SeriesMap, rational_family_series
from zygops.functions import RationalPowerMap
from zygops.testfns import make_fgh


def test_differentiate():
    assert np.allclose(PowerSeries([1, 1, 1]).differentiate().coeffs, [1, 2])
    assert np.allclose(PowerSeries([5.0]).differentiate().coeffs, [0.0])


def test_evaluate_horner():
    s = PowerSeries([1, 0.5, 0.25, 0.125])
    assert s.evaluate(0.0) == 1.0
    z = 0.3 + 0.2j
    assert abs(s.evaluate(z) - (1 + 0.5 * z + 0.25 * z**2 + 0.125 * z**3)) < 1e-15


def test_add_scale_multiply():
    a = PowerSeries([1, 2])
    b = PowerSeries([3, 0, 1])
    assert np.allclose((a + b).coeffs, [4, 2, 1])
    assert np.allclose(a.scale(2j).coeffs, [2j, 4j])
    assert np.allclose((a * b).coeffs, np.convolve([1, 2], [3, 0, 1]))


def test_family_series_matches_closed_form():
    a, alpha = 0.6, 1.5
    series = rational_family_series(a, alpha, 2, 400)
    closed = make_fgh("f", a, alpha)
    z = 0.5
    assert abs(series.evaluate(z) - closed.eval(z)) < 1e-9


@pytest.mark.parametrize("a_abs", [0.4, 0.8])
@pytest.mark.parametrize("z_abs", [0.3, 0.7])
def test_family_series_grid(a_abs, z_abs):
    for which, pref in (("f", 2), ("g", 3), ("h", 4)):
        for alpha in (0.8, 1.5):
            a = a_abs * np.exp(0.9j)
            series = rational_family_series(a, alpha + pref - 2, pref, 400)
            closed = make_fgh(which, a, alpha)
            z = z_abs * np.exp(-0.4j)
            cv = closed.eval(z)
            assert abs(series.evaluate(z) - cv) <= 1e-9 * max(abs(cv), 1.0)


def test_series_map_jets_match_rational_power():
    rp = RationalPowerMap(1.0, 0.5, 2.0)
    # series for (1-0.5 z)^-2: coefficient j is (j+1) 0.5^j
    j = np.arange(200)
    series = SeriesMap(PowerSeries((j + 1) * 0.5**j))
    z = 0.4 - 0.3j
    got = series.jet(z, 4)
    expect = rp.jet(z, 4)
    assert np.allclose(got.coeffs, expect.coeffs, rtol=1e-10)


def test_nonfinite_rejected():
    from zygops import DomainError
    with pytest.raises(DomainError):
        PowerSeries([np.inf])
