import math

import numpy as np
import pytest
from scipy.special import gammaln

from zygops.special import (
    falling_factorial_log,
    gamma,
    gamma_ratio,
    log_gamma,
    rising_factorial,
)


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 1.7, 2.5, 10.0, 100.5, 171.5, 1e6 + 0.3])
def test_log_gamma_against_scipy(x):
    assert abs(log_gamma(x) - gammaln(x)) <= 1e-12 * max(abs(gammaln(x)), 1.0)


def test_gamma_small_values():
    assert abs(gamma(0.5) - math.sqrt(math.pi)) < 1e-13
    assert abs(gamma(5.0) - 24.0) < 1e-11


def test_gamma_ratio_small_j_direct_product():
    alpha = 1.7
    for j in range(8):
        direct = rising_factorial(alpha, j) / math.factorial(j)
        assert abs(gamma_ratio(j, alpha) - direct) <= 1e-12 * direct


def test_gamma_ratio_vectorized():
    out = gamma_ratio(np.arange(5), 0.5)
    assert out.shape == (5,)
    assert abs(out[0] - 1.0) < 1e-14


def test_gamma_ratio_large_j_no_overflow():
    value = gamma_ratio(5000, 2.5)
    # ratio ~ j^(alpha-1)/Gamma(alpha)
    approx = 5000**1.5 / gamma(2.5)
    assert 0.9 * approx < value < 1.1 * approx


def test_rising_factorial():
    assert rising_factorial(3.0, 0) == 1.0
    assert rising_factorial(0.5, 3) == 0.5 * 1.5 * 2.5


def test_falling_factorial_log():
    assert falling_factorial_log(10, 0) == 0.0
    assert abs(falling_factorial_log(10, 3) - math.log(10 * 9 * 8)) < 1e-12
    with pytest.raises(ValueError):
        falling_factorial_log(2, 5)
