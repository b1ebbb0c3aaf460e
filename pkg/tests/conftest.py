import numpy as np
import pytest

from zygops import AnalysisConfig, DiskGrid


@pytest.fixture(scope="session")
def grid():
    return DiskGrid()


@pytest.fixture(scope="session")
def small_grid():
    """Coarser grid for unit tests where closed forms hold on any grid."""
    return DiskGrid(kmax=10, angular=64)


@pytest.fixture(scope="session")
def small_config(small_grid):
    return AnalysisConfig(grid=small_grid, eps_levels=10, a_levels=8, a_angles=4,
                          monomial_count=80)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)


def random_disk_points(rng, count, radius=0.85):
    return radius * np.sqrt(rng.uniform(0, 1, count)) * np.exp(2j * np.pi * rng.uniform(0, 1, count))
