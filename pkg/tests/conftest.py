import numpy as np
import pytest

from winpibt import build_grid, maps


@pytest.fixture
def rng():
    return np.random.default_rng(20200406)


@pytest.fixture
def grid32():
    return build_grid(3, 2)


@pytest.fixture
def fig3():
    return maps.fig3_instance()
