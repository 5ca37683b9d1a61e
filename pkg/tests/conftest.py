import numpy as np
import pytest

from bsbshaper import dispersion
from bsbshaper.pulsefield import default_grid, gaussian_pulse

OMEGA0_800 = 2 * np.pi * dispersion.C_LIGHT / 800e-9


@pytest.fixture(scope="session")
def quartz():
    return dispersion.get_material("quartz")


@pytest.fixture(scope="session")
def kdp():
    return dispersion.get_material("kdp")


@pytest.fixture(scope="session")
def omega0():
    return OMEGA0_800


@pytest.fixture(scope="session")
def grid():
    return default_grid()


@pytest.fixture(scope="session")
def pulse100(grid):
    # 100 THz intensity-FWHM Gaussian at 800 nm, the standard test pulse
    return gaussian_pulse(grid, OMEGA0_800, 2 * np.pi * 100e12)
