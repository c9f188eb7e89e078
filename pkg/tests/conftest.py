import os

import hypothesis
import numpy as np
import pytest

from thetanulls.ppav import product_ppav, random_ppav

np.seterr(all="warn")

hypothesis.settings.register_profile("default", max_examples=25, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def tau_i():
    return product_ppav([1j])


@pytest.fixture(scope="session")
def product_g2():
    return product_ppav([1j, 2j])


@pytest.fixture(scope="session")
def product_g3():
    return product_ppav([1j, 1j, 2j])


@pytest.fixture(scope="session")
def generic_g2():
    return random_ppav(2, 7)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
