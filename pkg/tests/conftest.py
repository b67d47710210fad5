import cmath
import math

import numpy as np
import pytest


def circle_points(angles_deg):
    return [cmath.exp(1j * math.radians(t)) for t in angles_deg]


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
