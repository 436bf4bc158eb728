"""Shared fixtures and reference data for the test suite."""

import numpy as np
import pytest

import attkit as ak

# Preset 1: initial attitude and its quoted parameterizations (four
# decimals each, so cross-checks carry ~5e-4 tolerances).
EX1_R0 = np.array(
    [
        [0.9479, -0.2040, 0.2448],
        [0.2177, 0.9756, -0.0297],
        [-0.2328, 0.0814, 0.9691],
    ]
)
EX1_EULER_DEG = np.array([4.8035, 13.4601, 12.9329])
EX1_RHO = np.array([0.0286, 0.1227, 0.1083])
EX1_QUAT = np.array([0.9865, 0.0282, 0.1210, 0.1069])

# Preset 2.
EX2_R0 = np.array(
    [
        [0.6679, -0.1808, 0.7219],
        [0.6552, 0.6030, -0.4551],
        [-0.3530, 0.7770, 0.5213],
    ]
)
EX2_EULER_DEG = np.array([56.1428, 20.6724, 44.4471])
EX2_RHO = np.array([0.4413, 0.3850, 0.2994])
EX2_QUAT = np.array([0.8355, 0.3687, 0.3216, 0.2502])

# Worked double-cover fixture: a quaternion and the matrix it maps to.
DC_QUAT = np.array([0.7794, -0.1440, 0.4623, -0.3976])
DC_MATRIX = np.array(
    [
        [0.2563, 0.4867, 0.8351],
        [-0.7529, 0.6423, -0.1433],
        [-0.6061, -0.5921, 0.5311],
    ]
)


def random_unit_quaternion(rng, n=None):
    """Uniform sample(s) on the unit 3-sphere (normalized Gaussians)."""
    if n is None:
        g = rng.standard_normal(4)
        return g / np.linalg.norm(g)
    g = rng.standard_normal((n, 4))
    return g / np.linalg.norm(g, axis=1)[:, None]


def random_rotation(rng):
    """One uniformly distributed rotation matrix."""
    return ak.quaternion_to_rotation(random_unit_quaternion(rng))


def clean_rotation(r):
    """Project a near-rotation onto SO(3) through the quaternion map.

    Used to turn the four-decimal preset matrices into exactly orthonormal
    starting points for trajectory-consistency checks.
    """
    return ak.quaternion_to_rotation(ak.normalize(ak.rotation_to_quaternion(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
