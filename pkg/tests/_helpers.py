"""Shared test helpers."""
import numpy as np
from convexity_radius.series import PowerSeries

ACCEPTANCE_LINES = []


def zero_free_series(rng, order=64, mass=0.9):
    """Random unit series, every |h_k| <= 1, with no zero in the closed disk.

    ``sum_{k>=1} |h_k| <= mass < 1`` keeps ``|h - 1| < 1`` on the disk, so the
    logarithm is analytic there.
    """
    c = rng.uniform(0, 1, order + 1) * np.exp(2j * np.pi * rng.uniform(size=order + 1))
    c[0] = 0
    c *= mass * rng.uniform(0.2, 1.0) / np.sum(np.abs(c))
    c[0] = 1
    return PowerSeries(c)


def disk_points(rng, n, rmax):
    return rmax * np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))
