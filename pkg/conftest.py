"""
Shared fixtures: grids, seeded fields and brute-force oracles
"""
import math

import numpy as np
import pytest

from spectral.grid import Grid2D, PhysicalField
from spectral.littlewood_paley import default_family
from verify.fields import random_field


@pytest.fixture
def family():
    return default_family()


@pytest.fixture
def grid32():
    return Grid2D(32)


@pytest.fixture
def grid64():
    return Grid2D(64)


@pytest.fixture
def smooth_theta(grid32):
    """Seeded band-limited field resolved on the 32² grid"""
    return random_field(grid32, seed=11, gamma=3.0, k_max=4.0)


@pytest.fixture
def mode_field():
    """Returns f(grid, fn) sampling fn(x1, x2) on the grid nodes"""
    def sample(grid, fn):
        x1, x2 = grid.coordinates
        return PhysicalField(grid, fn(x1, x2))
    return sample


@pytest.fixture
def direct_dft():
    """O(n⁴) analysis sum coeffs(ξ) = n⁻² Σ_x f(x) e^{−iξ·x}"""
    def dft(values):
        n = values.shape[0]
        idx = np.arange(n)
        k = np.fft.fftfreq(n, d=1.0 / n)
        phase = np.exp(-1j * np.outer(k, idx) * (2.0 * math.pi / n))
        coeffs = np.zeros((n, n), dtype=complex)
        for a in range(n):
            for b in range(n):
                coeffs[a, b] = np.sum(values * np.outer(phase[a], phase[b])) / (n * n)
        return coeffs
    return dft


@pytest.fixture
def direct_convolution():
    """Grid convolution n⁻² Σ_y K(x − y) f(y) by explicit shifts"""
    def convolve(kernel, values):
        n = values.shape[0]
        out = np.zeros_like(values, dtype=float)
        for s1 in range(n):
            for s2 in range(n):
                if kernel[s1, s2] != 0.0:
                    out += kernel[s1, s2] * np.roll(values, shift=(s1, s2), axis=(0, 1))
        return out / (n * n)
    return convolve
