"""
Seeded random test fields with power-law spectra
"""
import math

import numpy as np

from spectral.exceptions import ConfigurationError
from spectral.grid import Grid2D, SpectralField


def random_field(
    grid: Grid2D,
    seed: int,
    gamma: float = 3.0,
    k_min: float = 1.0,
    k_max: float = 8.0,
    amplitude: float = 1.0,
) -> SpectralField:
    """
    Band-limited field with |θ̂(ξ)| ∝ |ξ|^{−γ} on k_min ≤ |ξ| ≤ k_max and random phases

    Coefficients depend on the seed and the wave vector only, so every grid
    that resolves k_max samples the same function. The field is mean-zero,
    conjugate-symmetric and normalized to RMS value `amplitude`.
    """
    box_radius = int(math.floor(k_max))
    if box_radius >= grid.n / 3.0:
        raise ConfigurationError(
            f"k_max = {k_max:g} is not below the dealiasing cutoff n/3 = {grid.n / 3.0:.4g}"
        )
    coeffs = np.zeros((grid.n, grid.n), dtype=complex)
    if box_radius < 1 or amplitude == 0:
        return SpectralField(grid, coeffs)

    k = np.arange(-box_radius, box_radius + 1)
    k1, k2 = np.meshgrid(k, k, indexing='ij')
    radius = np.hypot(k1, k2)
    band = (radius >= k_min) & (radius <= k_max) & (radius > 0)
    magnitude = np.where(band, np.where(band, radius, 1.0) ** (-gamma), 0.0)

    rng = np.random.default_rng(seed)
    phase = rng.uniform(0.0, 2.0 * math.pi, size=magnitude.shape)
    box = magnitude * np.exp(1j * phase)
    box = 0.5 * (box + np.conj(box[::-1, ::-1]))
    box[box_radius, box_radius] = 0.0

    rms = math.sqrt(float(np.sum(np.abs(box) ** 2)))
    if rms > 0:
        box *= amplitude / rms
    index = np.mod(k, grid.n)
    coeffs[np.ix_(index, index)] = box
    return SpectralField(grid, coeffs)
