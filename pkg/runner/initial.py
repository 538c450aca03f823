"""
Initial data generators
Every kind returns a mean-zero, conjugate-symmetric spectrum band-limited below n/3
"""
import logging
import math

import numpy as np

from spectral.exceptions import ConfigurationError
from spectral.grid import Grid2D, PhysicalField, SpectralField, dealias, forward_transform
from verify.fields import random_field

from .run_config import INITIAL_KINDS, InitialSpec

logger = logging.getLogger(__name__)


def _symmetrized(coeffs: np.ndarray) -> np.ndarray:
    reflected = np.roll(coeffs[::-1, ::-1], 1, axis=(0, 1))
    return 0.5 * (coeffs + np.conj(reflected))


def _periodic_offset(x: np.ndarray, centre: float) -> np.ndarray:
    """Signed min-image offset x − centre on [0, 2π)"""
    return np.mod(x - centre + math.pi, 2.0 * math.pi) - math.pi


def _gaussian_bumps(grid: Grid2D, spec: InitialSpec, seed: int) -> SpectralField:
    if spec.centre is None:
        rng = np.random.default_rng(seed)
        centre = tuple(rng.uniform(0.0, 2.0 * math.pi, size=2))
    else:
        centre = spec.centre
    antipode = (centre[0] + math.pi, centre[1] + math.pi)
    x1, x2 = grid.coordinates

    def bump(c):
        r2 = _periodic_offset(x1, c[0]) ** 2 + _periodic_offset(x2, c[1]) ** 2
        return np.exp(-r2 / (2.0 * spec.width ** 2))

    values = spec.amplitude * (bump(centre) - bump(antipode))
    coeffs = dealias(forward_transform(PhysicalField(grid, values))).coeffs
    coeffs = _symmetrized(coeffs)
    coeffs[0, 0] = 0.0
    return SpectralField(grid, coeffs)


def _shear(grid: Grid2D, spec: InitialSpec) -> SpectralField:
    k = spec.wavenumber
    if k >= grid.n / 3.0:
        raise ConfigurationError(f"shear wavenumber {k} is not below n/3 = {grid.n / 3.0:.4g}")
    coeffs = np.zeros((grid.n, grid.n), dtype=complex)
    coeffs[k, 0] = 0.5 * spec.amplitude
    coeffs[-k, 0] = 0.5 * spec.amplitude
    return SpectralField(grid, coeffs)


def generate_initial(kind: str, params: InitialSpec, seed: int, grid: Grid2D) -> SpectralField:
    """
    Build θ₀ on the grid

    Args:
        kind: random-spectrum, gaussian-bumps or shear
        params: Initial block (kind-specific parameters)
        seed: Generator seed
        grid: Target grid

    Returns:
        SpectralField; identical (kind, params, seed, n) give bit-identical spectra

    Raises:
        ConfigurationError: on an unknown kind or a band limit at or above n/3
    """
    if kind == 'random-spectrum':
        theta = random_field(grid, seed, gamma=params.gamma, k_min=params.k_min,
                             k_max=params.k_max, amplitude=params.amplitude)
    elif kind == 'gaussian-bumps':
        theta = _gaussian_bumps(grid, params, seed)
    elif kind == 'shear':
        theta = _shear(grid, params)
    else:
        raise ConfigurationError(f"unknown initial kind {kind!r}, expected one of {', '.join(INITIAL_KINDS)}")
    logger.info(f"Initial data: {kind} on {grid.n}x{grid.n} (seed {seed})")
    return theta
