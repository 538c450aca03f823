"""
Littlewood-Paley decomposition
Dyadic family (φ̂, ψ̂) and the block operators Δⱼ, Sⱼ as exact Fourier multipliers
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.fft

from .config import PARTITION_TOLERANCE, worker_count
from .exceptions import InconsistencyError, ParameterError
from .grid import Grid2D, SpectralField

logger = logging.getLogger(__name__)

# χ = 1 on [0, INNER], χ = 0 on [OUTER, ∞)
INNER_RADIUS = 3.0 / 4.0
OUTER_RADIUS = 4.0 / 3.0

# Radii covered by the construction-time partition check (grids up to 1024²)
_CHECK_RADII = np.sqrt(np.arange(0, 2 * 512 ** 2 + 1, dtype=float))


def _smooth_step(t: np.ndarray) -> np.ndarray:
    """S(t) = g(t) / (g(t) + g(1 − t)), g(t) = e^{−1/t} for t > 0 else 0"""
    t = np.asarray(t, dtype=float)
    with np.errstate(divide='ignore', over='ignore'):
        g_left = np.where(t > 0.0, np.exp(-1.0 / np.where(t > 0.0, t, 1.0)), 0.0)
        g_right = np.where(t < 1.0, np.exp(-1.0 / np.where(t < 1.0, 1.0 - t, 1.0)), 0.0)
    return g_left / (g_left + g_right)


@dataclass(frozen=True)
class DyadicFamily:
    """
    Radial profiles of the dyadic partition of unity

    Attributes:
        tolerance: partition-of-unity tolerance requested at construction
        partition_residual: measured max |φ̂ + Σⱼ ψ̂(2^{−j}·) − 1| over the checked radii
    """

    tolerance: float
    partition_residual: float = 0.0

    def chi(self, r) -> np.ndarray:
        t = (np.asarray(r, dtype=float) - INNER_RADIUS) / (OUTER_RADIUS - INNER_RADIUS)
        return 1.0 - _smooth_step(t)

    def phi_hat(self, r) -> np.ndarray:
        return self.chi(r)

    def psi_hat(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return self.chi(r / 2.0) - self.chi(r)

    def block_profile(self, j: int, r) -> np.ndarray:
        """Radial multiplier of Δⱼ evaluated at r"""
        r = np.asarray(r, dtype=float)
        if j <= -2:
            return np.zeros_like(r)
        if j == -1:
            return self.phi_hat(r)
        return self.psi_hat(r * 2.0 ** (-j))

    def multiplier(self, grid: Grid2D, j: int) -> np.ndarray:
        """Δⱼ multiplier tabulated on the grid (read-only)"""
        return _block_table(self, grid, j)

    def low_pass(self, grid: Grid2D, j: int) -> np.ndarray:
        """Sⱼ multiplier Σ_{k=−1..j−1} (read-only)"""
        return _low_pass_table(self, grid, j)

    def j_max(self, grid: Grid2D) -> int:
        return max_block(grid, self)

    def young_constant(self, grid: Grid2D) -> float:
        """max over blocks of the discrete L¹ norm of the Δⱼ kernel"""
        return max(
            float(np.sum(np.abs(block_kernel(grid, j, self)))) / grid.n ** 2
            for j in range(-1, self.j_max(grid) + 1)
        )


@lru_cache(maxsize=256)
def _block_table(fam: DyadicFamily, grid: Grid2D, j: int) -> np.ndarray:
    table = fam.block_profile(j, grid.radius)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=256)
def _low_pass_table(fam: DyadicFamily, grid: Grid2D, j: int) -> np.ndarray:
    table = np.zeros((grid.n, grid.n))
    for k in range(-1, j):
        table = table + _block_table(fam, grid, k)
    table.setflags(write=False)
    return table


def build_family(tolerance: float = PARTITION_TOLERANCE) -> DyadicFamily:
    """
    Construct the dyadic family from the smooth step e^{−1/t}

    Args:
        tolerance: Maximum admissible partition-of-unity residual

    Returns:
        DyadicFamily whose partition residual was measured on all radii √k, k ≤ 2·512²
    """
    if not tolerance > 0:
        raise ParameterError(f"tolerance must be positive, got {tolerance}")
    fam = DyadicFamily(tolerance=tolerance)
    total = fam.phi_hat(_CHECK_RADII)
    top = int(math.ceil(math.log2(_CHECK_RADII[-1] / INNER_RADIUS)))
    for j in range(0, top + 1):
        total = total + fam.psi_hat(_CHECK_RADII * 2.0 ** (-j))
    residual = float(np.max(np.abs(total - 1.0)))
    if residual > tolerance:
        raise InconsistencyError(
            f"partition of unity residual {residual:.3e} exceeds tolerance {tolerance:.3e}"
        )
    logger.debug(f"Dyadic family built, partition residual {residual:.3e}")
    return DyadicFamily(tolerance=tolerance, partition_residual=residual)


@lru_cache(maxsize=1)
def default_family() -> DyadicFamily:
    return build_family(PARTITION_TOLERANCE)


def max_block(grid: Grid2D, fam: DyadicFamily) -> int:
    """Smallest J with 2^J·(3/4) above the largest resolved radius"""
    J = -1
    while 2.0 ** J * INNER_RADIUS <= grid.max_radius:
        J += 1
    return J


def delta_j(f: SpectralField, j: int, fam: DyadicFamily) -> SpectralField:
    """Δⱼf: zero for j ≤ −2, φ̂(|ξ|) for j = −1, ψ̂(2^{−j}|ξ|) for j ≥ 0"""
    if j <= -2:
        return SpectralField.zeros(f.grid)
    return SpectralField(f.grid, f.coeffs * fam.multiplier(f.grid, j))


def s_j(f: SpectralField, j: int, fam: DyadicFamily) -> SpectralField:
    """Sⱼf = Σ_{k ≤ j−1} Δₖf"""
    if j <= -1:
        return SpectralField.zeros(f.grid)
    return SpectralField(f.grid, f.coeffs * fam.low_pass(f.grid, j))


def block_kernel(grid: Grid2D, j: int, fam: DyadicFamily) -> np.ndarray:
    """K(x) = Σ_ξ m_j(ξ) e^{iξ·x}; Δⱼf(x) = n^{−2} Σ_y K(x − y) f(y) on the grid"""
    n = grid.n
    return scipy.fft.ifft2(fam.multiplier(grid, j), workers=worker_count()).real * (n * n)
