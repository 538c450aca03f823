"""
Periodic grid, Fourier transforms and Fourier multipliers
Realizes the torus [0, 2π)² with f(x) = Σ_ξ coeffs(ξ) e^{iξ·x}
"""
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Tuple, Union

import numpy as np
import scipy.fft

from .config import DOMAIN_LENGTH, MIN_GRID_SIZE, SYMMETRY_TOLERANCE, worker_count
from .exceptions import ConfigurationError, DataError, ParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Grid2D:
    """Uniform n × n grid on the torus [0, 2π)², axis 0 is x₁ and axis 1 is x₂"""

    n: int

    def __post_init__(self):
        n = self.n
        if not isinstance(n, (int, np.integer)) or n < MIN_GRID_SIZE or n & (n - 1):
            raise ConfigurationError(
                f"grid size n must be a power of two >= {MIN_GRID_SIZE}, got {n!r}"
            )

    @property
    def length(self) -> float:
        return DOMAIN_LENGTH

    @property
    def spacing(self) -> float:
        return DOMAIN_LENGTH / self.n

    @cached_property
    def coordinates(self) -> Tuple[np.ndarray, np.ndarray]:
        """Node coordinates (x₁, x₂), each of shape (n, n)"""
        x1d = np.arange(self.n) * self.spacing
        return tuple(np.meshgrid(x1d, x1d, indexing='ij'))

    @cached_property
    def wavenumbers(self) -> Tuple[np.ndarray, np.ndarray]:
        """Integer wave vector components (ξ₁, ξ₂) in FFT order, values in [−n/2, n/2)"""
        k1d = np.fft.fftfreq(self.n, d=1.0 / self.n)
        return tuple(np.meshgrid(k1d, k1d, indexing='ij'))

    @cached_property
    def radius(self) -> np.ndarray:
        """|ξ| on the grid"""
        k1, k2 = self.wavenumbers
        return np.hypot(k1, k2)

    @cached_property
    def max_radius(self) -> float:
        """Largest resolved |ξ| (the corner mode (−n/2, −n/2))"""
        return float(self.radius.max())

    @cached_property
    def nyquist_mask(self) -> np.ndarray:
        """True where either component sits on the unpaired mode −n/2"""
        k1, k2 = self.wavenumbers
        half = self.n // 2
        return (k1 == -half) | (k2 == -half)

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        """True for modes kept by the 2/3 rule (|ξ₁|, |ξ₂| ≤ n/3)"""
        k1, k2 = self.wavenumbers
        cutoff = self.n / 3.0
        return (np.abs(k1) <= cutoff) & (np.abs(k2) <= cutoff)


@dataclass(frozen=True, eq=False)
class PhysicalField:
    """Real samples on the grid nodes, values[a, b] = f(a·h, b·h)"""

    grid: Grid2D
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.n, self.grid.n):
            raise DataError(
                f"field shape {values.shape} does not match grid {self.grid.n}x{self.grid.n}"
            )
        if not np.all(np.isfinite(values)):
            raise DataError("field contains non-finite samples")
        object.__setattr__(self, 'values', values)

    def __mul__(self, other: 'PhysicalField') -> 'PhysicalField':
        if isinstance(other, PhysicalField):
            return PhysicalField(self.grid, self.values * other.values)
        return PhysicalField(self.grid, self.values * other)

    __rmul__ = __mul__

    def __add__(self, other: 'PhysicalField') -> 'PhysicalField':
        return PhysicalField(self.grid, self.values + other.values)

    def __sub__(self, other: 'PhysicalField') -> 'PhysicalField':
        return PhysicalField(self.grid, self.values - other.values)


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Fourier coefficients in FFT order, coeffs[ξ₁, ξ₂] of e^{iξ·x}"""

    grid: Grid2D
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.shape != (self.grid.n, self.grid.n):
            raise DataError(
                f"spectrum shape {coeffs.shape} does not match grid {self.grid.n}x{self.grid.n}"
            )
        object.__setattr__(self, 'coeffs', coeffs)

    @classmethod
    def zeros(cls, grid: Grid2D) -> 'SpectralField':
        return cls(grid, np.zeros((grid.n, grid.n), dtype=complex))

    def mean(self) -> complex:
        return complex(self.coeffs[0, 0])

    def __add__(self, other: 'SpectralField') -> 'SpectralField':
        return SpectralField(self.grid, self.coeffs + other.coeffs)

    def __sub__(self, other: 'SpectralField') -> 'SpectralField':
        return SpectralField(self.grid, self.coeffs - other.coeffs)

    def __mul__(self, scalar: float) -> 'SpectralField':
        return SpectralField(self.grid, self.coeffs * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> 'SpectralField':
        return SpectralField(self.grid, -self.coeffs)


SymbolValue = Union[np.ndarray, Tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class Symbol:
    """
    Fourier multiplier m(ξ)

    Attributes:
        evaluate: maps wave vector components (ξ₁, ξ₂) to m(ξ), or to a pair for vector symbols
        at_zero: declared value at ξ = 0 (a pair for vector symbols)
        odd: zero the multiplier on the Nyquist lines so real input stays real
        name: label used in log messages
    """

    evaluate: Callable[[np.ndarray, np.ndarray], SymbolValue]
    at_zero: Union[complex, Tuple[complex, complex]] = 0.0
    odd: bool = False
    name: str = 'symbol'

    def on_grid(self, grid: Grid2D) -> np.ndarray:
        """Tabulate the symbol; shape (n, n) or (2, n, n), read-only"""
        return _tabulate(self, grid)


@lru_cache(maxsize=128)
def _tabulate(m: Symbol, grid: Grid2D) -> np.ndarray:
    k1, k2 = grid.wavenumbers
    with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
        raw = m.evaluate(k1, k2)
    table = np.array(raw, dtype=complex)
    if table.ndim == 3:
        table[:, 0, 0] = np.asarray(m.at_zero, dtype=complex)
    else:
        table[0, 0] = m.at_zero
    if m.odd:
        table[..., grid.nyquist_mask] = 0.0
    if not np.all(np.isfinite(table)):
        raise ParameterError(f"symbol {m.name} is not finite on the {grid.n}x{grid.n} grid")
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def identity_symbol() -> Symbol:
    return Symbol(lambda k1, k2: np.ones_like(k1), at_zero=1.0, name='identity')


@lru_cache(maxsize=None)
def derivative_symbol(axis: int) -> Symbol:
    """iξ_axis (axis 0 → ∂₁, axis 1 → ∂₂)"""
    if axis not in (0, 1):
        raise ParameterError(f"axis must be 0 or 1, got {axis}")
    return Symbol(
        lambda k1, k2: 1j * (k1 if axis == 0 else k2),
        at_zero=0.0,
        odd=True,
        name=f'd/dx{axis + 1}',
    )


@lru_cache(maxsize=64)
def fractional_laplacian_symbol(order: float, at_zero: float = 0.0) -> Symbol:
    """|ξ|^order, i.e. Λ^order with Λ = (−Δ)^{1/2}"""
    return Symbol(
        lambda k1, k2: np.hypot(k1, k2) ** order,
        at_zero=at_zero,
        name=f'|xi|^{order:g}',
    )


@lru_cache(maxsize=None)
def perp_gradient_symbol() -> Symbol:
    """∇⊥ = (−∂₂, ∂₁) as the vector symbol (−iξ₂, iξ₁)"""
    return Symbol(
        lambda k1, k2: (-1j * k2, 1j * k1),
        at_zero=(0.0, 0.0),
        odd=True,
        name='perp-gradient',
    )


def _fft_workers() -> int:
    return worker_count()


def forward_transform(f: PhysicalField) -> SpectralField:
    """
    Physical samples to Fourier coefficients (analysis carries the 1/n² factor)

    Args:
        f: Real field on the grid

    Returns:
        SpectralField with f(x) = Σ coeffs(ξ) e^{iξ·x}
    """
    n = f.grid.n
    coeffs = scipy.fft.fft2(f.values, workers=_fft_workers()) / (n * n)
    return SpectralField(f.grid, coeffs)


def conjugate_asymmetry(F: SpectralField) -> float:
    """max |coeffs(−ξ) − conj(coeffs(ξ))|"""
    c = F.coeffs
    reflected = np.roll(c[::-1, ::-1], 1, axis=(0, 1))
    return float(np.max(np.abs(reflected - np.conj(c)))) if c.size else 0.0


def inverse_transform(F: SpectralField) -> PhysicalField:
    """
    Fourier coefficients to physical samples

    Raises:
        DataError: if the spectrum is not conjugate-symmetric within tolerance
    """
    c = F.coeffs
    scale = float(np.max(np.abs(c))) if c.size else 0.0
    asymmetry = conjugate_asymmetry(F)
    if asymmetry > SYMMETRY_TOLERANCE * max(scale, 1e-300):
        raise DataError(
            f"spectrum is not conjugate-symmetric (asymmetry {asymmetry:.3e}, scale {scale:.3e})"
        )
    n = F.grid.n
    values = scipy.fft.ifft2(c, workers=_fft_workers()).real * (n * n)
    return PhysicalField(F.grid, values)


def apply_symbol(F: SpectralField, m: Symbol) -> Union[SpectralField, Tuple[SpectralField, SpectralField]]:
    """Multiply coefficients pointwise by m(ξ); vector symbols return a pair"""
    table = m.on_grid(F.grid)
    if table.ndim == 3:
        return (
            SpectralField(F.grid, F.coeffs * table[0]),
            SpectralField(F.grid, F.coeffs * table[1]),
        )
    return SpectralField(F.grid, F.coeffs * table)


def dealias(F: SpectralField) -> SpectralField:
    """2/3 rule: zero every mode with |ξ₁| > n/3 or |ξ₂| > n/3"""
    return SpectralField(F.grid, np.where(F.grid.dealias_mask, F.coeffs, 0.0))


def l2_norm_spectral(F: SpectralField) -> float:
    """‖f‖_{L²} via Plancherel: 2π·(Σ|coeffs|²)^{1/2}"""
    return float(DOMAIN_LENGTH * np.sqrt(np.sum(np.abs(F.coeffs) ** 2)))
