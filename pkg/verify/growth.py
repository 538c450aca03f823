"""
Quadratic growth fit N′ ≤ CN² and the Gronwall envelope N(0)·exp(C∫N)
"""
import logging
from typing import NamedTuple, Sequence, Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid

from spectral.exceptions import ParameterError

logger = logging.getLogger(__name__)

MIN_SERIES_POINTS = 3


class GrowthFit(NamedTuple):
    c_fit: float
    residual: float


def _split(series: Sequence[Tuple[float, float]]) -> Tuple[np.ndarray, np.ndarray]:
    data = np.asarray(series, dtype=float)
    if data.ndim != 2 or data.shape[1] != 2:
        raise ParameterError(f"series must be a list of (t, N) pairs, got shape {data.shape}")
    if len(data) < MIN_SERIES_POINTS:
        raise ParameterError(f"series needs at least {MIN_SERIES_POINTS} points, got {len(data)}")
    t, norm = data[:, 0], data[:, 1]
    if np.any(np.diff(t) <= 0):
        raise ParameterError("series times must be strictly increasing")
    return t, norm


def growth_fit(series: Sequence[Tuple[float, float]]) -> GrowthFit:
    """
    Fit the constant of N′ ≤ CN² from a sampled Besov-norm series

    dN/dt uses centered differences inside and second-order one-sided stencils
    at the ends. C_fit is the max of (dN/dt)/N² over interior times, clamped at
    zero; residual is the RMS gap between C_fit and the interior quotients.

    Args:
        series: (t, N) pairs, strictly increasing in t, at least 3 of them

    Returns:
        GrowthFit(c_fit, residual)
    """
    t, norm = _split(series)
    rate = np.gradient(norm, t, edge_order=2)
    interior = slice(1, -1)
    with np.errstate(divide='ignore', invalid='ignore'):
        quotient = np.where(norm > 0, rate / norm ** 2, 0.0)[interior]
    c_fit = max(float(np.max(quotient)), 0.0)
    residual = float(np.sqrt(np.mean((c_fit - quotient) ** 2)))
    logger.debug(f"Growth fit over {len(t)} points: C = {c_fit:.6g}, residual {residual:.3e}")
    return GrowthFit(c_fit, residual)


def gronwall_envelope(series: Sequence[Tuple[float, float]], c_fit: float) -> np.ndarray:
    """N(0)·exp(C_fit·∫₀ᵗN) at every sample time (trapezoidal integral)"""
    t, norm = _split(series)
    return norm[0] * np.exp(c_fit * cumulative_trapezoid(norm, t, initial=0.0))


def envelope_dominates(
    series: Sequence[Tuple[float, float]],
    c_fit: float,
    tolerance: float = 0.05,
) -> bool:
    """True when N(t) ≤ (1 + tolerance)·envelope(t) at every sample"""
    _, norm = _split(series)
    envelope = gronwall_envelope(series, c_fit)
    return bool(np.all(norm <= (1.0 + tolerance) * envelope))
