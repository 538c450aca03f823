"""
Constitutive law and advection term of the active scalar equation
u = −∇⊥(−Δ)^{−1+β/2}θ, ∂ₜθ = −u·∇θ
"""
import logging
from functools import lru_cache
from typing import Tuple

import numpy as np

from spectral.config import GAUGE_TOLERANCE
from spectral.exceptions import GaugeError
from spectral.grid import (
    PhysicalField,
    SpectralField,
    Symbol,
    apply_symbol,
    dealias,
    derivative_symbol,
    forward_transform,
    inverse_transform,
    perp_gradient_symbol,
)

logger = logging.getLogger(__name__)

VelocitySpectrum = Tuple[SpectralField, SpectralField]


@lru_cache(maxsize=32)
def biot_savart_symbol(beta: float) -> Symbol:
    """û = −iξ⊥|ξ|^{β−2}θ̂ with ξ⊥ = (−ξ₂, ξ₁), zero at ξ = 0"""
    exponent = beta - 2.0
    return Symbol(
        lambda k1, k2: (
            1j * k2 * np.hypot(k1, k2) ** exponent,
            -1j * k1 * np.hypot(k1, k2) ** exponent,
        ),
        at_zero=(0.0, 0.0),
        odd=True,
        name=f'biot-savart(beta={beta:g})',
    )


@lru_cache(maxsize=32)
def stream_symbol(beta: float) -> Symbol:
    """ψ̂ = −|ξ|^{β−2}θ̂ (Δψ = Λ^β θ), zero at ξ = 0"""
    exponent = beta - 2.0
    return Symbol(lambda k1, k2: -np.hypot(k1, k2) ** exponent, at_zero=0.0, name=f'stream(beta={beta:g})')


def _check_gauge(theta: SpectralField):
    scale = max(1.0, float(np.max(np.abs(theta.coeffs))))
    if abs(theta.coeffs[0, 0]) > GAUGE_TOLERANCE * scale:
        raise GaugeError(f"theta must be mean-zero, coeffs(0,0) = {theta.coeffs[0, 0]:.3e}")


def velocity(theta: SpectralField, beta: float) -> VelocitySpectrum:
    """
    Velocity spectrum (û₁, û₂) from the scalar

    Args:
        theta: Mean-zero scalar spectrum
        beta: Velocity-law order

    Returns:
        Tuple of the two velocity components as SpectralFields
    """
    _check_gauge(theta)
    return apply_symbol(theta, biot_savart_symbol(beta))


def stream_function(theta: SpectralField, beta: float) -> SpectralField:
    _check_gauge(theta)
    return apply_symbol(theta, stream_symbol(beta))


def velocity_from_stream(theta: SpectralField, beta: float) -> VelocitySpectrum:
    """u = ∇⊥ψ, the second construction of the velocity"""
    return apply_symbol(stream_function(theta, beta), perp_gradient_symbol())


def velocity_field(theta: SpectralField, beta: float) -> Tuple[PhysicalField, PhysicalField]:
    u1, u2 = velocity(theta, beta)
    return inverse_transform(u1), inverse_transform(u2)


def max_speed(theta: SpectralField, beta: float) -> float:
    """Grid max of |u|"""
    u1, u2 = velocity_field(theta, beta)
    return float(np.max(np.hypot(u1.values, u2.values)))


def gradient_field(theta: SpectralField) -> Tuple[PhysicalField, PhysicalField]:
    return (
        inverse_transform(apply_symbol(theta, derivative_symbol(0))),
        inverse_transform(apply_symbol(theta, derivative_symbol(1))),
    )


def transport_product(
    velocity_components: Tuple[PhysicalField, PhysicalField],
    scalar: SpectralField,
) -> SpectralField:
    """Spectrum of the pointwise product v·∇s, before truncation"""
    g1, g2 = gradient_field(scalar)
    v1, v2 = velocity_components
    return forward_transform(PhysicalField(scalar.grid, v1.values * g1.values + v2.values * g2.values))


def advection_terms(theta: SpectralField, beta: float) -> Tuple[SpectralField, float]:
    """
    Dealiased right-hand side −u·∇θ and the tail fraction of the product

    Returns:
        (rhs, tail_fraction) with tail_fraction = ‖(1 − D)P̂‖₂ / ‖P̂‖₂ for P = u·∇θ
    """
    theta_d = dealias(theta)
    product = transport_product(velocity_field(theta_d, beta), theta_d)
    energy = np.abs(product.coeffs) ** 2
    total = float(np.sum(energy))
    tail = float(np.sum(energy[~theta.grid.dealias_mask]))
    tail_fraction = float(np.sqrt(tail / total)) if total > 0.0 else 0.0
    rhs = -dealias(product)
    rhs.coeffs[0, 0] = 0.0
    return rhs, tail_fraction


def advect_rhs(theta: SpectralField, beta: float) -> SpectralField:
    """rhs = −dealias(u·∇θ) with zero mean"""
    return advection_terms(theta, beta)[0]
